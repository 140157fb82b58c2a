#pragma once

#include <oblig/explicit.hh>
#include <oblig/parse.hh>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace oblig::test {

// The running example specification and its derived states.
inline constexpr const char* phi1_text = "G(i1 | X i2) <-> G o";
inline constexpr const char* phi2_text = "G o <-> (i2 & G(i1 | X i2))";
inline constexpr const char* phi3_text = "!(i2 & G(i1 | X i2))";
inline constexpr const char* phi4_text = "!G(i1 | X i2)";
inline constexpr const char* phi5_text = "!G o";

inline std::shared_ptr<formula_store> fresh_store() { return std::make_shared<formula_store>(); }

/// Cube from a pattern with one character per variable: '1', '0' or '-'.
inline cube cube_of(const std::string& pattern) {
  cube c;
  for (unsigned v = 0; v < pattern.size(); ++v)
    if (pattern[v] != '-') c = c.with(v, pattern[v] == '1');
  return c;
}

/// The example automaton drawn by hand, over (i1, i2, o).  States:
/// 0 = phi1, 1 = phi2, 2 = phi3, 3 = phi4, 4 = phi5, 5 = true.
inline explicit_automaton reference_automaton() {
  explicit_automaton e;
  e.aps = {"i1", "i2", "o"};
  e.num_states = 6;
  e.initial = 0;
  e.accepting = {true, true, false, false, false, true};
  auto edge = [&](std::uint32_t s, std::uint32_t d, const char* pat) { e.edges.push_back({s, d, {cube_of(pat)}}); };
  edge(0, 0, "1-1");
  edge(0, 1, "0-1");
  edge(0, 3, "1-0");
  edge(0, 2, "0-0");
  edge(1, 1, "011");
  edge(1, 0, "111");
  edge(1, 2, "010");
  edge(1, 3, "110");
  edge(1, 5, "-00");
  edge(1, 4, "-01");
  edge(3, 3, "1--");
  edge(3, 2, "0--");
  edge(2, 2, "01-");
  edge(2, 3, "11-");
  edge(2, 5, "-0-");
  edge(4, 4, "--1");
  edge(4, 5, "--0");
  edge(5, 5, "---");
  return e;
}

inline std::vector<std::string> reference_state_texts() {
  return {phi1_text, phi2_text, phi3_text, phi4_text, phi5_text, "1"};
}

/// Letters (as a bit set over 2^|aps| letters) carried by an edge label.
inline std::uint64_t letter_set(const std::vector<cube>& label, unsigned nvars) {
  std::uint64_t r = 0;
  for (letter l = 0; l < (letter{1} << nvars); ++l)
    if (label_contains(label, l)) r |= std::uint64_t{1} << l;
  return r;
}

}  // namespace oblig::test
