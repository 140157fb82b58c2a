#pragma once

// Explicit edge-list automata, obtained by enumerating the paths of the
// transition diagrams.

#include <oblig/translate.hh>

#include <cmath>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace oblig {

struct explicit_edge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  /// Disjunction of cubes over AP indices.
  std::vector<cube> label;
};

struct explicit_automaton {
  std::optional<std::string> name;
  std::vector<std::string> aps;
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<bool> accepting;
  std::vector<explicit_edge> edges;

  std::vector<const explicit_edge*> out(std::uint32_t s) const {
    std::vector<const explicit_edge*> res;
    for (const auto& e : edges)
      if (e.src == s) res.push_back(&e);
    return res;
  }
};

/// One edge per (state, successor), labeled with the successor's paths,
/// edges ordered by first path occurrence.
inline explicit_automaton to_explicit(const mtdwa& a) {
  if (a.props.size() > 64) throw std::length_error("explicit labels limited to 64 propositions");
  explicit_automaton e;
  e.aps = a.props.names();
  e.num_states = a.size();
  e.initial = a.initial;
  e.accepting = a.accepting;
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    std::unordered_map<std::uint32_t, std::size_t> slot;
    std::size_t first = e.edges.size();
    a.dd->for_each_path(a.delta[s], [&](const cube& c, mtbdd_manager::value_type v) {
      auto dst = static_cast<std::uint32_t>(v);
      auto [it, fresh] = slot.try_emplace(dst, e.edges.size() - first);
      if (fresh) e.edges.push_back({s, dst, {}});
      e.edges[first + it->second].label.push_back(c);
    });
  }
  return e;
}

inline bool label_contains(const std::vector<cube>& label, letter l) {
  for (const cube& c : label)
    if (c.contains(l)) return true;
  return false;
}

/// Out-going labels of every state pairwise disjoint.
inline bool is_deterministic(const explicit_automaton& e) {
  for (std::uint32_t s = 0; s < e.num_states; ++s) {
    std::vector<cube> all;
    for (const explicit_edge* ed : e.out(s))
      for (const cube& c : ed->label) all.push_back(c);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (all[i].intersects(all[j])) return false;
  }
  return true;
}

/// Every letter has a successor from every state.  Counts minterms when
/// labels are disjoint; otherwise enumerates letters (at most 20 APs).
inline bool is_complete(const explicit_automaton& e) {
  const unsigned k = static_cast<unsigned>(e.aps.size());
  if (is_deterministic(e)) {
    if (k >= 64) throw std::length_error("too many propositions");
    for (std::uint32_t s = 0; s < e.num_states; ++s) {
      // Sum of 2^(free variables) over disjoint cubes; compare to 2^k
      // using long double to sidestep overflow for k close to 64.
      long double total = 0;
      for (const explicit_edge* ed : e.out(s))
        for (const cube& c : ed->label) total += std::ldexp(1.0L, static_cast<int>(k - c.literal_count()));
      if (total != std::ldexp(1.0L, static_cast<int>(k))) return false;
    }
    return true;
  }
  if (k > 20) throw std::length_error("completeness check limited to 20 propositions");
  for (std::uint32_t s = 0; s < e.num_states; ++s) {
    auto outs = e.out(s);
    for (letter l = 0; l < (letter{1} << k); ++l) {
      bool found = false;
      for (const explicit_edge* ed : outs) found = found || label_contains(ed->label, l);
      if (!found) return false;
    }
  }
  return true;
}

/// Successor index for fast stepping through a deterministic automaton.
class explicit_stepper {
 public:
  explicit explicit_stepper(const explicit_automaton& e) : by_src_(e.num_states) {
    for (const auto& ed : e.edges) by_src_.at(ed.src).push_back(&ed);
  }

  std::uint32_t step(std::uint32_t s, letter l) const {
    for (const explicit_edge* ed : by_src_.at(s))
      if (label_contains(ed->label, l)) return ed->dst;
    throw std::logic_error("no successor: automaton is incomplete");
  }

 private:
  std::vector<std::vector<const explicit_edge*>> by_src_;
};

inline bool accepts_lasso(const explicit_automaton& e, const lasso_word& w) {
  w.validate();
  auto pos = align_props(var_order(e.aps), w);
  explicit_stepper st(e);
  return run_lasso(
      e.initial, w, [&](std::uint32_t q, letter l) { return st.step(q, remap_letter(l, pos)); },
      [&](std::uint32_t q) { return static_cast<bool>(e.accepting[q]); });
}

}  // namespace oblig
