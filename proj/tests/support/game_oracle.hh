#pragma once

// Reference realizability check: translate and minimize the whole
// automaton, expand it into a turn-based game over (state, phase) and
// solve the Büchi condition with the classical nested fixpoint
//   W = νZ. μY. CPre(Y) ∪ (Acc ∩ CPre(Z))
// for the output player.

#include <oblig/game.hh>
#include <oblig/minimize.hh>

#include "explicit_min.hh"

#include <vector>

namespace oblig::test {

struct explicit_game {
  // Positions 0..n-1; owner true = output player.
  std::vector<bool> output_owned;
  std::vector<bool> accepting;
  std::vector<std::vector<std::uint32_t>> succ;
  std::uint32_t initial = 0;
};

/// Positions: for every state q, one position where the first player
/// picks its letter, and one per letter of the first player where the
/// second player answers.
inline explicit_game build_game(const std::shared_ptr<formula_store>& fs, const synthesis_spec& spec) {
  std::vector<std::string> props = spec.inputs;
  props.insert(props.end(), spec.outputs.begin(), spec.outputs.end());
  translate_options opt;
  opt.props = props;
  mtdwa a = moore_minimize(translate(fs, spec.f, opt));
  explicit_automaton e = to_explicit(a);
  auto t = letter_table(e);

  const unsigned ni = static_cast<unsigned>(spec.inputs.size());
  const unsigned no = static_cast<unsigned>(spec.outputs.size());
  bool mealy = spec.sem == semantics::mealy;
  const unsigned first_bits = mealy ? ni : no;
  const unsigned second_bits = mealy ? no : ni;
  const std::uint32_t fl = 1u << first_bits, sl = 1u << second_bits;
  const std::uint32_t stride = 1 + fl;

  explicit_game g;
  const std::uint32_t n = e.num_states * stride;
  g.output_owned.resize(n);
  g.accepting.resize(n);
  g.succ.resize(n);
  for (std::uint32_t q = 0; q < e.num_states; ++q) {
    std::uint32_t base = q * stride;
    g.output_owned[base] = !mealy;
    g.accepting[base] = e.accepting[q];
    for (std::uint32_t x = 0; x < fl; ++x) {
      std::uint32_t mid = base + 1 + x;
      g.succ[base].push_back(mid);
      g.output_owned[mid] = mealy;
      g.accepting[mid] = e.accepting[q];
      for (std::uint32_t y = 0; y < sl; ++y) {
        letter in = mealy ? x : y;
        letter out = mealy ? y : x;
        letter l = in | (out << ni);
        g.succ[mid].push_back(t[q][l] * stride);
      }
    }
  }
  g.initial = e.initial * stride;
  return g;
}

/// Positions from which the output player wins the Büchi condition.
inline std::vector<bool> solve_buchi(const explicit_game& g) {
  const auto n = static_cast<std::uint32_t>(g.succ.size());
  auto cpre = [&](const std::vector<bool>& target, std::uint32_t v) {
    if (g.output_owned[v]) {
      for (auto w : g.succ[v])
        if (target[w]) return true;
      return false;
    }
    for (auto w : g.succ[v])
      if (!target[w]) return false;
    return true;
  };
  std::vector<bool> z(n, true);
  for (;;) {
    std::vector<bool> y(n, false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (y[v]) continue;
        if (cpre(y, v) || (g.accepting[v] && cpre(z, v))) {
          y[v] = true;
          changed = true;
        }
      }
    }
    if (y == z) return z;
    z = y;
  }
}

inline bool solve_explicit_oracle(const std::shared_ptr<formula_store>& fs, const synthesis_spec& spec) {
  explicit_game g = build_game(fs, spec);
  return solve_buchi(g)[g.initial];
}

}  // namespace oblig::test
