#pragma once

// Language equivalence of deterministic automata and random generation of
// obligations and lasso words.

#include <oblig/classify.hh>
#include <oblig/detail/scc.hh>
#include <oblig/explicit.hh>

#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblig {

class proposition_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Re-expresses a cube over `from` APs with the indices of `to`.
inline cube remap_cube(const cube& c, const std::vector<unsigned>& from_to) {
  cube r;
  for (unsigned v = 0; v < from_to.size(); ++v)
    if ((c.care >> v) & 1) r = r.with(from_to[v], (c.value >> v) & 1);
  return r;
}

/// True iff some word is accepted by `a` and rejected by `b`, both
/// deterministic Büchi automata over the same APs (b's AP order given by
/// the mapping).  Looks for a cycle that visits an accepting state of `a`
/// while avoiding the accepting states of `b`.
inline bool difference_nonempty(const explicit_automaton& a, const explicit_automaton& b,
                                const std::vector<unsigned>& b_to_a) {
  std::vector<std::vector<std::pair<std::vector<cube>, std::uint32_t>>> bout(b.num_states);
  for (const auto& e : b.edges) {
    std::vector<cube> lab;
    for (const cube& c : e.label) lab.push_back(remap_cube(c, b_to_a));
    bout[e.src].push_back({std::move(lab), e.dst});
  }
  std::vector<std::vector<const explicit_edge*>> aout(a.num_states);
  for (const auto& e : a.edges) aout[e.src].push_back(&e);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> id;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  std::vector<std::vector<std::uint32_t>> succ;
  auto get = [&](std::uint32_t x, std::uint32_t y) {
    auto [it, fresh] = id.try_emplace({x, y}, static_cast<std::uint32_t>(states.size()));
    if (fresh) {
      states.push_back({x, y});
      succ.emplace_back();
    }
    return it->second;
  };
  get(a.initial, b.initial);
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    auto [x, y] = states[i];
    std::set<std::uint32_t> out;
    for (const explicit_edge* ea : aout[x])
      for (const auto& [lb, dst] : bout[y]) {
        bool meet = false;
        for (const cube& ca : ea->label)
          for (const cube& cb : lb) meet = meet || ca.intersects(cb);
        if (meet) out.insert(get(ea->dst, dst));
      }
    succ[i].assign(out.begin(), out.end());
  }
  // Keep only product states where b is rejecting.
  const auto n = static_cast<std::uint32_t>(states.size());
  std::vector<std::uint32_t> roots;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!b.accepting[states[i].second]) roots.push_back(i);
  auto filtered = [&](std::uint32_t v) {
    std::vector<std::uint32_t> r;
    for (std::uint32_t w : succ[v])
      if (!b.accepting[states[w].second]) r.push_back(w);
    return r;
  };
  auto scc = tarjan(n, roots, filtered);
  std::vector<bool> nontrivial(scc.count, false), has_acc(scc.count, false);
  for (std::uint32_t v : roots) {
    std::uint32_t c = scc.component[v];
    for (std::uint32_t w : filtered(v))
      if (scc.component[w] == c) nontrivial[c] = true;
    if (a.accepting[states[v].first]) has_acc[c] = true;
  }
  for (std::uint32_t c = 0; c < scc.count; ++c)
    if (nontrivial[c] && has_acc[c]) return true;
  return false;
}

}  // namespace detail

/// Language equivalence of two deterministic complete Büchi automata.
/// Only reachable parts matter, so the product is explored from the
/// initial pair.
inline bool equivalent(const explicit_automaton& a, const explicit_automaton& b) {
  if (std::set<std::string>(a.aps.begin(), a.aps.end()) !=
          std::set<std::string>(b.aps.begin(), b.aps.end()) ||
      a.aps.size() != b.aps.size())
    throw proposition_mismatch("automata have different propositions");
  std::vector<unsigned> b_to_a(b.aps.size()), a_to_b(a.aps.size());
  for (unsigned i = 0; i < b.aps.size(); ++i)
    for (unsigned j = 0; j < a.aps.size(); ++j)
      if (b.aps[i] == a.aps[j]) {
        b_to_a[i] = j;
        a_to_b[j] = i;
      }
  return !detail::difference_nonempty(a, b, b_to_a) && !detail::difference_nonempty(b, a, a_to_b);
}

inline bool equivalent(const mtdwa& a, const mtdwa& b) { return equivalent(to_explicit(a), to_explicit(b)); }

enum class fragment { B, G, S, O };

inline const char* to_string(fragment f) {
  switch (f) {
    case fragment::B: return "B";
    case fragment::G: return "G";
    case fragment::S: return "S";
    case fragment::O: return "O";
  }
  return "?";
}

/// Random formulas following the fragment grammar.  `size` bounds the
/// number of syntax-tree nodes; leaves are atoms.
class obligation_generator {
 public:
  obligation_generator(formula_store& fs, std::vector<std::string> props, std::uint64_t seed)
      : fs_(fs), rng_(seed) {
    if (props.empty()) throw std::invalid_argument("need at least one proposition");
    for (const auto& p : props) atoms_.push_back(fs_.ap(p));
  }

  formula operator()(fragment frag, unsigned size) {
    if (size == 0) throw std::invalid_argument("size must be positive");
    return gen(frag, pick(1, size));
  }

  /// A formula of exactly `size` nodes (before simplification).
  formula exact(fragment frag, unsigned size) {
    if (size == 0) throw std::invalid_argument("size must be positive");
    return gen(frag, size);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  unsigned pick(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }

  formula atom() { return atoms_[pick(0, static_cast<unsigned>(atoms_.size()) - 1)]; }

  // Each production is a weight, an arity and a builder.
  struct production {
    unsigned weight;
    unsigned arity;
    fragment left, right;
    op k;
    bool delegate = false;  // derive the child fragment directly with the same size
  };

  formula gen(fragment frag, unsigned size) {
    if (size == 1) return atom();
    const std::vector<production>& ps = table(frag);
    std::vector<unsigned> weights;
    for (const auto& p : ps) {
      bool fits = p.delegate || (p.arity == 1 ? size >= 2 : size >= 3);
      weights.push_back(fits ? p.weight : 0);
    }
    std::discrete_distribution<std::size_t> d(weights.begin(), weights.end());
    const production& p = ps[d(rng_)];
    if (p.delegate) return gen(p.left, size);
    if (p.arity == 1) return fs_.make(p.k, gen(p.left, size - 1));
    unsigned l = pick(1, size - 2);
    formula a = gen(p.left, l);
    formula b = gen(p.right, size - 1 - l);
    return fs_.make(p.k, a, b);
  }

  static const std::vector<production>& table(fragment frag) {
    using F = fragment;
    static const std::vector<production> b = {
        {2, 1, F::B, F::B, op::Not},     {2, 1, F::B, F::B, op::X},       {3, 2, F::B, F::B, op::And},
        {3, 2, F::B, F::B, op::Or},      {1, 2, F::B, F::B, op::Implies}, {1, 2, F::B, F::B, op::Equiv},
        {1, 2, F::B, F::B, op::Xor},
    };
    static const std::vector<production> g = {
        {2, 0, F::B, F::B, op::ff, true}, {1, 1, F::S, F::S, op::Not},     {3, 2, F::G, F::G, op::And},
        {3, 2, F::G, F::G, op::Or},       {1, 2, F::S, F::G, op::Implies}, {2, 1, F::G, F::G, op::X},
        {3, 1, F::G, F::G, op::F},        {3, 2, F::G, F::G, op::U},       {2, 2, F::G, F::G, op::M},
    };
    static const std::vector<production> s = {
        {2, 0, F::B, F::B, op::ff, true}, {1, 1, F::G, F::G, op::Not},     {3, 2, F::S, F::S, op::And},
        {3, 2, F::S, F::S, op::Or},       {1, 2, F::G, F::S, op::Implies}, {2, 1, F::S, F::S, op::X},
        {3, 1, F::S, F::S, op::G},        {3, 2, F::S, F::S, op::R},       {2, 2, F::S, F::S, op::W},
    };
    static const std::vector<production> o = {
        {2, 0, F::G, F::G, op::ff, true}, {2, 0, F::S, F::S, op::ff, true}, {1, 1, F::O, F::O, op::Not},
        {4, 2, F::O, F::O, op::And},      {4, 2, F::O, F::O, op::Or},       {3, 2, F::O, F::O, op::Equiv},
        {2, 2, F::O, F::O, op::Xor},      {2, 2, F::O, F::O, op::Implies},  {1, 1, F::O, F::O, op::X},
        {2, 2, F::O, F::G, op::U},        {2, 2, F::O, F::S, op::R},        {2, 2, F::S, F::O, op::W},
        {2, 2, F::G, F::O, op::M},
    };
    switch (frag) {
      case F::B: return b;
      case F::G: return g;
      case F::S: return s;
      case F::O: return o;
    }
    return o;
  }

  formula_store& fs_;
  std::mt19937_64 rng_;
  std::vector<formula> atoms_;
};

inline formula random_obligation(formula_store& fs, std::uint64_t seed, unsigned size,
                                 const std::vector<std::string>& props, fragment frag) {
  obligation_generator g(fs, props, seed);
  return g(frag, size);
}

/// Prefix length uniform in [0, prefix_bound], cycle length uniform in
/// [1, cycle_bound], letters uniform.
inline lasso_word random_lasso(std::mt19937_64& rng, const std::vector<std::string>& props,
                               unsigned prefix_bound, unsigned cycle_bound) {
  if (cycle_bound == 0) throw std::invalid_argument("cycle bound must be positive");
  if (props.size() > 63) throw std::invalid_argument("too many propositions");
  lasso_word w;
  w.props = props;
  std::uniform_int_distribution<unsigned> plen(0, prefix_bound), clen(1, cycle_bound);
  std::uniform_int_distribution<letter> let(0, (letter{1} << props.size()) - 1);
  unsigned np = plen(rng), nc = clen(rng);
  for (unsigned i = 0; i < np; ++i) w.prefix.push_back(let(rng));
  for (unsigned i = 0; i < nc; ++i) w.cycle.push_back(let(rng));
  return w;
}

inline lasso_word random_lasso(std::uint64_t seed, const std::vector<std::string>& props,
                               unsigned prefix_bound, unsigned cycle_bound) {
  std::mt19937_64 rng(seed);
  return random_lasso(rng, props, prefix_bound, cycle_bound);
}

}  // namespace oblig
