#pragma once

// Minimization of weak automata with MTBDD transitions.
//
// SCCs of the state graph are ranked bottom-up so that the parity of a
// rank gives the acceptance of the SCC (even = accepting).  Transient
// states take the acceptance of their rank, which does not change the
// language but lets Moore's refinement merge them.  The refinement starts
// from the rank classes, and splits blocks until the diagrams Δ(s), with
// terminals renamed to blocks, agree inside each block.

#include <oblig/detail/scc.hh>
#include <oblig/translate.hh>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace oblig {

class weakness_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// State-level SCCs.  Components are numbered bottom-up: every edge goes
/// from a component to one with a smaller or equal number.
struct condensation {
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
  std::vector<bool> trivial;
  std::vector<std::vector<std::uint32_t>> members;
  std::vector<std::vector<std::uint32_t>> successors;
};

inline condensation scc_decompose(const mtdwa& a) {
  std::vector<std::vector<std::uint32_t>> succ(a.size());
  for (std::uint32_t s = 0; s < a.size(); ++s) succ[s] = a.successors(s);
  std::vector<std::uint32_t> roots(a.size());
  for (std::uint32_t s = 0; s < a.size(); ++s) roots[s] = s;
  auto t = detail::tarjan(a.size(), roots, [&](std::uint32_t v) { return succ[v]; });

  condensation c;
  c.component = std::move(t.component);
  c.count = t.count;
  c.trivial.assign(c.count, true);
  c.members.resize(c.count);
  c.successors.resize(c.count);
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    std::uint32_t cs = c.component[s];
    c.members[cs].push_back(s);
    for (std::uint32_t t2 : succ[s]) {
      std::uint32_t ct = c.component[t2];
      if (ct == cs) {
        c.trivial[cs] = false;
      } else {
        c.successors[cs].push_back(ct);
      }
    }
  }
  for (auto& v : c.successors) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return c;
}

struct ranking {
  condensation scc;
  std::vector<unsigned> rank;      // per SCC
  std::vector<bool> accepting;     // normalized acceptance per state
};

/// Ranks SCCs bottom-up.  A nontrivial SCC gets the smallest rank that is
/// at least the ranks of its successors and whose parity matches its
/// acceptance; a trivial SCC just takes the maximum of its successors and
/// the acceptance that goes with it.
inline ranking rank(const mtdwa& a) {
  ranking r;
  r.scc = scc_decompose(a);
  const condensation& c = r.scc;
  r.rank.assign(c.count, 0);
  r.accepting.assign(a.size(), false);
  for (std::uint32_t k = 0; k < c.count; ++k) {
    unsigned m = 0;
    for (std::uint32_t d : c.successors[k]) m = std::max(m, r.rank[d]);
    unsigned rk = m;
    if (!c.trivial[k]) {
      bool acc = a.accepting[c.members[k].front()];
      for (std::uint32_t s : c.members[k])
        if (a.accepting[s] != acc)
          throw weakness_violation("SCC mixes accepting and rejecting states");
      if ((rk % 2 == 0) != acc) ++rk;
    }
    r.rank[k] = rk;
    for (std::uint32_t s : c.members[k]) r.accepting[s] = rk % 2 == 0;
  }
  return r;
}

/// Block of every state; blocks are numbered by their smallest state.
struct partition {
  std::vector<std::uint32_t> block;
  std::uint32_t count = 0;
};

namespace detail {

/// Renumbers keys in order of first occurrence.
template <class Key, class Hash>
partition number_blocks(const std::vector<Key>& keys) {
  partition p;
  std::unordered_map<Key, std::uint32_t, Hash> ids;
  p.block.reserve(keys.size());
  for (const Key& k : keys) {
    auto [it, fresh] = ids.try_emplace(k, p.count);
    if (fresh) ++p.count;
    p.block.push_back(it->second);
  }
  return p;
}

}  // namespace detail

inline partition moore_partition(const mtdwa& a, const ranking& r) {
  std::vector<std::uint32_t> initial(a.size());
  for (std::uint32_t s = 0; s < a.size(); ++s) initial[s] = r.rank[r.scc.component[s]];
  partition p = detail::number_blocks<std::uint32_t, std::hash<std::uint32_t>>(initial);
  for (;;) {
    auto mapped = a.dd->map_terminals(std::span<const dd_ref>(a.delta), [&](auto v) {
      return static_cast<mtbdd_manager::value_type>(p.block[v]);
    });
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keys(a.size());
    for (std::uint32_t s = 0; s < a.size(); ++s) keys[s] = {p.block[s], mapped[s].id};
    partition next =
        detail::number_blocks<std::pair<std::uint32_t, std::uint32_t>, detail::pair_key_hash>(keys);
    if (next.count == p.count) return next;
    p = std::move(next);
  }
}

/// Quotient by a partition compatible with the transitions.  Each block
/// is represented by its smallest state.
inline mtdwa quotient(const mtdwa& a, const partition& p, const std::vector<bool>& accepting) {
  mtdwa q;
  q.store = a.store;
  q.dd = a.dd;
  q.props = a.props;
  q.initial = p.block[a.initial];
  std::vector<std::uint32_t> rep(p.count, UINT32_MAX);
  for (std::uint32_t s = 0; s < a.size(); ++s)
    if (rep[p.block[s]] == UINT32_MAX) rep[p.block[s]] = s;
  std::vector<dd_ref> roots;
  for (std::uint32_t b = 0; b < p.count; ++b) roots.push_back(a.delta[rep[b]]);
  q.delta = a.dd->map_terminals(std::span<const dd_ref>(roots), [&](auto v) {
    return static_cast<mtbdd_manager::value_type>(p.block[v]);
  });
  for (std::uint32_t b = 0; b < p.count; ++b) {
    q.lambda.push_back(a.lambda[rep[b]]);
    q.accepting.push_back(accepting[rep[b]]);
    q.state_formula.push_back(a.state_formula[rep[b]]);
  }
  return q;
}

inline mtdwa moore_minimize(const mtdwa& a) {
  ranking r = rank(a);
  partition p = moore_partition(a, r);
  return quotient(a, p, r.accepting);
}

}  // namespace oblig
