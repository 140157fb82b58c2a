#pragma once

// Translation of syntactic obligations into deterministic weak automata
// whose transitions are MTBDDs.
//
// Each state is a formula.  tr(s) is a diagram over the propositions
// whose terminals are the successor formulas; the terminals are then
// replaced by a representative of their propositional-equivalence class,
// which is what makes the exploration finite.

#include <oblig/classify.hh>
#include <oblig/formula.hh>
#include <oblig/detail/scc.hh>
#include <oblig/lambda.hh>
#include <oblig/lasso.hh>
#include <oblig/mtbdd.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace oblig {

class not_obligation_error : public std::runtime_error {
 public:
  not_obligation_error(const std::string& formula, const std::string& offending)
      : std::runtime_error("not a syntactic obligation: " + formula + " (offending subformula: " +
                           offending + ")"),
        offending_(offending) {}

  const std::string& offending() const { return offending_; }

 private:
  std::string offending_;
};

class state_limit_error : public std::runtime_error {
 public:
  explicit state_limit_error(std::size_t limit)
      : std::runtime_error("state limit of " + std::to_string(limit) + " exceeded") {}
};

/// Throws not_obligation_error unless f is in the obligation fragment.
inline void require_obligation(const formula_store& fs, formula f) {
  if (auto bad = offending_subformula(fs, f))
    throw not_obligation_error(to_string(fs, f), to_string(fs, *bad));
}

/// Propositional-equivalence classes.  A formula is abstracted into a BDD
/// over one variable per maximal temporal subformula, after pushing X
/// through Boolean operators (so X(a & b) and Xa & Xb get the same key).
/// The first formula seen with a key represents its class.
class prop_canonicalizer {
 public:
  explicit prop_canonicalizer(formula_store& fs) : fs_(fs) {
    bdd_and_ = bdd_.register_binary([](auto a, auto b) { return a & b; });
    bdd_or_ = bdd_.register_binary([](auto a, auto b) { return a | b; });
    bdd_xor_ = bdd_.register_binary([](auto a, auto b) { return a ^ b; });
    bdd_not_ = bdd_.register_unary([](auto a) { return a ^ 1; });
    rep_.emplace(bdd_.terminal(1).id, formula::tt());
    rep_.emplace(bdd_.terminal(0).id, formula::ff());
  }

  formula operator()(formula f) {
    if (auto it = canon_.find(f.id); it != canon_.end()) return it->second;
    dd_ref key = encode(f, 0);
    formula r = rep_.try_emplace(key.id, f).first->second;
    canon_.emplace(f.id, r);
    return r;
  }

  /// The abstraction key of f; equal keys iff propositionally equivalent.
  dd_ref key(formula f) { return encode(f, 0); }

  std::size_t variable_count() const { return vars_.size(); }

 private:
  dd_ref encode(formula f, std::uint32_t depth) {
    std::pair<std::uint32_t, std::uint32_t> memo_key{f.id, depth};
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    dd_ref res;
    op k = fs_.kind(f);
    switch (k) {
      case op::ff: res = bdd_.terminal(0); break;
      case op::tt: res = bdd_.terminal(1); break;
      case op::Not: res = bdd_.map(bdd_not_, encode(fs_.child(f), depth)); break;
      case op::X: res = encode(fs_.child(f), depth + 1); break;
      case op::And:
      case op::Or:
      case op::Implies:
      case op::Equiv:
      case op::Xor: {
        dd_ref a = encode(fs_.left(f), depth);
        dd_ref b = encode(fs_.right(f), depth);
        if (k == op::And) res = bdd_.apply(bdd_and_, a, b);
        else if (k == op::Or) res = bdd_.apply(bdd_or_, a, b);
        else if (k == op::Xor) res = bdd_.apply(bdd_xor_, a, b);
        else if (k == op::Equiv) res = bdd_.map(bdd_not_, bdd_.apply(bdd_xor_, a, b));
        else res = bdd_.apply(bdd_or_, bdd_.map(bdd_not_, a), b);
        break;
      }
      default: {
        // Atoms and temporal operators under `depth` X's.
        auto [it, fresh] = vars_.try_emplace(memo_key, static_cast<std::uint32_t>(vars_.size()));
        res = bdd_.branch(it->second, bdd_.terminal(0), bdd_.terminal(1));
        break;
      }
    }
    memo_.emplace(memo_key, res);
    return res;
  }

  formula_store& fs_;
  mtbdd_manager bdd_;
  mtbdd_manager::binary_op bdd_and_{}, bdd_or_{}, bdd_xor_{};
  mtbdd_manager::unary_op bdd_not_{};
  std::unordered_map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t, detail::pair_key_hash>
      vars_;
  std::unordered_map<std::pair<std::uint32_t, std::uint32_t>, dd_ref, detail::pair_key_hash> memo_;
  std::unordered_map<std::uint32_t, formula> rep_;
  std::unordered_map<std::uint32_t, formula> canon_;
};

/// Computes tr(f) and the canonicalized successor diagrams Δ(f), both with
/// formula ids as terminals.  Shared by the translator and the game
/// solver, which explore states in different orders.
class successor_builder {
 public:
  successor_builder(std::shared_ptr<formula_store> fs, std::shared_ptr<mtbdd_manager> dd,
                    var_order props)
      : fs_(std::move(fs)), dd_(std::move(dd)), props_(std::move(props)), canon_(*fs_) {
    formula_store& s = *fs_;
    auto fid = [](formula f) { return static_cast<mtbdd_manager::value_type>(f.id); };
    auto fm = [](mtbdd_manager::value_type v) { return formula{static_cast<std::uint32_t>(v)}; };
    and_ = dd_->register_binary([&s, fid, fm](auto a, auto b) { return fid(s.and_(fm(a), fm(b))); });
    or_ = dd_->register_binary([&s, fid, fm](auto a, auto b) { return fid(s.or_(fm(a), fm(b))); });
    implies_ =
        dd_->register_binary([&s, fid, fm](auto a, auto b) { return fid(s.implies(fm(a), fm(b))); });
    equiv_ =
        dd_->register_binary([&s, fid, fm](auto a, auto b) { return fid(s.equiv(fm(a), fm(b))); });
    xor_ = dd_->register_binary([&s, fid, fm](auto a, auto b) { return fid(s.xor_(fm(a), fm(b))); });
    not_ = dd_->register_unary([&s, fid, fm](auto a) { return fid(s.not_(fm(a))); });
    canon_op_ = dd_->register_unary([this, fid, fm](auto a) { return fid(canon_(fm(a))); });
  }

  successor_builder(const successor_builder&) = delete;
  successor_builder& operator=(const successor_builder&) = delete;

  formula_store& store() { return *fs_; }
  const formula_store& store() const { return *fs_; }
  const std::shared_ptr<formula_store>& store_ptr() const { return fs_; }
  const std::shared_ptr<mtbdd_manager>& manager_ptr() const { return dd_; }
  mtbdd_manager& manager() { return *dd_; }
  const mtbdd_manager& manager() const { return *dd_; }
  const var_order& props() const { return props_; }

  formula canonicalize(formula f) { return canon_(f); }
  prop_canonicalizer& canonicalizer() { return canon_; }

  dd_ref leaf(formula f) { return dd_->terminal(f.id); }

  dd_ref tr(formula f) {
    if (auto it = tr_memo_.find(f.id); it != tr_memo_.end()) return it->second;
    formula_store& s = *fs_;
    dd_ref res;
    op k = s.kind(f);
    switch (k) {
      case op::ff:
      case op::tt:
        res = leaf(f);
        break;
      case op::ap: {
        auto level = props_.level_of(s.atom_name(f));
        if (!level) throw std::invalid_argument("proposition '" + s.atom_name(f) + "' has no level");
        res = dd_->branch(*level, leaf(formula::ff()), leaf(formula::tt()));
        break;
      }
      case op::X: res = leaf(s.child(f)); break;
      case op::Not: res = dd_->map(not_, tr(s.child(f))); break;
      case op::And: res = dd_->apply(and_, tr(s.left(f)), tr(s.right(f))); break;
      case op::Or: res = dd_->apply(or_, tr(s.left(f)), tr(s.right(f))); break;
      case op::Implies: res = dd_->apply(implies_, tr(s.left(f)), tr(s.right(f))); break;
      case op::Equiv: res = dd_->apply(equiv_, tr(s.left(f)), tr(s.right(f))); break;
      case op::Xor: res = dd_->apply(xor_, tr(s.left(f)), tr(s.right(f))); break;
      case op::F: res = dd_->apply(or_, tr(s.child(f)), leaf(f)); break;
      case op::G: res = dd_->apply(and_, tr(s.child(f)), leaf(f)); break;
      case op::U:
      case op::W: {
        dd_ref stay = dd_->apply(and_, tr(s.left(f)), leaf(f));
        res = dd_->apply(or_, tr(s.right(f)), stay);
        break;
      }
      case op::M:
      case op::R: {
        dd_ref stay = dd_->apply(or_, tr(s.left(f)), leaf(f));
        res = dd_->apply(and_, tr(s.right(f)), stay);
        break;
      }
    }
    tr_memo_.emplace(f.id, res);
    return res;
  }

  /// Δ(f): tr(f) with every terminal replaced by its class representative.
  dd_ref delta(formula f) {
    if (auto it = delta_memo_.find(f.id); it != delta_memo_.end()) return it->second;
    dd_ref res = dd_->map(canon_op_, tr(f));
    delta_memo_.emplace(f.id, res);
    return res;
  }

 private:
  std::shared_ptr<formula_store> fs_;
  std::shared_ptr<mtbdd_manager> dd_;
  var_order props_;
  prop_canonicalizer canon_;
  mtbdd_manager::binary_op and_{}, or_{}, implies_{}, equiv_{}, xor_{};
  mtbdd_manager::unary_op not_{}, canon_op_{};
  std::unordered_map<std::uint32_t, dd_ref> tr_memo_;
  std::unordered_map<std::uint32_t, dd_ref> delta_memo_;
};

/// Deterministic weak automaton with MTBDD transitions.  The terminals of
/// delta[s] are state ids.
struct mtdwa {
  std::shared_ptr<formula_store> store;
  std::shared_ptr<mtbdd_manager> dd;
  var_order props;
  std::uint32_t initial = 0;
  std::vector<dd_ref> delta;
  std::vector<accept_mark> lambda;
  std::vector<bool> accepting;
  std::vector<formula> state_formula;

  std::uint32_t size() const { return static_cast<std::uint32_t>(delta.size()); }

  /// Distinct successors of s in diagram path order.
  std::vector<std::uint32_t> successors(std::uint32_t s) const {
    std::vector<std::uint32_t> res;
    for (auto v : dd->terminals(delta.at(s))) res.push_back(static_cast<std::uint32_t>(v));
    return res;
  }

  std::uint32_t step(std::uint32_t s, letter l) const {
    return static_cast<std::uint32_t>(dd->eval(delta.at(s), l));
  }
};

/// Acceptance of the SCC of a state from one of its cycles.  A run on
/// v^ω that starts at a state on a cycle labelled v never leaves the
/// state's SCC, so the truth of the state formula on v^ω is the
/// acceptance of that SCC.  The syntactic mark of the class
/// representative is not reliable here: a <-> (a <-> F b) is marked
/// accepting yet is propositionally equivalent to F b.
inline bool cycle_accepting(const formula_store& fs, formula f, const var_order& props,
                            std::vector<letter> cycle) {
  lasso_word w;
  w.props = props.names();
  w.cycle = std::move(cycle);
  return eval_lasso(fs, f, w);
}

struct translate_options {
  std::size_t state_limit = 1'000'000;
  /// Proposition order; defaults to the atoms of the formula in the order
  /// they were first registered in the store.
  std::optional<std::vector<std::string>> props;
};

inline var_order default_order(const formula_store& fs, formula f) {
  std::vector<std::string> names;
  for (formula a : atoms_of(fs, f)) names.push_back(fs.atom_name(a));
  return var_order(std::move(names));
}

/// Recomputes the acceptance of every nontrivial SCC with
/// cycle_accepting(); states on no cycle keep their coerced mark.
inline void label_cycles(mtdwa& a) {
  const std::uint32_t n = a.size();
  // One letter per successor.
  std::vector<std::vector<std::pair<std::uint32_t, letter>>> out(n);
  for (std::uint32_t s = 0; s < n; ++s)
    for (auto [v, l] : a.dd->terminal_witnesses(a.delta[s])) out[s].emplace_back(static_cast<std::uint32_t>(v), l);
  std::vector<std::uint32_t> roots{a.initial};
  auto scc = detail::tarjan(n, roots, [&](std::uint32_t s) {
    std::vector<std::uint32_t> r;
    for (auto& e : out[s]) r.push_back(e.first);
    return r;
  });
  std::vector<bool> done(scc.count, false);
  std::vector<std::uint32_t> parent(n);
  std::vector<letter> via(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    std::uint32_t k = scc.component[q];
    if (k == UINT32_MAX || done[k]) continue;
    // Shortest cycle through q inside its SCC.
    std::vector<std::uint32_t> frontier{q};
    std::vector<bool> seen(n, false);
    std::vector<letter> word;
    for (std::size_t h = 0; h < frontier.size() && word.empty(); ++h) {
      std::uint32_t u = frontier[h];
      for (auto [t, l] : out[u]) {
        if (scc.component[t] != k) continue;
        if (t == q) {
          word.push_back(l);
          for (std::uint32_t x = u; x != q; x = parent[x]) word.push_back(via[x]);
          std::reverse(word.begin(), word.end());
          break;
        }
        if (!seen[t]) {
          seen[t] = true;
          parent[t] = u;
          via[t] = l;
          frontier.push_back(t);
        }
      }
    }
    if (word.empty()) continue;  // trivial SCC
    done[k] = true;
    bool acc = cycle_accepting(*a.store, a.state_formula[q], a.props, std::move(word));
    for (std::uint32_t s = 0; s < n; ++s)
      if (scc.component[s] == k) a.accepting[s] = acc;
  }
}

/// Breadth-first exploration from the class of f.
inline mtdwa translate(std::shared_ptr<formula_store> fs, formula f, const translate_options& opt = {}) {
  require_obligation(*fs, f);
  var_order order = opt.props ? var_order(*opt.props) : default_order(*fs, f);
  auto dd = std::make_shared<mtbdd_manager>();
  successor_builder sb(fs, dd, order);

  mtdwa res;
  res.store = fs;
  res.dd = dd;
  res.props = order;

  std::unordered_map<std::uint32_t, std::uint32_t> state_of;
  std::deque<formula> todo;
  auto add = [&](formula g) {
    auto [it, fresh] = state_of.try_emplace(g.id, static_cast<std::uint32_t>(res.state_formula.size()));
    if (fresh) {
      if (res.state_formula.size() >= opt.state_limit) throw state_limit_error(opt.state_limit);
      res.state_formula.push_back(g);
      todo.push_back(g);
    }
    return it->second;
  };
  res.initial = add(sb.canonicalize(f));

  std::vector<dd_ref> formula_delta;
  while (!todo.empty()) {
    formula s = todo.front();
    todo.pop_front();
    dd_ref d = sb.delta(s);
    formula_delta.push_back(d);
    for (auto v : dd->terminals(d)) add(formula{static_cast<std::uint32_t>(v)});
  }

  acceptance_labeler lab(*fs);
  res.delta = dd->map_terminals(std::span<const dd_ref>(formula_delta), [&](auto v) -> mtbdd_manager::value_type {
    return state_of.at(static_cast<std::uint32_t>(v));
  });
  for (std::size_t i = 0; i < res.state_formula.size(); ++i) {
    accept_mark m = lab(res.state_formula[i]);
    res.lambda.push_back(m);
    res.accepting.push_back(lambda_prime(m));
  }
  label_cycles(res);
  return res;
}

/// Maps a word's letters onto the proposition order of an automaton.
/// Throws unbound_atom if the word misses one of the propositions.
inline std::vector<unsigned> align_props(const var_order& props, const lasso_word& w) {
  std::vector<unsigned> pos;
  for (const std::string& p : props.names()) {
    unsigned i = 0;
    while (i < w.props.size() && w.props[i] != p) ++i;
    if (i == w.props.size()) throw unbound_atom(p);
    pos.push_back(i);
  }
  return pos;
}

inline letter remap_letter(letter l, const std::vector<unsigned>& pos) {
  letter r = 0;
  for (unsigned k = 0; k < pos.size(); ++k) r |= ((l >> pos[k]) & 1) << k;
  return r;
}

/// Runs a deterministic automaton given by `step` on u·v^ω and reports
/// whether the loop of the run visits an accepting state.
template <class Step, class Accepting>
bool run_lasso(std::uint32_t initial, const lasso_word& w, Step&& step, Accepting&& accepting) {
  std::uint32_t q = initial;
  for (letter l : w.prefix) q = step(q, l);
  // After the prefix the run is determined by (state, cycle offset).
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> seen;
  std::vector<std::uint32_t> visited;
  std::size_t k = 0;
  for (;;) {
    auto [it, fresh] = seen.try_emplace({q, k}, visited.size());
    if (!fresh) {
      for (std::size_t i = it->second; i < visited.size(); ++i)
        if (accepting(visited[i])) return true;
      return false;
    }
    visited.push_back(q);
    q = step(q, w.cycle[k]);
    k = (k + 1) % w.cycle.size();
  }
}

inline bool accepts_lasso(const mtdwa& a, const lasso_word& w) {
  w.validate();
  auto pos = align_props(a.props, w);
  return run_lasso(
      a.initial, w, [&](std::uint32_t q, letter l) { return a.step(q, remap_letter(l, pos)); },
      [&](std::uint32_t q) { return static_cast<bool>(a.accepting[q]); });
}

}  // namespace oblig
