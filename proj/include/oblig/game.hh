#pragma once

// Realizability of syntactic obligations as weak games on the diagram
// forest.
//
// Positions are the nodes of the transition diagrams.  An internal node
// labeled by an output variable belongs to the output player, every
// other node to the input player; a terminal ⎡α⎤ moves to the root of
// Δ(α).  With the variables of the player who moves first placed at the
// top of the order, a round of the game is exactly one path of Δ(α).
//
// The arena is built while it is explored.  SCCs are found with
// Dijkstra's path-based algorithm; as soon as one is closed, everything
// in it that is still undetermined is won by the player favored by the
// acceptance of its states, and every newly determined position is
// propagated to its explored predecessors.

#include <oblig/hoa.hh>
#include <oblig/lambda.hh>
#include <oblig/parse.hh>
#include <oblig/translate.hh>

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace oblig {

enum class semantics { mealy, moore };

inline const char* to_string(semantics s) { return s == semantics::mealy ? "mealy" : "moore"; }

struct synthesis_spec {
  formula f;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  semantics sem = semantics::mealy;
};

class io_overlap_error : public std::invalid_argument {
 public:
  explicit io_overlap_error(const std::string& p)
      : std::invalid_argument("proposition '" + p + "' is both an input and an output") {}
};

class unpartitioned_atom : public std::invalid_argument {
 public:
  explicit unpartitioned_atom(const std::string& p)
      : std::invalid_argument("proposition '" + p + "' is neither an input nor an output") {}
};

class unrealizable_error : public std::logic_error {
 public:
  unrealizable_error() : std::logic_error("specification is not realizable") {}
};

/// Checks the partition and returns the game's variable order: the
/// variables of the player who moves first come first, each group in its
/// declared order.
inline var_order game_order(const formula_store& fs, const synthesis_spec& spec) {
  std::set<std::string> ins(spec.inputs.begin(), spec.inputs.end());
  std::set<std::string> all = ins;
  for (const auto& o : spec.outputs) {
    if (ins.contains(o)) throw io_overlap_error(o);
    all.insert(o);
  }
  for (formula a : atoms_of(fs, spec.f))
    if (!all.contains(fs.atom_name(a))) throw unpartitioned_atom(fs.atom_name(a));
  std::vector<std::string> names;
  const auto& first = spec.sem == semantics::mealy ? spec.inputs : spec.outputs;
  const auto& second = spec.sem == semantics::mealy ? spec.outputs : spec.inputs;
  names.insert(names.end(), first.begin(), first.end());
  names.insert(names.end(), second.begin(), second.end());
  return var_order(std::move(names));
}

enum class win_status : std::uint8_t { undetermined, output, input };

struct solve_options {
  /// Stop as soon as the initial position is determined.
  bool early_exit = true;
  std::size_t state_limit = 1'000'000;
  /// Called once per position, when its status is fixed.
  std::function<void(dd_ref, win_status)> on_determined;
};

struct solve_result {
  bool realizable = false;
  /// Terminals (automaton states) visited.
  std::size_t states_explored = 0;
  std::size_t positions_explored = 0;
};

/// Finite-memory controller: in state s, on an input in `in`, emit `out`
/// and move to `dst`.  Cubes are over the indices of `inputs` and
/// `outputs` respectively.
struct mealy_strategy {
  struct edge {
    std::uint32_t src;
    cube in;
    cube out;
    std::uint32_t dst;
  };

  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  semantics sem = semantics::mealy;
  std::uint32_t initial = 0;
  std::vector<std::string> state_names;
  std::vector<edge> edges;

  std::uint32_t size() const { return static_cast<std::uint32_t>(state_names.size()); }

  /// Output (unconstrained outputs set to false) and successor.
  std::pair<letter, std::uint32_t> step(std::uint32_t s, letter in) const {
    for (const edge& e : edges)
      if (e.src == s && e.in.contains(in)) return {e.out.value, e.dst};
    throw std::logic_error("strategy undefined for this input");
  }
};

class game_solver {
 public:
  game_solver(std::shared_ptr<formula_store> fs, synthesis_spec spec, solve_options opt = {})
      : spec_(std::move(spec)),
        opt_(std::move(opt)),
        builder_(fs, std::make_shared<mtbdd_manager>(), game_order(*fs, spec_)) {
    require_obligation(*fs, spec_.f);
    std::set<std::string> outs(spec_.outputs.begin(), spec_.outputs.end());
    for (const auto& n : builder_.props().names()) output_level_.push_back(outs.contains(n));
  }

  game_solver(const game_solver&) = delete;
  game_solver& operator=(const game_solver&) = delete;

  solve_result solve() {
    if (!solved_) run();
    solve_result r;
    r.realizable = status(initial_) == win_status::output;
    r.states_explored = states_explored_;
    r.positions_explored = pos_.size();
    return r;
  }

  win_status status_of(dd_ref node) const {
    auto it = index_.find(node.id);
    return it == index_.end() ? win_status::undetermined : pos_[it->second].status;
  }

  const var_order& order() const { return builder_.props(); }
  mtbdd_manager& manager() { return builder_.manager(); }
  formula_store& store() { return builder_.store(); }

  /// Diagram of the strategy from state α: the branch not chosen at each
  /// output node is redirected to ⎡⊥⎤.  Terminals are formula ids.
  dd_ref strategy_diagram(formula alpha) {
    std::uint32_t t = index_of(builder_.leaf(alpha));
    if (pos_[t].status != win_status::output) throw unrealizable_error();
    std::unordered_map<std::uint32_t, dd_ref> memo;
    mtbdd_manager& dd = builder_.manager();
    dd_ref bot = builder_.leaf(formula::ff());
    auto rec = [&](auto& self, std::uint32_t p) -> dd_ref {
      const position& x = pos_[p];
      if (dd.is_terminal(x.node)) return x.node;
      if (auto it = memo.find(p); it != memo.end()) return it->second;
      dd_ref res;
      std::uint32_t lvl = dd.level(x.node);
      std::uint32_t lo = x.succ[0], hi = x.succ[1];
      if (output_level_[lvl]) {
        if (x.choice == lo) res = dd.branch(lvl, self(self, lo), bot);
        else if (x.choice == hi) res = dd.branch(lvl, bot, self(self, hi));
        else throw std::logic_error("winning output node without a choice");
      } else {
        res = dd.branch(lvl, self(self, lo), self(self, hi));
      }
      memo.emplace(p, res);
      return res;
    };
    return rec(rec, pos_[t].succ.at(0));
  }

  /// Strategy restricted to the states it can reach.
  mealy_strategy extract_strategy() {
    if (!solve().realizable) throw unrealizable_error();
    mtbdd_manager& dd = builder_.manager();
    const var_order& ord = builder_.props();
    mealy_strategy m;
    m.inputs = spec_.inputs;
    m.outputs = spec_.outputs;
    m.sem = spec_.sem;
    // Level -> index among inputs or outputs.
    std::vector<unsigned> local(ord.size());
    {
      std::unordered_map<std::string, unsigned> in_idx, out_idx;
      for (unsigned i = 0; i < spec_.inputs.size(); ++i) in_idx[spec_.inputs[i]] = i;
      for (unsigned i = 0; i < spec_.outputs.size(); ++i) out_idx[spec_.outputs[i]] = i;
      for (std::uint32_t l = 0; l < ord.size(); ++l)
        local[l] = output_level_[l] ? out_idx.at(ord.name(l)) : in_idx.at(ord.name(l));
    }
    std::unordered_map<std::uint32_t, std::uint32_t> state_of;
    std::vector<formula> todo;
    auto add = [&](formula g) {
      auto [it, fresh] = state_of.try_emplace(g.id, static_cast<std::uint32_t>(todo.size()));
      if (fresh) {
        todo.push_back(g);
        m.state_names.push_back(to_string(builder_.store(), g));
      }
      return it->second;
    };
    m.initial = add(builder_.canonicalize(spec_.f));
    for (std::size_t i = 0; i < todo.size(); ++i) {
      formula alpha = todo[i];
      dd_ref sd = strategy_diagram(alpha);
      auto src = static_cast<std::uint32_t>(i);
      dd.for_each_path(sd, [&](const cube& c, mtbdd_manager::value_type v) {
        // Killed branches; ⊥ is never reached otherwise from a winning state.
        if (v == formula::ff().id) return;
        mealy_strategy::edge e{src, {}, {}, 0};
        for (std::uint32_t l = 0; l < ord.size(); ++l) {
          if (!((c.care >> l) & 1)) continue;
          bool val = (c.value >> l) & 1;
          if (output_level_[l]) e.out = e.out.with(local[l], val);
          else e.in = e.in.with(local[l], val);
        }
        e.dst = add(formula{static_cast<std::uint32_t>(v)});
        m.edges.push_back(e);
      });
    }
    return m;
  }

 private:
  static constexpr std::uint32_t none = UINT32_MAX;

  struct position {
    dd_ref node;
    win_status status = win_status::undetermined;
    std::uint32_t choice = none;
    std::uint32_t pending = 0;  // successors not yet known to be won by the owner's opponent
    std::uint32_t pre = none;
    bool closed = false;
    std::vector<std::uint32_t> succ;
    std::vector<std::uint32_t> parents;
  };

  win_status status(std::uint32_t p) const { return pos_[p].status; }

  bool output_owned(std::uint32_t p) const {
    const mtbdd_manager& dd = builder_.manager();
    dd_ref n = pos_[p].node;
    return !dd.is_terminal(n) && output_level_[dd.level(n)];
  }

  std::uint32_t index_of(dd_ref n) {
    auto [it, fresh] = index_.try_emplace(n.id, static_cast<std::uint32_t>(pos_.size()));
    if (fresh) {
      position x;
      x.node = n;
      pos_.push_back(std::move(x));
    }
    return it->second;
  }

  void expand(std::uint32_t p) {
    mtbdd_manager& dd = builder_.manager();
    dd_ref n = pos_[p].node;
    std::vector<std::uint32_t> s;
    if (dd.is_terminal(n)) {
      if (++states_explored_ > opt_.state_limit) throw state_limit_error(opt_.state_limit);
      formula alpha{static_cast<std::uint32_t>(dd.value(n))};
      s.push_back(index_of(builder_.delta(alpha)));
    } else {
      dd_ref lo = dd.low(n), hi = dd.high(n);
      s.push_back(index_of(lo));
      s.push_back(index_of(hi));
    }
    pos_[p].pending = static_cast<std::uint32_t>(s.size());
    pos_[p].succ = std::move(s);
  }

  void determine(std::uint32_t p, win_status st, std::uint32_t choice) {
    position& x = pos_[p];
    if (x.status != win_status::undetermined) {
      if (x.status != st) throw std::logic_error("winning status changed");
      return;
    }
    x.status = st;
    x.choice = choice;
    if (opt_.on_determined) opt_.on_determined(x.node, st);
    work_.push_back(p);
  }

  /// Position p has learned that its successor c is determined.
  void react(std::uint32_t p, std::uint32_t c) {
    position& x = pos_[p];
    if (x.status != win_status::undetermined) return;
    win_status cs = pos_[c].status;
    win_status mine = output_owned(p) ? win_status::output : win_status::input;
    if (cs == mine) {
      determine(p, cs, c);
    } else if (--x.pending == 0) {
      win_status other = mine == win_status::output ? win_status::input : win_status::output;
      // Every successor is won by the opponent; for a terminal that is
      // simply its only successor.
      determine(p, other, x.succ.size() == 1 ? c : none);
    }
  }

  void propagate() {
    while (!work_.empty()) {
      std::uint32_t c = work_.back();
      work_.pop_back();
      for (std::uint32_t p : pos_[c].parents) react(p, c);
    }
  }

  class weakness_error : public std::logic_error {
   public:
    weakness_error() : std::logic_error("arena SCC mixes accepting and rejecting states") {}
  };

  /// Letters of a cycle from terminal position t back to itself through
  /// `members`, or nothing if there is none.
  std::vector<letter> cycle_letters(std::uint32_t t, const std::unordered_set<std::uint32_t>& members) {
    const mtbdd_manager& dd = builder_.manager();
    std::unordered_map<std::uint32_t, std::uint32_t> parent;
    std::vector<std::uint32_t> frontier{t};
    std::optional<std::uint32_t> last;
    for (std::size_t h = 0; h < frontier.size() && !last; ++h) {
      std::uint32_t u = frontier[h];
      for (std::uint32_t c : pos_[u].succ) {
        if (!members.contains(c)) continue;
        if (c == t) {
          last = u;
          break;
        }
        if (parent.try_emplace(c, u).second) frontier.push_back(c);
      }
    }
    if (!last) return {};
    std::vector<std::uint32_t> path{t};
    for (std::uint32_t x = *last; x != t; x = parent.at(x)) path.push_back(x);
    path.push_back(t);
    std::reverse(path.begin(), path.end());
    std::vector<letter> word;
    letter cur = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const position& u = pos_[path[i]];
      if (!dd.is_terminal(u.node) && u.succ[1] == path[i + 1]) cur |= letter{1} << dd.level(u.node);
      if (dd.is_terminal(pos_[path[i + 1]].node)) {
        word.push_back(cur);
        cur = 0;
      }
    }
    return word;
  }

  /// Acceptance of a nontrivial arena SCC, read off cycles through its
  /// first and last terminals (which must agree).
  std::optional<bool> scc_acceptance(const std::vector<std::uint32_t>& members) {
    const mtbdd_manager& dd = builder_.manager();
    std::vector<std::uint32_t> terms;
    for (std::uint32_t p : members)
      if (dd.is_terminal(pos_[p].node)) terms.push_back(p);
    if (terms.empty()) return std::nullopt;
    bool nontrivial = members.size() > 1 || pos_[terms[0]].succ.at(0) == terms[0];
    if (!nontrivial) return std::nullopt;
    std::unordered_set<std::uint32_t> in(members.begin(), members.end());
    std::optional<bool> acc;
    for (std::uint32_t t : {terms.front(), terms.back()}) {
      formula alpha{static_cast<std::uint32_t>(dd.value(pos_[t].node))};
      bool a = cycle_accepting(builder_.store(), alpha, builder_.props(), cycle_letters(t, in));
      if (acc && *acc != a) throw weakness_error();
      acc = a;
    }
    return acc;
  }

  void close_scc(const std::vector<std::uint32_t>& members) {
    for (std::uint32_t p : members) pos_[p].closed = true;
    std::optional<bool> acc = scc_acceptance(members);
    std::vector<std::uint32_t> fresh;
    for (std::uint32_t p : members)
      if (pos_[p].status == win_status::undetermined) fresh.push_back(p);
    if (fresh.empty()) return;
    if (!acc) throw std::logic_error("undetermined position in a trivial SCC");
    win_status st = *acc ? win_status::output : win_status::input;
    for (std::uint32_t p : fresh) {
      pos_[p].status = st;
      if (opt_.on_determined) opt_.on_determined(pos_[p].node, st);
    }
    for (std::uint32_t p : fresh) {
      if (st == win_status::output && output_owned(p)) {
        for (std::uint32_t c : pos_[p].succ)
          if (pos_[c].status == win_status::output) {
            pos_[p].choice = c;
            break;
          }
      } else if (pos_[p].succ.size() == 1) {
        pos_[p].choice = pos_[p].succ[0];
      }
      work_.push_back(p);
    }
    propagate();
  }

  void run() {
    initial_ = index_of(builder_.leaf(builder_.canonicalize(spec_.f)));
    std::uint32_t counter = 0;
    std::vector<std::uint32_t> S, P;
    struct frame {
      std::uint32_t p;
      std::size_t next;
    };
    std::vector<frame> call;
    auto enter = [&](std::uint32_t p) {
      pos_[p].pre = counter++;
      S.push_back(p);
      P.push_back(p);
      expand(p);
      call.push_back({p, 0});
    };
    enter(initial_);
    while (!call.empty()) {
      if (opt_.early_exit && status(initial_) != win_status::undetermined) break;
      frame& f = call.back();
      std::uint32_t p = f.p;
      // A determined position need not look at its remaining successors.
      if (f.next < pos_[p].succ.size() && status(p) == win_status::undetermined) {
        std::uint32_t w = pos_[p].succ[f.next++];
        if (pos_[w].status != win_status::undetermined) {
          react(p, w);
          propagate();
        } else {
          pos_[w].parents.push_back(p);
        }
        if (pos_[w].pre == none) {
          enter(w);
        } else if (!pos_[w].closed) {
          while (pos_[P.back()].pre > pos_[w].pre) P.pop_back();
        }
        continue;
      }
      call.pop_back();
      if (P.back() == p) {
        P.pop_back();
        std::vector<std::uint32_t> members;
        std::uint32_t w;
        do {
          w = S.back();
          S.pop_back();
          members.push_back(w);
        } while (w != p);
        close_scc(members);
      }
    }
    solved_ = true;
  }

  synthesis_spec spec_;
  solve_options opt_;
  successor_builder builder_;
  std::vector<bool> output_level_;
  std::vector<position> pos_;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;
  std::vector<std::uint32_t> work_;
  std::uint32_t initial_ = none;
  std::size_t states_explored_ = 0;
  bool solved_ = false;
};

inline solve_result solve(std::shared_ptr<formula_store> fs, const synthesis_spec& spec,
                          solve_options opt = {}) {
  game_solver g(std::move(fs), spec, std::move(opt));
  return g.solve();
}

inline mealy_strategy extract_strategy(std::shared_ptr<formula_store> fs, const synthesis_spec& spec) {
  game_solver g(std::move(fs), spec);
  return g.extract_strategy();
}

/// HOA-like rendering of a strategy: no acceptance, the outputs declared
/// controllable, and one output cube per input cube on each edge.
inline void write_strategy(const mealy_strategy& m, std::ostream& os) {
  const auto ni = static_cast<unsigned>(m.inputs.size());
  const auto no = static_cast<unsigned>(m.outputs.size());
  os << "HOA: v1\n";
  os << "States: " << m.size() << '\n';
  os << "Start: " << m.initial << '\n';
  os << "AP: " << ni + no;
  for (const auto& p : m.inputs) os << ' ' << quote_hoa(p);
  for (const auto& p : m.outputs) os << ' ' << quote_hoa(p);
  os << '\n';
  os << "acc-name: all\n";
  os << "Acceptance: 0 t\n";
  os << "properties: trans-labels explicit-labels state-acc deterministic\n";
  os << "controllable-AP:";
  for (unsigned i = 0; i < no; ++i) os << ' ' << ni + i;
  os << '\n';
  os << "--BODY--\n";
  for (std::uint32_t s = 0; s < m.size(); ++s) {
    os << "State: " << s << ' ' << quote_hoa(m.state_names[s]) << '\n';
    for (const auto& e : m.edges) {
      if (e.src != s) continue;
      std::string lab;
      for (unsigned v = 0; v < ni; ++v)
        if ((e.in.care >> v) & 1) lab += (lab.empty() ? "" : "&") + std::string((e.in.value >> v) & 1 ? "" : "!") + std::to_string(v);
      for (unsigned v = 0; v < no; ++v)
        if ((e.out.care >> v) & 1)
          lab += (lab.empty() ? "" : "&") + std::string((e.out.value >> v) & 1 ? "" : "!") + std::to_string(ni + v);
      os << '[' << (lab.empty() ? "t" : lab) << "] " << e.dst << '\n';
    }
  }
  os << "--END--\n";
}

}  // namespace oblig
