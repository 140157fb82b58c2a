#pragma once

// Multi-terminal binary decision diagrams.
//
// Nodes are ordered (levels strictly increase from root to terminal),
// reduced (no node has low == high) and shared through a unique table.
// Terminals carry opaque 64-bit values; what they mean (formula ids,
// state ids, block numbers, Booleans) is up to the caller, who also
// supplies the terminal combiners of apply() and map().
//
// There is no garbage collection: a manager grows until it is destroyed.

#include <oblig/detail/hash.hh>
#include <oblig/lasso.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace oblig {

struct dd_ref {
  std::uint32_t id = 0;
  friend constexpr bool operator==(dd_ref, dd_ref) = default;
  friend constexpr auto operator<=>(dd_ref, dd_ref) = default;
};

struct dd_ref_hash {
  std::size_t operator()(dd_ref r) const noexcept { return detail::hash_mix(r.id); }
};

/// A conjunction of literals over variables 0..63: variable v is
/// constrained iff bit v of `care` is set, and then its value is bit v of
/// `value`.
struct cube {
  letter care = 0;
  letter value = 0;

  bool operator==(const cube&) const = default;

  bool contains(letter l) const { return (l & care) == value; }
  bool intersects(const cube& o) const { return ((value ^ o.value) & care & o.care) == 0; }
  cube meet(const cube& o) const { return {care | o.care, value | o.value}; }
  unsigned literal_count() const { return static_cast<unsigned>(std::popcount(care)); }

  cube with(unsigned var, bool positive) const {
    letter bit = letter{1} << var;
    return {care | bit, positive ? (value | bit) : (value & ~bit)};
  }
};

class order_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class partial_assignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class mtbdd_manager {
 public:
  using value_type = std::uint64_t;
  using binary_fn = std::function<value_type(value_type, value_type)>;
  using unary_fn = std::function<value_type(value_type)>;

  static constexpr std::uint32_t terminal_level = std::numeric_limits<std::uint32_t>::max();

  struct binary_op {
    std::uint32_t id;
  };
  struct unary_op {
    std::uint32_t id;
  };

  mtbdd_manager() = default;
  mtbdd_manager(const mtbdd_manager&) = delete;
  mtbdd_manager& operator=(const mtbdd_manager&) = delete;

  std::size_t size() const { return nodes_.size(); }

  dd_ref terminal(value_type v) {
    auto [it, inserted] = terminals_.try_emplace(v, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back({terminal_level, 0, 0, v});
    return dd_ref{it->second};
  }

  dd_ref branch(std::uint32_t level, dd_ref low, dd_ref high) {
    if (level == terminal_level) throw order_violation("reserved level");
    if (level >= this->level(low) || level >= this->level(high))
      throw order_violation("branch level " + std::to_string(level) +
                            " must be above both children");
    return make(level, low, high);
  }

  bool is_terminal(dd_ref r) const { return at(r).level == terminal_level; }
  std::uint32_t level(dd_ref r) const { return at(r).level; }

  dd_ref low(dd_ref r) const {
    const node& n = at(r);
    if (n.level == terminal_level) throw std::logic_error("terminal has no children");
    return dd_ref{n.low};
  }

  dd_ref high(dd_ref r) const {
    const node& n = at(r);
    if (n.level == terminal_level) throw std::logic_error("terminal has no children");
    return dd_ref{n.high};
  }

  value_type value(dd_ref r) const {
    const node& n = at(r);
    if (n.level != terminal_level) throw std::logic_error("not a terminal");
    return n.value;
  }

  binary_op register_binary(binary_fn fn) {
    binary_fns_.push_back(std::move(fn));
    return {static_cast<std::uint32_t>(binary_fns_.size() - 1)};
  }

  unary_op register_unary(unary_fn fn) {
    unary_fns_.push_back(std::move(fn));
    return {static_cast<std::uint32_t>(unary_fns_.size() - 1)};
  }

  /// Pointwise combination through a registered operator, memoized in the
  /// manager's cache.
  dd_ref apply(binary_op op, dd_ref x, dd_ref y) {
    const binary_fn& fn = binary_fns_.at(op.id);
    return apply_rec(op.id, fn, x, y);
  }

  /// Pointwise mapping of terminals through a registered operator,
  /// memoized in the manager's cache.
  dd_ref map(unary_op op, dd_ref x) {
    const unary_fn& fn = unary_fns_.at(op.id);
    return map_rec(op.id, fn, x);
  }

  /// One-off pointwise combination with a call-local memo.
  template <class Fn>
  dd_ref apply2(dd_ref x, dd_ref y, Fn&& fn) {
    std::unordered_map<std::pair<std::uint32_t, std::uint32_t>, dd_ref, detail::pair_key_hash> memo;
    auto rec = [&](auto& self, dd_ref a, dd_ref b) -> dd_ref {
      if (is_terminal(a) && is_terminal(b)) return terminal(fn(value(a), value(b)));
      auto [it, fresh] = memo.try_emplace({a.id, b.id}, dd_ref{});
      if (!fresh) return it->second;
      std::uint32_t top = std::min(level(a), level(b));
      auto [a0, a1] = cofactors(a, top);
      auto [b0, b1] = cofactors(b, top);
      dd_ref lo = self(self, a0, b0);
      dd_ref hi = self(self, a1, b1);
      dd_ref res = make(top, lo, hi);
      memo[{a.id, b.id}] = res;
      return res;
    };
    return rec(rec, x, y);
  }

  /// One-off terminal mapping with a call-local memo.
  template <class Fn>
  dd_ref map_terminals(dd_ref x, Fn&& fn) {
    std::unordered_map<std::uint32_t, dd_ref> memo;
    auto rec = [&](auto& self, dd_ref a) -> dd_ref {
      if (is_terminal(a)) return terminal(fn(value(a)));
      if (auto it = memo.find(a.id); it != memo.end()) return it->second;
      dd_ref lo = self(self, low(a));
      dd_ref hi = self(self, high(a));
      dd_ref res = make(level(a), lo, hi);
      memo.emplace(a.id, res);
      return res;
    };
    return rec(rec, x);
  }

  /// Same as above for several roots sharing one memo.
  template <class Fn>
  std::vector<dd_ref> map_terminals(std::span<const dd_ref> roots, Fn&& fn) {
    std::unordered_map<std::uint32_t, dd_ref> memo;
    auto rec = [&](auto& self, dd_ref a) -> dd_ref {
      if (auto it = memo.find(a.id); it != memo.end()) return it->second;
      dd_ref res;
      if (is_terminal(a)) {
        res = terminal(fn(value(a)));
      } else {
        dd_ref lo = self(self, low(a));
        dd_ref hi = self(self, high(a));
        res = make(level(a), lo, hi);
      }
      memo.emplace(a.id, res);
      return res;
    };
    std::vector<dd_ref> res;
    res.reserve(roots.size());
    for (dd_ref r : roots) res.push_back(rec(rec, r));
    return res;
  }

  /// Terminal reached by following a full assignment (bit v = level v).
  value_type eval(dd_ref r, letter assignment) const {
    while (!is_terminal(r)) {
      std::uint32_t l = level(r);
      if (l >= 64) throw partial_assignment("level beyond 64-bit assignment");
      r = ((assignment >> l) & 1) ? high(r) : low(r);
    }
    return value(r);
  }

  /// Like eval(), but fails if the path needs an unassigned variable.
  value_type eval(dd_ref r, const cube& partial) const {
    while (!is_terminal(r)) {
      std::uint32_t l = level(r);
      if (l >= 64 || !((partial.care >> l) & 1))
        throw partial_assignment("assignment leaves level " + std::to_string(l) + " unset");
      r = ((partial.value >> l) & 1) ? high(r) : low(r);
    }
    return value(r);
  }

  /// Calls fn(cube, terminal value) for each root-to-terminal path, low
  /// branches first.
  template <class Fn>
  void for_each_path(dd_ref r, Fn&& fn) const {
    auto rec = [&](auto& self, dd_ref a, cube c) -> void {
      if (is_terminal(a)) {
        fn(c, value(a));
        return;
      }
      std::uint32_t l = level(a);
      if (l >= 64) throw std::length_error("paths limited to 64 variables");
      self(self, low(a), c.with(l, false));
      self(self, high(a), c.with(l, true));
    };
    rec(rec, r, cube{});
  }

  std::vector<std::pair<cube, value_type>> paths(dd_ref r) const {
    std::vector<std::pair<cube, value_type>> res;
    for_each_path(r, [&](const cube& c, value_type v) { res.emplace_back(c, v); });
    return res;
  }

  /// One assignment leading to each distinct terminal below r, in
  /// low-first DFS order.  Linear in the number of nodes; unset
  /// levels are 0.
  std::vector<std::pair<value_type, letter>> terminal_witnesses(dd_ref r) const {
    std::vector<std::pair<value_type, letter>> res;
    begin_walk();
    auto rec = [&](auto& self, dd_ref a, letter l) -> void {
      if (!first_visit(a)) return;
      if (is_terminal(a)) {
        res.emplace_back(value(a), l);
        return;
      }
      std::uint32_t lv = level(a);
      if (lv >= 64) throw std::length_error("assignments limited to 64 variables");
      self(self, low(a), l);
      self(self, high(a), l | (letter{1} << lv));
    };
    rec(rec, r, 0);
    return res;
  }

  /// Distinct terminal values reachable from r, in low-first DFS order.
  std::vector<value_type> terminals(dd_ref r) const {
    std::vector<value_type> res;
    begin_walk();
    std::vector<dd_ref> todo{r};
    while (!todo.empty()) {
      dd_ref a = todo.back();
      todo.pop_back();
      if (!first_visit(a)) continue;
      if (is_terminal(a)) {
        res.push_back(value(a));
        continue;
      }
      todo.push_back(high(a));
      todo.push_back(low(a));
    }
    return res;
  }

  /// Internal and terminal nodes reachable from the given roots.
  std::vector<dd_ref> reachable(std::span<const dd_ref> roots) const {
    std::vector<dd_ref> res;
    std::unordered_set<std::uint32_t> seen;
    std::vector<dd_ref> todo(roots.rbegin(), roots.rend());
    while (!todo.empty()) {
      dd_ref a = todo.back();
      todo.pop_back();
      if (!seen.insert(a.id).second) continue;
      res.push_back(a);
      if (!is_terminal(a)) {
        todo.push_back(high(a));
        todo.push_back(low(a));
      }
    }
    return res;
  }

  std::size_t node_count(dd_ref r) const { return reachable(std::span<const dd_ref>(&r, 1)).size(); }

  void clear_caches() {
    apply_cache_.clear();
    map_cache_.clear();
  }

  /// Graphviz rendering of the diagrams below `roots`.  `var_name` and
  /// `terminal_name` may be empty.
  void dump_dot(std::ostream& os, std::span<const dd_ref> roots,
                const std::function<std::string(std::uint32_t)>& var_name = {},
                const std::function<std::string(value_type)>& terminal_name = {}) const {
    os << "digraph mtbdd {\n";
    for (std::size_t i = 0; i < roots.size(); ++i)
      os << "  r" << i << " [shape=plaintext,label=\"root " << i << "\"];\n  r" << i << " -> n"
         << roots[i].id << ";\n";
    for (dd_ref n : reachable(roots)) {
      if (is_terminal(n)) {
        os << "  n" << n.id << " [shape=box,label=\""
           << (terminal_name ? terminal_name(value(n)) : std::to_string(value(n))) << "\"];\n";
        continue;
      }
      os << "  n" << n.id << " [label=\""
         << (var_name ? var_name(level(n)) : std::to_string(level(n))) << "\"];\n";
      os << "  n" << n.id << " -> n" << low(n).id << " [style=dashed];\n";
      os << "  n" << n.id << " -> n" << high(n).id << ";\n";
    }
    os << "}\n";
  }

 private:
  struct node {
    std::uint32_t level;
    std::uint32_t low;
    std::uint32_t high;
    value_type value;
  };

  const node& at(dd_ref r) const {
    if (r.id >= nodes_.size()) throw std::out_of_range("node not in this manager");
    return nodes_[r.id];
  }

  dd_ref make(std::uint32_t level, dd_ref low, dd_ref high) {
    if (low == high) return low;
    detail::triple_key key{level, low.id, high.id};
    auto [it, inserted] = unique_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back({level, low.id, high.id, 0});
    return dd_ref{it->second};
  }

  std::pair<dd_ref, dd_ref> cofactors(dd_ref r, std::uint32_t top) const {
    if (level(r) != top) return {r, r};
    return {low(r), high(r)};
  }

  dd_ref apply_rec(std::uint32_t op, const binary_fn& fn, dd_ref x, dd_ref y) {
    if (is_terminal(x) && is_terminal(y)) return terminal(fn(value(x), value(y)));
    detail::triple_key key{op, x.id, y.id};
    if (auto it = apply_cache_.find(key); it != apply_cache_.end()) return dd_ref{it->second};
    std::uint32_t top = std::min(level(x), level(y));
    auto [x0, x1] = cofactors(x, top);
    auto [y0, y1] = cofactors(y, top);
    dd_ref lo = apply_rec(op, fn, x0, y0);
    dd_ref hi = apply_rec(op, fn, x1, y1);
    dd_ref res = make(top, lo, hi);
    apply_cache_.emplace(key, res.id);
    return res;
  }

  dd_ref map_rec(std::uint32_t op, const unary_fn& fn, dd_ref x) {
    if (is_terminal(x)) return terminal(fn(value(x)));
    std::pair<std::uint32_t, std::uint32_t> key{op, x.id};
    if (auto it = map_cache_.find(key); it != map_cache_.end()) return dd_ref{it->second};
    dd_ref lo = map_rec(op, fn, low(x));
    dd_ref hi = map_rec(op, fn, high(x));
    dd_ref res = make(level(x), lo, hi);
    map_cache_.emplace(key, res.id);
    return res;
  }

  std::vector<node> nodes_;
  // Walk stamps: a node was visited by the current walk iff its stamp
  // equals epoch_.  Makes const traversals non-reentrant.
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t epoch_ = 0;

  void begin_walk() const {
    stamp_.resize(nodes_.size(), 0);
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }

  bool first_visit(dd_ref a) const {
    if (stamp_[a.id] == epoch_) return false;
    stamp_[a.id] = epoch_;
    return true;
  }

  std::unordered_map<detail::triple_key, std::uint32_t, detail::triple_key_hash> unique_;
  std::unordered_map<value_type, std::uint32_t> terminals_;
  std::vector<binary_fn> binary_fns_;
  std::vector<unary_fn> unary_fns_;
  std::unordered_map<detail::triple_key, std::uint32_t, detail::triple_key_hash> apply_cache_;
  std::unordered_map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t, detail::pair_key_hash>
      map_cache_;
};

/// Ordered set of proposition names; the position of a name is its level.
class var_order {
 public:
  var_order() = default;
  explicit var_order(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::uint32_t i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], i).second)
        throw std::invalid_argument("duplicate proposition '" + names_[i] + "'");
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t level) const { return names_.at(level); }

  std::optional<std::uint32_t> level_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace oblig
