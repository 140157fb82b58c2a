#pragma once

// Hash-consed LTL formulas.
//
// Every formula lives in a formula_store and is referred to by a small
// integer handle.  The constructors of the store perform the only
// simplifications this library ever applies on its own: constant
// absorption (true/false never occur as operands) and double-negation
// elimination.  Commutative binary operators store their operands
// sorted by identity so that a&b and b&a are the same node.

#include <oblig/detail/hash.hh>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oblig {

enum class op : std::uint8_t {
  ff,
  tt,
  ap,
  Not,
  And,
  Or,
  Implies,
  Equiv,
  Xor,
  X,
  F,
  G,
  U,
  W,
  R,
  M,
};

/// Handle to a node of a formula_store.  Ids 0 and 1 are always false and
/// true.
struct formula {
  std::uint32_t id = 0;

  static constexpr formula ff() { return formula{0}; }
  static constexpr formula tt() { return formula{1}; }

  constexpr bool is_ff() const { return id == 0; }
  constexpr bool is_tt() const { return id == 1; }
  constexpr bool is_constant() const { return id <= 1; }

  friend constexpr bool operator==(formula, formula) = default;
  friend constexpr auto operator<=>(formula, formula) = default;
};

struct formula_hash {
  std::size_t operator()(formula f) const noexcept { return detail::hash_mix(f.id); }
};

constexpr bool is_unary(op k) {
  return k == op::Not || k == op::X || k == op::F || k == op::G;
}

constexpr bool is_binary(op k) {
  return k >= op::And && k != op::X && k != op::F && k != op::G;
}

constexpr bool is_boolean_operator(op k) {
  return k >= op::Not && k <= op::Xor;
}

constexpr bool is_temporal_operator(op k) { return k >= op::X; }

constexpr bool is_commutative(op k) {
  return k == op::And || k == op::Or || k == op::Equiv || k == op::Xor;
}

class formula_store {
 public:
  formula_store() {
    nodes_.push_back({op::ff, 0, 0});
    nodes_.push_back({op::tt, 0, 0});
  }

  formula_store(const formula_store&) = delete;
  formula_store& operator=(const formula_store&) = delete;

  std::size_t size() const { return nodes_.size(); }

  op kind(formula f) const { return node_at(f).kind; }
  bool is(formula f, op k) const { return kind(f) == k; }

  formula child(formula f, unsigned i = 0) const {
    const node& n = node_at(f);
    if (n.kind == op::ff || n.kind == op::tt || n.kind == op::ap)
      throw std::logic_error("formula has no children");
    if (i == 0) return formula{n.a};
    if (i == 1 && is_binary(n.kind)) return formula{n.b};
    throw std::out_of_range("child index out of range");
  }

  formula left(formula f) const { return child(f, 0); }
  formula right(formula f) const { return child(f, 1); }

  unsigned arity(formula f) const {
    op k = kind(f);
    if (k == op::ff || k == op::tt || k == op::ap) return 0;
    return is_unary(k) ? 1 : 2;
  }

  /// Index of an atomic proposition in registration order.
  std::uint32_t atom_index(formula f) const {
    const node& n = node_at(f);
    if (n.kind != op::ap) throw std::logic_error("not an atomic proposition");
    return n.a;
  }

  const std::string& atom_name(formula f) const { return atom_names_[atom_index(f)]; }

  const std::vector<std::string>& atom_names() const { return atom_names_; }

  std::uint32_t atom_count() const { return static_cast<std::uint32_t>(atom_names_.size()); }

  formula atom_by_index(std::uint32_t index) const { return atom_formulas_.at(index); }

  /// Returns the atom registered under `name`, registering it if needed.
  formula ap(std::string_view name) {
    auto it = atom_by_name_.find(std::string(name));
    if (it != atom_by_name_.end()) return it->second;
    auto index = static_cast<std::uint32_t>(atom_names_.size());
    atom_names_.emplace_back(name);
    formula f = intern(op::ap, index, 0);
    atom_formulas_.push_back(f);
    atom_by_name_.emplace(atom_names_.back(), f);
    return f;
  }

  std::optional<formula> find_ap(std::string_view name) const;

  // Smart constructors.

  formula not_(formula f) {
    if (f.is_tt()) return formula::ff();
    if (f.is_ff()) return formula::tt();
    if (kind(f) == op::Not) return child(f);
    return intern(op::Not, f.id, 0);
  }

  formula and_(formula a, formula b) {
    if (a.is_ff() || b.is_ff()) return formula::ff();
    if (a.is_tt()) return b;
    if (b.is_tt()) return a;
    return intern_commutative(op::And, a, b);
  }

  formula or_(formula a, formula b) {
    if (a.is_tt() || b.is_tt()) return formula::tt();
    if (a.is_ff()) return b;
    if (b.is_ff()) return a;
    return intern_commutative(op::Or, a, b);
  }

  formula implies(formula a, formula b) {
    if (a.is_ff() || b.is_tt()) return formula::tt();
    if (a.is_tt()) return b;
    if (b.is_ff()) return not_(a);
    return intern(op::Implies, a.id, b.id);
  }

  formula equiv(formula a, formula b) {
    if (a.is_tt()) return b;
    if (b.is_tt()) return a;
    if (a.is_ff()) return not_(b);
    if (b.is_ff()) return not_(a);
    return intern_commutative(op::Equiv, a, b);
  }

  formula xor_(formula a, formula b) {
    if (a.is_ff()) return b;
    if (b.is_ff()) return a;
    if (a.is_tt()) return not_(b);
    if (b.is_tt()) return not_(a);
    return intern_commutative(op::Xor, a, b);
  }

  formula next(formula f) {
    if (f.is_constant()) return f;
    return intern(op::X, f.id, 0);
  }

  formula eventually(formula f) {
    if (f.is_constant()) return f;
    return intern(op::F, f.id, 0);
  }

  formula always(formula f) {
    if (f.is_constant()) return f;
    return intern(op::G, f.id, 0);
  }

  formula until(formula a, formula b) {
    if (b.is_constant()) return b;
    if (a.is_tt()) return eventually(b);
    if (a.is_ff()) return b;
    return intern(op::U, a.id, b.id);
  }

  formula weak_until(formula a, formula b) {
    if (b.is_tt() || a.is_tt()) return formula::tt();
    if (b.is_ff()) return always(a);
    if (a.is_ff()) return b;
    return intern(op::W, a.id, b.id);
  }

  formula release(formula a, formula b) {
    if (b.is_constant()) return b;
    if (a.is_tt()) return b;
    if (a.is_ff()) return always(b);
    return intern(op::R, a.id, b.id);
  }

  formula strong_release(formula a, formula b) {
    if (a.is_ff() || b.is_ff()) return formula::ff();
    if (b.is_tt()) return eventually(a);
    if (a.is_tt()) return b;
    return intern(op::M, a.id, b.id);
  }

  /// Builds a formula of kind `k` from operands, going through the smart
  /// constructors.  `b` is ignored for unary operators.
  formula make(op k, formula a, formula b = formula::ff()) {
    switch (k) {
      case op::ff: return formula::ff();
      case op::tt: return formula::tt();
      case op::ap: throw std::logic_error("use ap() to build atoms");
      case op::Not: return not_(a);
      case op::And: return and_(a, b);
      case op::Or: return or_(a, b);
      case op::Implies: return implies(a, b);
      case op::Equiv: return equiv(a, b);
      case op::Xor: return xor_(a, b);
      case op::X: return next(a);
      case op::F: return eventually(a);
      case op::G: return always(a);
      case op::U: return until(a, b);
      case op::W: return weak_until(a, b);
      case op::R: return release(a, b);
      case op::M: return strong_release(a, b);
    }
    throw std::logic_error("unknown operator");
  }

  /// Left-folded conjunction; true for an empty list.
  formula and_all(const std::vector<formula>& fs) {
    formula res = formula::tt();
    for (formula f : fs) res = and_(res, f);
    return res;
  }

  formula or_all(const std::vector<formula>& fs) {
    formula res = formula::ff();
    for (formula f : fs) res = or_(res, f);
    return res;
  }

  /// X applied n times.
  formula next_n(formula f, unsigned n) {
    for (unsigned i = 0; i < n; ++i) f = next(f);
    return f;
  }

 private:
  struct node {
    op kind;
    std::uint32_t a;
    std::uint32_t b;
  };

  const node& node_at(formula f) const {
    if (f.id >= nodes_.size()) throw std::out_of_range("formula id not in this store");
    return nodes_[f.id];
  }

  formula intern(op k, std::uint32_t a, std::uint32_t b) {
    detail::triple_key key{static_cast<std::uint32_t>(k), a, b};
    auto [it, inserted] =
        table_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back({k, a, b});
    return formula{it->second};
  }

  formula intern_commutative(op k, formula a, formula b) {
    if (b < a) std::swap(a, b);
    return intern(k, a.id, b.id);
  }

  std::vector<node> nodes_;
  std::unordered_map<detail::triple_key, std::uint32_t, detail::triple_key_hash> table_;
  std::vector<std::string> atom_names_;
  std::vector<formula> atom_formulas_;
  std::unordered_map<std::string, formula> atom_by_name_;
};

inline std::optional<formula> formula_store::find_ap(std::string_view name) const {
  auto it = atom_by_name_.find(std::string(name));
  if (it == atom_by_name_.end()) return std::nullopt;
  return it->second;
}

/// Atoms occurring in `f`, ordered by registration in the store.
inline std::vector<formula> atoms_of(const formula_store& fs, formula root) {
  std::vector<bool> seen(fs.size(), false);
  std::vector<bool> present(fs.atom_count(), false);
  std::vector<formula> todo{root};
  while (!todo.empty()) {
    formula f = todo.back();
    todo.pop_back();
    if (seen[f.id]) continue;
    seen[f.id] = true;
    if (fs.is(f, op::ap)) {
      present[fs.atom_index(f)] = true;
      continue;
    }
    for (unsigned i = 0; i < fs.arity(f); ++i) todo.push_back(fs.child(f, i));
  }
  std::vector<formula> res;
  for (std::uint32_t i = 0; i < present.size(); ++i)
    if (present[i]) res.push_back(fs.atom_by_index(i));
  return res;
}

/// Number of distinct nodes in the DAG of `f`.
inline std::size_t dag_size(const formula_store& fs, formula root) {
  std::vector<bool> seen(fs.size(), false);
  std::vector<formula> todo{root};
  std::size_t count = 0;
  while (!todo.empty()) {
    formula f = todo.back();
    todo.pop_back();
    if (seen[f.id]) continue;
    seen[f.id] = true;
    ++count;
    for (unsigned i = 0; i < fs.arity(f); ++i) todo.push_back(fs.child(f, i));
  }
  return count;
}

namespace detail {

inline int print_precedence(op k) {
  switch (k) {
    case op::Equiv:
    case op::Xor: return 1;
    case op::Implies: return 2;
    case op::Or: return 3;
    case op::And: return 4;
    case op::U:
    case op::W:
    case op::R:
    case op::M: return 5;
    default: return 6;
  }
}

inline const char* operator_symbol(op k) {
  switch (k) {
    case op::Not: return "!";
    case op::And: return " & ";
    case op::Or: return " | ";
    case op::Implies: return " -> ";
    case op::Equiv: return " <-> ";
    case op::Xor: return " xor ";
    case op::X: return "X";
    case op::F: return "F";
    case op::G: return "G";
    case op::U: return " U ";
    case op::W: return " W ";
    case op::R: return " R ";
    case op::M: return " M ";
    default: return "";
  }
}

inline void print_rec(const formula_store& fs, formula f, std::string& out) {
  op k = fs.kind(f);
  switch (k) {
    case op::ff: out += "0"; return;
    case op::tt: out += "1"; return;
    case op::ap: out += fs.atom_name(f); return;
    default: break;
  }
  auto wrap = [&](formula sub, bool parens) {
    if (parens) out += '(';
    print_rec(fs, sub, out);
    if (parens) out += ')';
  };
  if (is_unary(k)) {
    out += operator_symbol(k);
    formula sub = fs.child(f);
    bool parens = is_binary(fs.kind(sub));
    // "X a" rather than "Xa", which would lex as a single identifier.
    if (k != op::Not && !parens) out += ' ';
    wrap(sub, parens);
    return;
  }
  // Binary children are always parenthesized; this keeps the output
  // unambiguous regardless of associativity.
  formula l = fs.left(f), r = fs.right(f);
  wrap(l, is_binary(fs.kind(l)));
  out += operator_symbol(k);
  wrap(r, is_binary(fs.kind(r)));
}

}  // namespace detail

/// Renders `f` in the concrete syntax accepted by parse().
inline std::string to_string(const formula_store& fs, formula f) {
  std::string out;
  detail::print_rec(fs, f, out);
  return out;
}

}  // namespace oblig
