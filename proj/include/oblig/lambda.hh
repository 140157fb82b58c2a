#pragma once

// Three-valued acceptance labeling of obligation states.
//
// Strong operators (F, U, M) are rejecting, weak operators (G, W, R) are
// accepting, and purely propositional parts are a wildcard that is
// ignored when combined.  The combination rules for the wildcard are
// fixed by the table in apply_mark() below.

#include <oblig/formula.hh>

#include <optional>
#include <stdexcept>
#include <vector>

namespace oblig {

enum class accept_mark : std::uint8_t { bot, top, wild };

inline const char* to_string(accept_mark m) {
  switch (m) {
    case accept_mark::bot: return "bot";
    case accept_mark::top: return "top";
    case accept_mark::wild: return "*";
  }
  return "?";
}

inline accept_mark mark_of(bool b) { return b ? accept_mark::top : accept_mark::bot; }

inline accept_mark negate(accept_mark m) {
  if (m == accept_mark::wild) return m;
  return m == accept_mark::top ? accept_mark::bot : accept_mark::top;
}

/// Lifts a Boolean operator to marks.
inline accept_mark apply_mark(op k, accept_mark a, accept_mark b) {
  constexpr accept_mark W = accept_mark::wild;
  if (a == W && b == W) return W;
  if (a != W && b != W) {
    bool x = a == accept_mark::top, y = b == accept_mark::top;
    switch (k) {
      case op::And: return mark_of(x && y);
      case op::Or: return mark_of(x || y);
      case op::Implies: return mark_of(!x || y);
      case op::Equiv: return mark_of(x == y);
      case op::Xor: return mark_of(x != y);
      default: throw std::logic_error("not a binary Boolean operator");
    }
  }
  // Exactly one side is a wildcard.
  accept_mark known = a == W ? b : a;
  switch (k) {
    case op::And:
    case op::Or:
      return known;
    case op::Implies:
      // a -> * behaves like !a; * -> b behaves like b.
      return a == W ? b : negate(a);
    case op::Equiv:
    case op::Xor:
      return accept_mark::top;
    default:
      throw std::logic_error("not a binary Boolean operator");
  }
}

/// Memoizing evaluator of the acceptance labeling.
class acceptance_labeler {
 public:
  explicit acceptance_labeler(const formula_store& fs) : fs_(fs) {}

  accept_mark operator()(formula root) {
    if (root.id < memo_.size() && memo_[root.id]) return *memo_[root.id];
    if (memo_.size() < fs_.size()) memo_.resize(fs_.size());
    std::vector<std::pair<formula, bool>> todo{{root, false}};
    while (!todo.empty()) {
      auto [f, expanded] = todo.back();
      todo.pop_back();
      if (memo_[f.id]) continue;
      op k = fs_.kind(f);
      // Only Boolean operators and X need the marks of their children.
      bool needs_children = is_boolean_operator(k) || k == op::X;
      if (needs_children && !expanded) {
        todo.push_back({f, true});
        for (unsigned i = 0; i < fs_.arity(f); ++i) todo.push_back({fs_.child(f, i), false});
        continue;
      }
      memo_[f.id] = compute(f);
    }
    return *memo_[root.id];
  }

 private:
  accept_mark compute(formula f) const {
    op k = fs_.kind(f);
    switch (k) {
      case op::ff:
      case op::F:
      case op::U:
      case op::M:
        return accept_mark::bot;
      case op::tt:
      case op::G:
      case op::W:
      case op::R:
        return accept_mark::top;
      case op::ap:
        return accept_mark::wild;
      case op::X:
        return *memo_[fs_.child(f).id];
      case op::Not:
        return negate(*memo_[fs_.child(f).id]);
      default:
        return apply_mark(k, *memo_[fs_.left(f).id], *memo_[fs_.right(f).id]);
    }
  }

  const formula_store& fs_;
  std::vector<std::optional<accept_mark>> memo_;
};

inline accept_mark lambda(const formula_store& fs, formula f) {
  acceptance_labeler l(fs);
  return l(f);
}

/// Two-valued coercion: wildcards are rejecting.
inline bool lambda_prime(accept_mark m) { return m == accept_mark::top; }

}  // namespace oblig
