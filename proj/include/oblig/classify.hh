#pragma once

// Syntactic fragments of LTL: bottom (B), guarantee (G), safety (S) and
// obligation (O).
//
//   B ::= 0 | 1 | p | !B | B&B | B|B | B<->B | B xor B | B->B | XB
//   G ::= B | !S | G&G | G|G | S->G | XG | FG | G U G | G M G
//   S ::= B | !G | S&S | S|S | G->S | XS | GS | S R S | S W S
//   O ::= G | S | !O | O&O | O|O | O<->O | O xor O | O->O | XO
//       | O U G | O R S | S W O | G M O

#include <oblig/formula.hh>

#include <optional>
#include <string>
#include <vector>

namespace oblig {

struct fragment_set {
  bool bottom = false;
  bool guarantee = false;
  bool safety = false;
  bool obligation = false;

  bool operator==(const fragment_set&) const = default;
};

/// Most specific class name: "B", "G", "S", "O" or "none".
inline std::string most_specific(const fragment_set& c) {
  if (c.bottom) return "B";
  if (c.guarantee) return "G";
  if (c.safety) return "S";
  if (c.obligation) return "O";
  return "none";
}

inline std::string to_string(const fragment_set& c) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  return std::string("B:") + yn(c.bottom) + " G:" + yn(c.guarantee) + " S:" + yn(c.safety) +
         " O:" + yn(c.obligation);
}

/// Memoizing classifier bound to one store.  Formulas created in the store
/// after construction are handled as well.
class classifier {
 public:
  explicit classifier(const formula_store& fs) : fs_(fs) {}

  fragment_set operator()(formula root) {
    if (root.id < memo_.size() && memo_[root.id]) return *memo_[root.id];
    if (memo_.size() < fs_.size()) memo_.resize(fs_.size());
    // Children always have smaller ids than their parent, so a post-order
    // walk with an explicit stack is enough.
    std::vector<std::pair<formula, bool>> todo{{root, false}};
    while (!todo.empty()) {
      auto [f, expanded] = todo.back();
      todo.pop_back();
      if (memo_[f.id]) continue;
      if (!expanded) {
        todo.push_back({f, true});
        for (unsigned i = 0; i < fs_.arity(f); ++i) {
          formula c = fs_.child(f, i);
          if (!memo_[c.id]) todo.push_back({c, false});
        }
        continue;
      }
      memo_[f.id] = compute(f);
    }
    return *memo_[root.id];
  }

 private:
  fragment_set get(formula f) const { return *memo_[f.id]; }

  fragment_set compute(formula f) const {
    fragment_set r;
    op k = fs_.kind(f);
    switch (k) {
      case op::ff:
      case op::tt:
      case op::ap:
        return {true, true, true, true};
      case op::Not: {
        fragment_set c = get(fs_.child(f));
        r.bottom = c.bottom;
        r.guarantee = c.bottom || c.safety;
        r.safety = c.bottom || c.guarantee;
        r.obligation = c.obligation;
        break;
      }
      case op::X: {
        fragment_set c = get(fs_.child(f));
        r = c;
        break;
      }
      case op::F: {
        fragment_set c = get(fs_.child(f));
        r.guarantee = c.guarantee;
        break;
      }
      case op::G: {
        fragment_set c = get(fs_.child(f));
        r.safety = c.safety;
        break;
      }
      default: {
        fragment_set a = get(fs_.left(f));
        fragment_set b = get(fs_.right(f));
        switch (k) {
          case op::And:
          case op::Or:
            r.bottom = a.bottom && b.bottom;
            r.guarantee = a.guarantee && b.guarantee;
            r.safety = a.safety && b.safety;
            r.obligation = a.obligation && b.obligation;
            break;
          case op::Implies:
            r.bottom = a.bottom && b.bottom;
            r.guarantee = a.safety && b.guarantee;
            r.safety = a.guarantee && b.safety;
            r.obligation = a.obligation && b.obligation;
            break;
          case op::Equiv:
          case op::Xor:
            r.bottom = a.bottom && b.bottom;
            r.obligation = a.obligation && b.obligation;
            break;
          case op::U:
            r.guarantee = a.guarantee && b.guarantee;
            r.obligation = a.obligation && b.guarantee;
            break;
          case op::M:
            r.guarantee = a.guarantee && b.guarantee;
            r.obligation = a.guarantee && b.obligation;
            break;
          case op::R:
            r.safety = a.safety && b.safety;
            r.obligation = a.obligation && b.safety;
            break;
          case op::W:
            r.safety = a.safety && b.safety;
            r.obligation = a.safety && b.obligation;
            break;
          default:
            break;
        }
      }
    }
    // B is included in G and S, which are both included in O.
    r.guarantee |= r.bottom;
    r.safety |= r.bottom;
    r.obligation |= r.guarantee || r.safety;
    return r;
  }

  const formula_store& fs_;
  std::vector<std::optional<fragment_set>> memo_;
};

inline fragment_set classify(const formula_store& fs, formula f) {
  classifier c(fs);
  return c(f);
}

/// A minimal subformula of `f` that is not a syntactic obligation: all of
/// its children are obligations, but it is not.  Empty if `f` is an
/// obligation.
inline std::optional<formula> offending_subformula(const formula_store& fs, formula f) {
  classifier c(fs);
  if (c(f).obligation) return std::nullopt;
  for (;;) {
    bool descended = false;
    for (unsigned i = 0; i < fs.arity(f); ++i) {
      formula sub = fs.child(f, i);
      if (!c(sub).obligation) {
        f = sub;
        descended = true;
        break;
      }
    }
    if (!descended) return f;
  }
}

}  // namespace oblig
