#pragma once

// Ultimately periodic words u·v^ω and direct LTL evaluation over them.

#include <oblig/formula.hh>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace oblig {

/// A full assignment of up to 64 propositions; bit i is the value of the
/// i-th declared proposition.
using letter = std::uint64_t;

struct lasso_word {
  std::vector<std::string> props;
  std::vector<letter> prefix;
  std::vector<letter> cycle;

  std::size_t length() const { return prefix.size() + cycle.size(); }

  /// Letter at a position of the unrolled word.
  letter at(std::size_t pos) const {
    if (pos < prefix.size()) return prefix[pos];
    return cycle[(pos - prefix.size()) % cycle.size()];
  }

  void validate() const {
    if (cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    if (props.size() > 64) throw std::invalid_argument("at most 64 propositions per word");
    letter mask = props.size() == 64 ? ~letter{0} : (letter{1} << props.size()) - 1;
    for (letter l : prefix)
      if (l & ~mask) throw std::invalid_argument("letter binds undeclared propositions");
    for (letter l : cycle)
      if (l & ~mask) throw std::invalid_argument("letter binds undeclared propositions");
  }
};

class unbound_atom : public std::runtime_error {
 public:
  explicit unbound_atom(const std::string& name)
      : std::runtime_error("atom '" + name + "' is not bound by the word") {}
};

/// Evaluates `root` at position 0 of the word by fixpoint iteration over
/// the |u|+|v| distinct positions.
inline bool eval_lasso(const formula_store& fs, formula root, const lasso_word& w) {
  w.validate();
  const std::size_t n = w.length();
  const std::size_t loop = w.prefix.size();
  auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : loop; };

  std::unordered_map<std::string, unsigned> prop_index;
  for (unsigned i = 0; i < w.props.size(); ++i) prop_index.emplace(w.props[i], i);

  // Subformula values indexed by formula id, computed bottom-up.  Child ids
  // are smaller than parent ids, so sorting the DAG nodes by id yields a
  // valid evaluation order.
  std::vector<formula> order;
  {
    std::vector<bool> seen(fs.size(), false);
    std::vector<formula> todo{root};
    while (!todo.empty()) {
      formula f = todo.back();
      todo.pop_back();
      if (seen[f.id]) continue;
      seen[f.id] = true;
      order.push_back(f);
      for (unsigned i = 0; i < fs.arity(f); ++i) todo.push_back(fs.child(f, i));
    }
    std::sort(order.begin(), order.end());
  }

  std::unordered_map<std::uint32_t, std::vector<char>> val;
  for (formula f : order) {
    std::vector<char> v(n);
    op k = fs.kind(f);
    auto sub = [&](unsigned i) -> const std::vector<char>& { return val.at(fs.child(f, i).id); };
    // Iterates `step` to a fixpoint starting from `init`.
    auto fixpoint = [&](bool init, auto step) {
      std::fill(v.begin(), v.end(), init);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = n; i-- > 0;) {
          char nv = step(i);
          if (nv != v[i]) {
            v[i] = nv;
            changed = true;
          }
        }
      }
    };
    switch (k) {
      case op::ff: break;
      case op::tt: std::fill(v.begin(), v.end(), 1); break;
      case op::ap: {
        auto it = prop_index.find(fs.atom_name(f));
        if (it == prop_index.end()) throw unbound_atom(fs.atom_name(f));
        for (std::size_t i = 0; i < n; ++i) v[i] = (w.at(i) >> it->second) & 1;
        break;
      }
      case op::Not:
        for (std::size_t i = 0; i < n; ++i) v[i] = !sub(0)[i];
        break;
      case op::And:
        for (std::size_t i = 0; i < n; ++i) v[i] = sub(0)[i] && sub(1)[i];
        break;
      case op::Or:
        for (std::size_t i = 0; i < n; ++i) v[i] = sub(0)[i] || sub(1)[i];
        break;
      case op::Implies:
        for (std::size_t i = 0; i < n; ++i) v[i] = !sub(0)[i] || sub(1)[i];
        break;
      case op::Equiv:
        for (std::size_t i = 0; i < n; ++i) v[i] = sub(0)[i] == sub(1)[i];
        break;
      case op::Xor:
        for (std::size_t i = 0; i < n; ++i) v[i] = sub(0)[i] != sub(1)[i];
        break;
      case op::X:
        for (std::size_t i = 0; i < n; ++i) v[i] = sub(0)[succ(i)];
        break;
      case op::F: {
        const auto& a = sub(0);
        fixpoint(false, [&](std::size_t i) -> char { return a[i] || v[succ(i)]; });
        break;
      }
      case op::G: {
        const auto& a = sub(0);
        fixpoint(true, [&](std::size_t i) -> char { return a[i] && v[succ(i)]; });
        break;
      }
      case op::U: {
        const auto &a = sub(0), &b = sub(1);
        fixpoint(false, [&](std::size_t i) -> char { return b[i] || (a[i] && v[succ(i)]); });
        break;
      }
      case op::W: {
        const auto &a = sub(0), &b = sub(1);
        fixpoint(true, [&](std::size_t i) -> char { return b[i] || (a[i] && v[succ(i)]); });
        break;
      }
      case op::M: {
        const auto &a = sub(0), &b = sub(1);
        fixpoint(false, [&](std::size_t i) -> char { return b[i] && (a[i] || v[succ(i)]); });
        break;
      }
      case op::R: {
        const auto &a = sub(0), &b = sub(1);
        fixpoint(true, [&](std::size_t i) -> char { return b[i] && (a[i] || v[succ(i)]); });
        break;
      }
    }
    val.emplace(f.id, std::move(v));
  }
  return val.at(root.id)[0];
}

}  // namespace oblig
