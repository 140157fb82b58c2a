#pragma once

// Scalable benchmark families.

#include <oblig/formula.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblig {

class unknown_pattern : public std::invalid_argument {
 public:
  explicit unknown_pattern(const std::string& name) : std::invalid_argument("unknown pattern '" + name + "'") {}
};

inline const std::vector<std::string>& pattern_names() {
  static const std::vector<std::string> names = {
      "and-f",     "or-g",      "gh-q",      "u-left",    "u-right",   "r-left",
      "r-right",   "tv-f1",     "tv-f2",     "tv-g1",     "tv-g2",     "ccj-alpha",
      "ccj-beta",  "ccj-beta-prime",         "kr-n-delta1",
  };
  return names;
}

/// Most specific fragment of each family: "G", "S" or "O".
inline std::string pattern_class(const std::string& name) {
  if (name == "and-f" || name == "u-left" || name == "u-right" || name.rfind("ccj-", 0) == 0) return "G";
  if (name == "or-g" || name == "r-left" || name == "r-right" || name.rfind("tv-", 0) == 0) return "S";
  if (name == "gh-q" || name == "kr-n-delta1") return "O";
  throw unknown_pattern(name);
}

namespace detail {

inline std::vector<formula> numbered(formula_store& fs, const std::string& base, unsigned from, unsigned to) {
  std::vector<formula> v;
  for (unsigned i = from; i <= to; ++i) v.push_back(fs.ap(base + std::to_string(i)));
  return v;
}

/// F(x1 & F(x2 & ... F(xn)))
inline formula nested_f(formula_store& fs, const std::vector<formula>& xs) {
  formula r = fs.eventually(xs.back());
  for (std::size_t i = xs.size() - 1; i-- > 0;) r = fs.eventually(fs.and_(xs[i], r));
  return r;
}

/// x op X(x op X(... op X x)) with n X's.
inline formula nested_x(formula_store& fs, op k, formula x, unsigned n) {
  formula r = x;
  for (unsigned i = 0; i < n; ++i) r = fs.make(k, x, fs.next(r));
  return r;
}

/// x op Xx op XXx ... op X^n x
inline formula flat_x(formula_store& fs, op k, formula x, unsigned n) {
  formula r = x;
  for (unsigned i = 1; i <= n; ++i) r = fs.make(k, r, fs.next_n(x, i));
  return r;
}

/// Worst-case family with two alphabets a_i/b_i, separators "sharp" and
/// "dollar", one proposition per letter.  Conjuncts, in order:
///   sharp & X(a1 | b1 | dollar)
///   G(/\_{i<n} ((ai | bi) -> X(a{i+1} | b{i+1})))
///   G((an | bn) -> X(sharp & X(a1 | b1 | dollar | G sharp)))
///   (!dollar) W (dollar & X((a1 | b1) & X^k G sharp)) & F sharp
///   F(sharp & X((!sharp & \/_i ((ai & F(dollar & F ai)) | (bi & F(dollar & F bi)))) U sharp))
///   G((sharp | dollar) -> !\/_i (ai | bi)) & G(sharp -> !dollar) & G(/\_i (ai -> !bi))
///   G(/\_{x<y} !(x & y)) over all 2n+2 propositions
inline formula kr_n_delta1(formula_store& fs, unsigned n, unsigned k) {
  formula sh = fs.ap("sharp"), dl = fs.ap("dollar");
  auto a = numbered(fs, "a", 1, n);
  auto b = numbered(fs, "b", 1, n);
  auto ab = [&](unsigned i) { return fs.or_(a[i], b[i]); };
  std::vector<formula> c;
  c.push_back(fs.and_(sh, fs.next(fs.or_(ab(0), dl))));
  {
    std::vector<formula> chain;
    for (unsigned i = 0; i + 1 < n; ++i) chain.push_back(fs.implies(ab(i), fs.next(ab(i + 1))));
    c.push_back(fs.always(fs.and_all(chain)));
  }
  c.push_back(fs.always(fs.implies(
      ab(n - 1), fs.next(fs.and_(sh, fs.next(fs.or_(fs.or_(ab(0), dl), fs.always(sh))))))));
  c.push_back(fs.and_(
      fs.weak_until(fs.not_(dl), fs.and_(dl, fs.next(fs.and_(ab(0), fs.next_n(fs.always(sh), k))))),
      fs.eventually(sh)));
  {
    std::vector<formula> alts;
    for (unsigned i = 0; i < n; ++i) {
      alts.push_back(fs.and_(a[i], fs.eventually(fs.and_(dl, fs.eventually(a[i])))));
      alts.push_back(fs.and_(b[i], fs.eventually(fs.and_(dl, fs.eventually(b[i])))));
    }
    formula body = fs.until(fs.and_(fs.not_(sh), fs.or_all(alts)), sh);
    c.push_back(fs.eventually(fs.and_(sh, fs.next(body))));
  }
  {
    std::vector<formula> letters, excl;
    for (unsigned i = 0; i < n; ++i) {
      letters.push_back(ab(i));
      excl.push_back(fs.implies(a[i], fs.not_(b[i])));
    }
    c.push_back(fs.always(fs.implies(fs.or_(sh, dl), fs.not_(fs.or_all(letters)))));
    c.push_back(fs.always(fs.implies(sh, fs.not_(dl))));
    c.push_back(fs.always(fs.and_all(excl)));
  }
  {
    std::vector<formula> all{sh, dl};
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::vector<formula> pairs;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) pairs.push_back(fs.not_(fs.and_(all[i], all[j])));
    c.push_back(fs.always(fs.and_all(pairs)));
  }
  return fs.and_all(c);
}

}  // namespace detail

/// Instance n of a family.  `k` only affects kr-n-delta1 and defaults to
/// n there.
inline formula gen_pattern(formula_store& fs, const std::string& name, unsigned n,
                           std::optional<unsigned> k = std::nullopt) {
  if (n < 1) throw std::out_of_range("pattern parameter must be at least 1");
  if (n > 4096) throw std::out_of_range("pattern parameter too large");
  using detail::numbered;
  if (name == "and-f" || name == "or-g") {
    bool is_and = name == "and-f";
    std::vector<formula> parts;
    for (formula p : numbered(fs, "p", 1, n)) parts.push_back(is_and ? fs.eventually(p) : fs.always(p));
    return is_and ? fs.and_all(parts) : fs.or_all(parts);
  }
  if (name == "gh-q") {
    auto p = numbered(fs, "p", 1, n + 1);
    std::vector<formula> parts;
    for (unsigned i = 0; i < n; ++i) parts.push_back(fs.or_(fs.eventually(p[i]), fs.always(p[i + 1])));
    return fs.and_all(parts);
  }
  if (name == "u-left" || name == "r-left") {
    op k2 = name[0] == 'u' ? op::U : op::R;
    auto p = numbered(fs, "p", 1, n);
    formula r = p[0];
    for (unsigned i = 1; i < n; ++i) r = fs.make(k2, r, p[i]);
    return r;
  }
  if (name == "u-right" || name == "r-right") {
    op k2 = name[0] == 'u' ? op::U : op::R;
    auto p = numbered(fs, "p", 1, n);
    formula r = p.back();
    for (std::size_t i = n - 1; i-- > 0;) r = fs.make(k2, p[i], r);
    return r;
  }
  if (name.rfind("tv-", 0) == 0) {
    formula p = fs.ap("p"), q = fs.ap("q");
    formula body;
    if (name == "tv-f1") body = detail::flat_x(fs, op::Or, q, n);
    else if (name == "tv-f2") body = detail::nested_x(fs, op::Or, q, n);
    else if (name == "tv-g1") body = detail::flat_x(fs, op::And, q, n);
    else if (name == "tv-g2") body = detail::nested_x(fs, op::And, q, n);
    else throw unknown_pattern(name);
    return fs.always(fs.implies(p, body));
  }
  if (name == "ccj-alpha") {
    auto p = numbered(fs, "p", 1, n);
    auto q = numbered(fs, "q", 1, n);
    return fs.and_(detail::nested_f(fs, p), detail::nested_f(fs, q));
  }
  if (name == "ccj-beta" || name == "ccj-beta-prime") {
    formula p = fs.ap("p"), q = fs.ap("q");
    auto side = [&](formula x) {
      return name == "ccj-beta" ? detail::nested_x(fs, op::And, x, n) : detail::flat_x(fs, op::And, x, n);
    };
    return fs.and_(fs.eventually(side(p)), fs.eventually(side(q)));
  }
  if (name == "kr-n-delta1") return detail::kr_n_delta1(fs, n, k.value_or(n));
  throw unknown_pattern(name);
}

}  // namespace oblig
