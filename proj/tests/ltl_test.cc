#include <catch2/catch_amalgamated.hpp>

#include <oblig/classify.hh>
#include <oblig/lambda.hh>
#include <oblig/lasso.hh>
#include <oblig/oracle.hh>
#include <oblig/parse.hh>

#include "support/grammar_oracle.hh"

#include <random>

using namespace oblig;

namespace {

std::string show(const std::string& text) {
  formula_store fs;
  return to_string(fs, parse(fs, text));
}

}  // namespace

TEST_CASE("parse: constants are absorbed") {
  formula_store fs;
  formula a = fs.ap("a");
  CHECK(parse(fs, "X(1) & a") == a);
  CHECK(parse(fs, "a | 0") == a);
  CHECK(parse(fs, "G true") == formula::tt());
  CHECK(parse(fs, "false U a") == a);
  CHECK(parse(fs, "!!a") == a);
}

TEST_CASE("parse: operators and precedence") {
  formula_store fs;
  formula f = parse(fs, "a U b");
  CHECK(fs.kind(f) == op::U);
  CHECK(fs.atom_name(fs.left(f)) == "a");
  CHECK(fs.atom_name(fs.right(f)) == "b");

  formula g = parse(fs, "(a xor b) R (a U b)");
  REQUIRE(fs.kind(g) == op::R);
  CHECK(fs.kind(fs.left(g)) == op::Xor);
  CHECK(fs.right(g) == f);

  CHECK(show("a -> b -> c") == "a -> (b -> c)");
  CHECK(show("a | b & c") == "a | (b & c)");
  CHECK(show("a & b U c") == "a & (b U c)");
  CHECK(show("a U b U c") == "a U (b U c)");
  CHECK(show("a <-> b -> c") == "a <-> (b -> c)");
  CHECK(show("GF a") == "G F a");
  CHECK(show("!a U b") == "!a U b");
  CHECK(show("X X a") == "X X a");
  CHECK(show("a && b || c") == "(a & b) | c");
}

TEST_CASE("parse: atoms registered in order of appearance") {
  formula_store fs;
  parse(fs, "G(i1 | X i2) <-> G o");
  CHECK(fs.atom_names() == std::vector<std::string>{"i1", "i2", "o"});
}

TEST_CASE("parse: errors") {
  formula_store fs;
  CHECK_THROWS_AS(parse(fs, "a &"), parse_error);
  CHECK_THROWS_AS(parse(fs, "(a"), parse_error);
  CHECK_THROWS_AS(parse(fs, "a b"), parse_error);
  CHECK_THROWS_AS(parse(fs, "a # b"), parse_error);
  try {
    parse(fs, "a & )");
    FAIL("no exception");
  } catch (const parse_error& e) {
    CHECK(e.position() == 4);
  }
  std::set<std::string> declared{"a"};
  CHECK_THROWS_AS(parse(fs, "a U b", declared), undeclared_proposition);
  CHECK_NOTHROW(parse(fs, "a U a", declared));
}

TEST_CASE("formula: hash-consing and canonical order") {
  formula_store fs;
  formula a = fs.ap("a"), b = fs.ap("b");
  CHECK(fs.and_(a, b) == fs.and_(b, a));
  CHECK(fs.or_(a, b) == fs.or_(b, a));
  CHECK(fs.equiv(a, b) == fs.equiv(b, a));
  CHECK(fs.xor_(a, b) == fs.xor_(b, a));
  CHECK(fs.implies(a, b) != fs.implies(b, a));
  CHECK(fs.until(a, b) != fs.until(b, a));
  CHECK(parse(fs, "a U b") == fs.until(a, b));
}

TEST_CASE("formula: constants never appear as operands") {
  std::mt19937_64 rng(7);
  formula_store fs;
  obligation_generator gen(fs, {"a", "b", "c"}, 11);
  std::vector<formula> pool{formula::tt(), formula::ff(), fs.ap("a"), fs.ap("b")};
  for (int i = 0; i < 200; ++i) pool.push_back(gen(fragment::O, 6));
  const op ops[] = {op::Not, op::And, op::Or, op::Implies, op::Equiv, op::Xor, op::X,
                    op::F,   op::G,   op::U,  op::W,       op::R,     op::M};
  for (int i = 0; i < 5000; ++i) {
    op k = ops[rng() % std::size(ops)];
    formula x = pool[rng() % pool.size()], y = pool[rng() % pool.size()];
    formula r = fs.make(k, x, y);
    for (unsigned c = 0; c < fs.arity(r); ++c) CHECK(!fs.child(r, c).is_constant());
  }
}

TEST_CASE("formula: rebuilding from children is the identity") {
  formula_store fs;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    formula f = random_obligation(fs, seed, 12, {"a", "b", "c"}, fragment::O);
    std::vector<formula> todo{f};
    while (!todo.empty()) {
      formula g = todo.back();
      todo.pop_back();
      op k = fs.kind(g);
      if (k == op::ap || g.is_constant()) continue;
      formula a = fs.child(g, 0);
      formula b = fs.arity(g) == 2 ? fs.child(g, 1) : formula::ff();
      CHECK(fs.make(k, a, b) == g);
      for (unsigned i = 0; i < fs.arity(g); ++i) todo.push_back(fs.child(g, i));
    }
  }
}

TEST_CASE("classify: examples") {
  formula_store fs;
  auto cls = [&](const char* t) { return classify(fs, parse(fs, t)); };
  CHECK(cls("F a") == fragment_set{false, true, false, true});
  CHECK(cls("G(i1 | X i2) <-> G o") == fragment_set{false, false, false, true});
  CHECK(cls("G(F(a))") == fragment_set{false, false, false, false});
  CHECK(cls("a & X b") == fragment_set{true, true, true, true});
  CHECK(cls("G a") == fragment_set{false, false, true, true});
  CHECK(cls("(F a) U (G b)") == fragment_set{});
  CHECK(cls("(G a) U (F b)").obligation);
  CHECK(cls("(F a) R (G b)").obligation);
  CHECK(cls("(G a) W (F b)").obligation);
  CHECK(cls("(F a) M (G b)").obligation);
  CHECK(!cls("(G a) M (F b)").obligation);
  CHECK(most_specific(cls("F a")) == "G");
  CHECK(most_specific(cls("G F a")) == "none");
  CHECK(to_string(cls("F a")) == "B:no G:yes S:no O:yes");
}

TEST_CASE("classify: offending subformula") {
  formula_store fs;
  formula f = parse(fs, "a & (b U G F c)");
  auto bad = offending_subformula(fs, f);
  REQUIRE(bad);
  CHECK(to_string(fs, *bad) == "G F c");
  CHECK(!offending_subformula(fs, parse(fs, "F a & G b")));
}

TEST_CASE("classify: agrees with grammar derivability on random formulas") {
  formula_store fs;
  std::mt19937_64 rng(2024);
  const op ops[] = {op::Not, op::And, op::Or, op::Implies, op::Equiv, op::Xor, op::X,
                    op::F,   op::G,   op::U,  op::W,       op::R,     op::M};
  std::vector<formula> atoms{fs.ap("a"), fs.ap("b"), fs.ap("c")};
  // Unconstrained random syntax trees, so that every class is exercised.
  auto rnd = [&](auto& self, unsigned size) -> formula {
    if (size <= 1) return atoms[rng() % atoms.size()];
    op k = ops[rng() % std::size(ops)];
    if (is_unary(k) || size == 2) {
      if (!is_unary(k)) k = op::Not;
      return fs.make(k, self(self, size - 1));
    }
    unsigned l = 1 + static_cast<unsigned>(rng() % (size - 2));
    formula x = self(self, l);
    formula y = self(self, size - 1 - l);
    return fs.make(k, x, y);
  };
  classifier c(fs);
  unsigned counts[5] = {};
  for (int i = 0; i < 10000; ++i) {
    formula f = rnd(rnd, 1 + static_cast<unsigned>(rng() % 15));
    fragment_set got = c(f);
    INFO(to_string(fs, f));
    CHECK(got.bottom == test::derives(fs, f, test::cls::B));
    CHECK(got.guarantee == test::derives(fs, f, test::cls::G));
    CHECK(got.safety == test::derives(fs, f, test::cls::S));
    CHECK(got.obligation == test::derives(fs, f, test::cls::O));
    // closure invariants
    CHECK((!got.bottom || (got.guarantee && got.safety)));
    CHECK((!(got.guarantee || got.safety) || got.obligation));
    std::string m = most_specific(got);
    counts[m == "B" ? 0 : m == "G" ? 1 : m == "S" ? 2 : m == "O" ? 3 : 4]++;
  }
  for (unsigned k : counts) CHECK(k > 100);
}

TEST_CASE("lambda: wildcard algebra table") {
  using M = accept_mark;
  const M T = M::top, B = M::bot, W = M::wild;
  struct row {
    op k;
    M a, b, r;
  };
  const row table[] = {
      {op::And, T, W, T},     {op::And, B, W, B},     {op::And, W, W, W},     {op::Xor, T, W, T},
      {op::Xor, B, W, T},     {op::Or, T, W, T},      {op::Or, B, W, B},      {op::Or, W, W, W},
      {op::Xor, W, W, W},     {op::Implies, T, W, B}, {op::Implies, B, W, T}, {op::Implies, W, W, W},
      {op::Implies, W, T, T}, {op::Implies, W, B, B}, {op::Equiv, T, W, T},   {op::Equiv, B, W, T},
      {op::Equiv, W, W, W},
  };
  for (const row& r : table) {
    INFO(static_cast<int>(r.k) << ' ' << to_string(r.a) << ' ' << to_string(r.b));
    CHECK(apply_mark(r.k, r.a, r.b) == r.r);
    if (is_commutative(r.k)) CHECK(apply_mark(r.k, r.b, r.a) == r.r);
  }
  CHECK(negate(W) == W);
  CHECK(negate(T) == B);
  CHECK(negate(B) == T);
  // Without wildcards the operators are the Boolean ones.
  for (M a : {T, B})
    for (M b : {T, B}) {
      bool x = a == T, y = b == T;
      CHECK(apply_mark(op::And, a, b) == mark_of(x && y));
      CHECK(apply_mark(op::Or, a, b) == mark_of(x || y));
      CHECK(apply_mark(op::Implies, a, b) == mark_of(!x || y));
      CHECK(apply_mark(op::Equiv, a, b) == mark_of(x == y));
      CHECK(apply_mark(op::Xor, a, b) == mark_of(x != y));
    }
}

TEST_CASE("lambda: formulas") {
  formula_store fs;
  auto lam = [&](const char* t) { return lambda(fs, parse(fs, t)); };
  CHECK(lam("F a") == accept_mark::bot);
  CHECK(lam("a") == accept_mark::wild);
  CHECK(lam("G(a) xor b") == accept_mark::top);
  CHECK(lam("a U b") == accept_mark::bot);
  CHECK(lam("a M b") == accept_mark::bot);
  CHECK(lam("a W b") == accept_mark::top);
  CHECK(lam("a R b") == accept_mark::top);
  CHECK(lam("X G a") == accept_mark::top);
  CHECK(lam("!G a") == accept_mark::bot);
  CHECK(lam("1") == accept_mark::top);
  CHECK(lam("0") == accept_mark::bot);
  CHECK(lam("G a & F b") == accept_mark::bot);
  CHECK(lam("G a | F b") == accept_mark::top);
  CHECK(!lambda_prime(lam("b")));
  CHECK(lambda_prime(lam("G a")));
}

TEST_CASE("eval_lasso: examples") {
  formula_store fs;
  lasso_word w{{"a", "b"}, {}, {1}};
  CHECK(eval_lasso(fs, parse(fs, "G a"), w));
  CHECK(!eval_lasso(fs, parse(fs, "F a"), lasso_word{{"a"}, {}, {0}}));
  CHECK(eval_lasso(fs, parse(fs, "a U b"), lasso_word{{"a", "b"}, {1, 3}, {0}}));
  CHECK(!eval_lasso(fs, parse(fs, "a U b"), lasso_word{{"a", "b"}, {1, 1}, {1}}));
  CHECK(eval_lasso(fs, parse(fs, "a W b"), lasso_word{{"a", "b"}, {1, 1}, {1}}));
  CHECK(eval_lasso(fs, parse(fs, "G F a"), lasso_word{{"a"}, {0}, {0, 1}}));
  CHECK(!eval_lasso(fs, parse(fs, "F G a"), lasso_word{{"a"}, {1}, {0, 1}}));
  CHECK(eval_lasso(fs, parse(fs, "b R a"), lasso_word{{"a", "b"}, {1}, {3, 0}}));
  CHECK(!eval_lasso(fs, parse(fs, "b M a"), lasso_word{{"a", "b"}, {}, {1}}));
  CHECK(eval_lasso(fs, parse(fs, "X X a"), lasso_word{{"a"}, {0, 0}, {1}}));
  CHECK_THROWS_AS(eval_lasso(fs, parse(fs, "c"), w), unbound_atom);
  CHECK_THROWS(eval_lasso(fs, parse(fs, "a"), lasso_word{{"a"}, {}, {}}));
}

TEST_CASE("eval_lasso: period invariance and negation") {
  formula_store fs;
  std::vector<std::string> props{"a", "b", "c"};
  std::mt19937_64 rng(99);
  obligation_generator gen(fs, props, 100);
  for (int i = 0; i < 2000; ++i) {
    // Any LTL formula will do here, not only obligations.
    formula f = gen(fragment::O, 12);
    if (i % 2) f = fs.always(fs.eventually(f));
    lasso_word w = random_lasso(rng, props, 4, 4);
    lasso_word w2 = w;
    w2.cycle.insert(w2.cycle.end(), w.cycle.begin(), w.cycle.end());
    lasso_word w3 = w;
    w3.prefix.push_back(w.cycle[0]);
    std::rotate(w3.cycle.begin(), w3.cycle.begin() + 1, w3.cycle.end());
    bool v = eval_lasso(fs, f, w);
    INFO(to_string(fs, f));
    CHECK(eval_lasso(fs, f, w2) == v);
    CHECK(eval_lasso(fs, f, w3) == v);
    CHECK(eval_lasso(fs, fs.not_(f), w) == !v);
  }
}
