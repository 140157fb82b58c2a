#include <catch2/catch_amalgamated.hpp>

#include <oblig/explicit.hh>
#include <oblig/minimize.hh>
#include <oblig/oracle.hh>
#include <oblig/translate.hh>

#include "support/fixtures.hh"
#include "support/structure.hh"

using namespace oblig;
using test::fresh_store;

namespace {

struct builder_fixture {
  std::shared_ptr<formula_store> fs = fresh_store();
  std::shared_ptr<mtbdd_manager> dd = std::make_shared<mtbdd_manager>();
  formula a = fs->ap("a"), b = fs->ap("b");
  successor_builder sb{fs, dd, var_order({"a", "b"})};
};

}  // namespace

TEST_CASE("tr: rule table") {
  builder_fixture x;
  formula_store& fs = *x.fs;
  CHECK(x.sb.tr(formula::tt()) == x.sb.leaf(formula::tt()));
  CHECK(x.sb.tr(formula::ff()) == x.sb.leaf(formula::ff()));
  dd_ref tra = x.sb.tr(x.a);
  CHECK(tra == x.dd->branch(0, x.sb.leaf(formula::ff()), x.sb.leaf(formula::tt())));
  formula u = fs.until(x.a, x.b);
  CHECK(x.sb.tr(fs.next(u)) == x.sb.leaf(u));
  formula fa = fs.eventually(x.a);
  CHECK(x.sb.tr(fa) == x.dd->branch(0, x.sb.leaf(fa), x.sb.leaf(formula::tt())));
  formula ga = fs.always(x.a);
  CHECK(x.sb.tr(ga) == x.dd->branch(0, x.sb.leaf(formula::ff()), x.sb.leaf(ga)));
  // negation is a terminal map
  CHECK(x.sb.tr(fs.not_(x.a)) == x.dd->branch(0, x.sb.leaf(formula::tt()), x.sb.leaf(formula::ff())));
  CHECK(x.sb.tr(fs.not_(fa)) ==
        x.dd->map_terminals(x.sb.tr(fa), [&](auto v) { return fs.not_(formula{std::uint32_t(v)}).id; }));
  // a U b: b, or a and stay
  dd_ref tru = x.sb.tr(u);
  CHECK(x.dd->eval(tru, 0b00) == formula::ff().id);
  CHECK(x.dd->eval(tru, 0b01) == u.id);
  CHECK(x.dd->eval(tru, 0b10) == formula::tt().id);
  CHECK(x.dd->eval(tru, 0b11) == formula::tt().id);
  // a M b: b and (a or stay)
  formula m = fs.strong_release(x.a, x.b);
  dd_ref trm = x.sb.tr(m);
  CHECK(x.dd->eval(trm, 0b00) == formula::ff().id);
  CHECK(x.dd->eval(trm, 0b01) == formula::ff().id);
  CHECK(x.dd->eval(trm, 0b10) == m.id);
  CHECK(x.dd->eval(trm, 0b11) == formula::tt().id);
  formula r = fs.release(x.a, x.b);
  CHECK(x.dd->eval(x.sb.tr(r), 0b10) == r.id);
  formula w = fs.weak_until(x.a, x.b);
  CHECK(x.dd->eval(x.sb.tr(w), 0b01) == w.id);
}

TEST_CASE("canonicalize: propositional equivalence") {
  auto fs = fresh_store();
  prop_canonicalizer c(*fs);
  formula phi2 = parse(*fs, "(G b) | ((G a) & ((G a) W (G b)))");
  formula phi3 = parse(*fs, "(G b) | ((G a) & ((G b) | ((G a) & ((G a) W (G b)))))");
  CHECK(c(phi2) == phi2);
  CHECK(c(phi3) == phi2);
  formula xb = parse(*fs, "X b");
  CHECK(c(xb) == xb);
  CHECK(c(parse(*fs, "X(a & b) | X b")) == xb);
  CHECK(c(fs->ap("a")) == fs->ap("a"));
  CHECK(c(parse(*fs, "(a & 1) | (a & !a)")) == fs->ap("a"));
  CHECK(c(parse(*fs, "a | !a")) == formula::tt());
  CHECK(c(parse(*fs, "X a & X !a")) == formula::ff());
  CHECK(c(parse(*fs, "F a & !F a")) == formula::ff());
  // distinct temporal operators stay distinct
  CHECK(c(parse(*fs, "F a")) != c(parse(*fs, "G a")));
  CHECK(c(parse(*fs, "X F a")) != c(parse(*fs, "F a")));
}

TEST_CASE("translate: small examples") {
  auto fs = fresh_store();
  mtdwa t = translate(fs, formula::tt());
  REQUIRE(t.size() == 1);
  CHECK(t.accepting[0]);
  CHECK(t.delta[0] == t.dd->terminal(0));

  mtdwa f = translate(fs, parse(*fs, "F a"));
  REQUIRE(f.size() == 2);
  CHECK(f.state_formula[f.initial] == parse(*fs, "F a"));
  CHECK(!f.accepting[f.initial]);
  CHECK(f.state_formula[1].is_tt());
  CHECK(f.accepting[1]);

  mtdwa g = translate(fs, parse(*fs, "G a"));
  lasso_word all_a{{"a"}, {}, {1}};
  lasso_word later_not{{"a"}, {1}, {0}};
  CHECK(accepts_lasso(g, all_a));
  CHECK(!accepts_lasso(g, later_not));
}

TEST_CASE("translate: running example") {
  auto fs = fresh_store();
  formula phi1 = parse(*fs, test::phi1_text);
  mtdwa a = translate(fs, phi1);
  REQUIRE(a.size() == 6);
  CHECK(a.props.names() == std::vector<std::string>{"i1", "i2", "o"});
  unsigned acc = 0;
  for (bool b : a.accepting) acc += b;
  CHECK(acc == 3);
  CHECK(scc_decompose(a).count == 4);
  CHECK(a.state_formula[a.initial] == phi1);
  const letter i1 = 1, o = 4;
  auto target = [&](letter l) { return a.state_formula[a.step(a.initial, l)]; };
  CHECK(target(i1 | o) == phi1);
  CHECK(target(i1) == parse(*fs, "!G(i1 | X i2)"));
  CHECK(target(o) == parse(*fs, test::phi2_text));
  CHECK(target(0) == parse(*fs, "!(i2 & G(i1 | X i2))"));
  // Δ of the second state has 8 paths over 6 destinations.
  std::uint32_t s2 = a.step(a.initial, o);
  CHECK(a.dd->paths(a.delta[s2]).size() == 8);
  CHECK(a.successors(s2).size() == 6);
}

TEST_CASE("translate: cycle acceptance does not trust the representative's mark") {
  auto fs = fresh_store();
  // Propositionally this is F b, but its own mark is accepting.
  formula f = parse(*fs, "a <-> (a <-> F b)");
  CHECK(lambda(*fs, f) == accept_mark::top);
  mtdwa a = translate(fs, f);
  REQUIRE(a.size() == 2);
  CHECK(a.state_formula[a.initial] == f);
  CHECK(a.step(a.initial, 0) == a.initial);
  CHECK(!a.accepting[a.initial]);
  CHECK(!accepts_lasso(a, lasso_word{{"a", "b"}, {}, {1}}));
  translate_options opt;
  opt.props = std::vector<std::string>{"a", "b"};
  CHECK(equivalent(a, translate(fs, parse(*fs, "F b"), opt)));
}

TEST_CASE("translate: errors") {
  auto fs = fresh_store();
  try {
    translate(fs, parse(*fs, "a & G F b"));
    FAIL("no exception");
  } catch (const not_obligation_error& e) {
    CHECK(e.offending() == "G F b");
  }
  translate_options opt;
  opt.state_limit = 2;
  CHECK_THROWS_AS(translate(fs, parse(*fs, "a U (b U c)"), opt), state_limit_error);
}

TEST_CASE("translate: canonicalization makes the divergent family finite") {
  auto fs = fresh_store();
  mtdwa a = translate(fs, parse(*fs, "(G a) W (G b)"));
  CHECK(a.size() <= 8);
  CHECK(moore_minimize(a).size() <= a.size());
}

TEST_CASE("translate: agrees with direct evaluation on random lassos") {
  auto fs = fresh_store();
  std::vector<std::string> props{"a", "b", "c"};
  obligation_generator gen(*fs, props, 12345);
  std::mt19937_64 rng(54321);
  translate_options opt;
  opt.props = props;
  for (int i = 0; i < 500; ++i) {
    formula f = gen(fragment::O, 12);
    mtdwa a = translate(fs, f, opt);
    for (int j = 0; j < 20; ++j) {
      lasso_word w = random_lasso(rng, props, 4, 4);
      INFO(to_string(*fs, f));
      CHECK(accepts_lasso(a, w) == eval_lasso(*fs, f, w));
    }
  }
}

TEST_CASE("translate: structural properties of the three-valued labels") {
  auto fs = fresh_store();
  std::vector<std::string> props{"a", "b", "c"};
  for (fragment fr : {fragment::B, fragment::G, fragment::S, fragment::O}) {
    obligation_generator gen(*fs, props, 77 + static_cast<unsigned>(fr));
    classifier cls(*fs);
    for (int i = 0; i < 300; ++i) {
      formula f = gen(fr, 12);
      mtdwa a = translate(fs, f);
      INFO(to_string(*fs, f));
      CHECK(test::structure_violations(a, cls(f)).empty());
      // every terminal is a state and every state is deterministic/complete
      for (std::uint32_t s = 0; s < a.size(); ++s)
        for (auto t : a.successors(s)) CHECK(t < a.size());
      explicit_automaton e = to_explicit(a);
      CHECK(is_deterministic(e));
      CHECK(is_complete(e));
    }
  }
}
