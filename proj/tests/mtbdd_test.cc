#include <catch2/catch_amalgamated.hpp>

#include <oblig/mtbdd.hh>

#include <random>
#include <sstream>

using namespace oblig;

namespace {

constexpr unsigned nvars = 4;
constexpr letter nletters = letter{1} << nvars;
using table = std::vector<std::uint64_t>;

// Shannon expansion of a truth table from the bottom level up.
dd_ref build(mtbdd_manager& m, const table& t, unsigned level = 0, letter fixed = 0) {
  if (level == nvars) return m.terminal(t[fixed]);
  dd_ref lo = build(m, t, level + 1, fixed);
  dd_ref hi = build(m, t, level + 1, fixed | (letter{1} << level));
  if (lo == hi) return lo;
  return m.branch(level, lo, hi);
}

table random_table(std::mt19937_64& rng, unsigned range) {
  table t(nletters);
  for (auto& v : t) v = rng() % range;
  return t;
}

void check_structure(const mtbdd_manager& m, dd_ref r) {
  for (dd_ref n : m.reachable(std::span<const dd_ref>(&r, 1))) {
    if (m.is_terminal(n)) continue;
    CHECK(m.low(n) != m.high(n));
    CHECK(m.level(n) < m.level(m.low(n)));
    CHECK(m.level(n) < m.level(m.high(n)));
  }
}

}  // namespace

TEST_CASE("mtbdd: equal functions share one node") {
  std::mt19937_64 rng(1);
  mtbdd_manager m;
  for (int i = 0; i < 500; ++i) {
    table t = random_table(rng, 3);
    dd_ref a = build(m, t);
    dd_ref b = build(m, t);
    CHECK(a == b);
    check_structure(m, a);
    for (letter l = 0; l < nletters; ++l) CHECK(m.eval(a, l) == t[l]);
    table u = t;
    u[rng() % nletters] += 1;
    CHECK(build(m, u) != a);
  }
}

TEST_CASE("mtbdd: branch reduces and checks the order") {
  mtbdd_manager m;
  dd_ref a = m.terminal(5), b = m.terminal(6);
  CHECK(m.branch(0, a, a) == a);
  dd_ref n = m.branch(1, a, b);
  CHECK(m.branch(1, a, b) == n);
  CHECK(m.level(n) == 1);
  CHECK_THROWS_AS(m.branch(1, n, a), order_violation);
  CHECK_THROWS_AS(m.branch(2, n, a), order_violation);
  CHECK_NOTHROW(m.branch(0, n, a));
  CHECK(m.is_terminal(a));
  CHECK(m.value(b) == 6);
  CHECK_THROWS(m.low(a));
}

TEST_CASE("mtbdd: apply and map are pointwise") {
  std::mt19937_64 rng(2);
  mtbdd_manager m;
  auto plus = m.register_binary([](std::uint64_t x, std::uint64_t y) { return (x + y) % 4; });
  auto twice = m.register_unary([](std::uint64_t x) { return (2 * x) % 3; });
  for (int i = 0; i < 500; ++i) {
    table t = random_table(rng, 4), u = random_table(rng, 4);
    dd_ref x = build(m, t), y = build(m, u);
    dd_ref s = m.apply(plus, x, y);
    dd_ref d = m.map(twice, x);
    dd_ref s2 = m.apply2(x, y, [](std::uint64_t a, std::uint64_t b) { return (a + b) % 4; });
    table ts(nletters), td(nletters);
    for (letter l = 0; l < nletters; ++l) {
      ts[l] = (t[l] + u[l]) % 4;
      td[l] = (2 * t[l]) % 3;
    }
    // The results are reduced, hence identical to the direct build.
    CHECK(s == build(m, ts));
    CHECK(s2 == s);
    CHECK(d == build(m, td));
    check_structure(m, s);
    check_structure(m, d);
  }
}

TEST_CASE("mtbdd: memoization is transparent") {
  std::mt19937_64 rng(3);
  mtbdd_manager m;
  int calls = 0;
  auto mul = m.register_binary([&](std::uint64_t x, std::uint64_t y) {
    ++calls;
    return x * y;
  });
  std::vector<std::tuple<dd_ref, dd_ref, dd_ref>> seen;
  for (int i = 0; i < 100; ++i) {
    dd_ref x = build(m, random_table(rng, 3)), y = build(m, random_table(rng, 3));
    seen.emplace_back(x, y, m.apply(mul, x, y));
  }
  int before = calls;
  for (auto& [x, y, r] : seen) CHECK(m.apply(mul, x, y) == r);
  CHECK(calls == before);
  m.clear_caches();
  for (auto& [x, y, r] : seen) CHECK(m.apply(mul, x, y) == r);
  CHECK(calls > before);
}

TEST_CASE("mtbdd: paths partition the assignments") {
  std::mt19937_64 rng(4);
  mtbdd_manager m;
  for (int i = 0; i < 300; ++i) {
    table t = random_table(rng, 3);
    dd_ref r = build(m, t);
    auto ps = m.paths(r);
    for (letter l = 0; l < nletters; ++l) {
      int hits = 0;
      for (auto& [c, v] : ps)
        if (c.contains(l)) {
          ++hits;
          CHECK(v == t[l]);
        }
      CHECK(hits == 1);
    }
    for (auto& [c, v] : ps) CHECK(m.eval(r, c) == v);
    // distinct terminals, in first-path order
    std::vector<std::uint64_t> firsts;
    for (auto& [c, v] : ps)
      if (std::find(firsts.begin(), firsts.end(), v) == firsts.end()) firsts.push_back(v);
    CHECK(m.terminals(r) == firsts);
  }
}

TEST_CASE("mtbdd: multi-root map shares its memo") {
  mtbdd_manager m;
  dd_ref a = m.branch(0, m.terminal(1), m.terminal(2));
  dd_ref b = m.branch(1, m.terminal(2), m.terminal(3));
  int calls = 0;
  std::vector<dd_ref> roots{a, b};
  auto res = m.map_terminals(std::span<const dd_ref>(roots), [&](std::uint64_t v) {
    ++calls;
    return v * 10;
  });
  CHECK(calls == 3);
  CHECK(m.eval(res[0], letter{1}) == 20);
  CHECK(m.eval(res[1], letter{2}) == 30);
  // A constant map collapses the diagram.
  CHECK(m.map_terminals(a, [](std::uint64_t) { return 7; }) == m.terminal(7));
}

TEST_CASE("mtbdd: partial assignments") {
  mtbdd_manager m;
  dd_ref r = m.branch(0, m.terminal(0), m.branch(2, m.terminal(1), m.terminal(2)));
  CHECK(m.eval(r, cube{}.with(0, false)) == 0);
  CHECK(m.eval(r, cube{}.with(0, true).with(2, true)) == 2);
  CHECK_THROWS_AS(m.eval(r, cube{}.with(0, true)), partial_assignment);
  CHECK(m.node_count(r) == 5);
  std::ostringstream os;
  std::vector<dd_ref> rs{r};
  m.dump_dot(os, rs);
  CHECK(os.str().find("digraph") != std::string::npos);
}

TEST_CASE("cube operations") {
  cube c = cube{}.with(0, true).with(2, false);
  CHECK(c.contains(0b001));
  CHECK(!c.contains(0b101));
  CHECK(c.literal_count() == 2);
  cube d = cube{}.with(1, true);
  CHECK(c.intersects(d));
  CHECK(!c.intersects(cube{}.with(0, false)));
  CHECK(c.meet(d).contains(0b011));
}

TEST_CASE("var_order") {
  var_order o({"a", "b"});
  CHECK(o.size() == 2);
  CHECK(o.name(1) == "b");
  CHECK(o.level_of("a") == 0u);
  CHECK(!o.level_of("z"));
  CHECK_THROWS(var_order({"a", "a"}));
}
