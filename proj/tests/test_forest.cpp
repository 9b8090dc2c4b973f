#include <doctest.h>

#include <fstream>
#include <random>

#include "support/forest_trace.hpp"

using namespace mssp;

TEST_CASE("primal link, cut and subtree addition") {
  PrimalTree<double> t(0);
  int a = t.add_node(0), b = t.add_node(5);
  t.link(a, b);
  CHECK(t.root(b) == a);
  CHECK(t.parent(b) == a);
  t.cut(a, b);
  CHECK(t.root(b) == b);
  CHECK(t.value(a) == 0);
  CHECK(t.value(b) == 5);

  int c = t.add_node(0);
  t.link(a, b);
  t.link(b, c);
  t.add_subtree(3, b);
  CHECK(t.value(a) == 0);
  CHECK(t.value(b) == 8);
  CHECK(t.value(c) == 3);
  t.add_subtree(-1, a);
  CHECK(t.value(a) == -1);
  CHECK(t.value(c) == 2);

  CHECK_THROWS_AS(t.link(a, c), ForestError);
  try {
    t.cut(a, c);
  } catch (const ForestError& e) {
    CHECK(e.code() == ForestErrc::kAbsentEdge);
  }
  try {
    t.link(c, a);
  } catch (const ForestError& e) {
    CHECK(e.code() == ForestErrc::kSameTree);
  }
}

TEST_CASE("primal snapshots are immutable") {
  PrimalTree<Rational> t(3);
  t.link(0, 1, 11);
  t.link(1, 2, 12);
  t.add_subtree(Rational(1, 3), 1);
  int v1 = t.snapshot();
  t.add_subtree(5, 0);
  t.cut(1, 2);
  t.link(0, 2, 13);
  int v2 = t.snapshot();
  CHECK(t.query(v1, 2).dist == Rational(1, 3));
  CHECK(t.query(v1, 2).parent == 1);
  CHECK(t.query(v1, 2).label == 12);
  CHECK(t.query(v1, 0).dist == 0);
  CHECK(t.query(v2, 2).dist == Rational(16, 3));
  CHECK(t.query(v2, 2).parent == 0);
  int late = t.add_node(0);
  try {
    t.query(v2, late);
    FAIL("expected stale node");
  } catch (const ForestError& e) {
    CHECK(e.code() == ForestErrc::kStaleNode);
  }
}

TEST_CASE("dual link values and path operations") {
  std::vector<uint32_t> keys(20, 0);
  DualForest<double> f(4, keys);
  // u=0, a=1, v=2
  f.link(0, 1, 0, 2, 7);
  CHECK(f.get(0) == 2);
  CHECK(f.get(1) == 7);
  DualForest<double> g(4, keys);
  g.link(1, 0, 1, 7, 2);
  CHECK(g.get(0) == 2);
  CHECK(g.get(1) == 7);

  DualForest<double> p(3, keys);
  p.link(0, 1, 0, 5, 1);
  p.link(1, 2, 2, 2, 1);
  auto m = p.min_path(0, 2);
  REQUIRE(m);
  CHECK(m->dart == 2);
  CHECK(m->value == 2);
  p.add_path(3, 0, 2);
  CHECK(p.get(0) == 8);
  CHECK(p.get(2) == 5);
  CHECK(p.get(1) == -2);
  CHECK(p.get(3) == -2);
  auto back = p.min_path(2, 0);
  REQUIRE(back);
  CHECK(back->value == -2);
  CHECK(p.junction(0, 1, 2) == 1);
  CHECK(p.junction(2, 0, 1) == 1);
  CHECK_THROWS_AS(p.link(0, 2, 4, 0, 0), ForestError);
  CHECK(*p.first_dart(0, 2) == 0);
  CHECK(*p.first_dart(2, 0) == 3);
  CHECK(p.path_darts(2, 0) == std::vector<int>{3, 1});
}

TEST_CASE("dual junction on a star and random trees") {
  std::vector<uint32_t> keys(1000, 0);
  DualForest<double> s(4, keys);
  s.link(1, 0, 0, 0, 0);
  s.link(2, 0, 2, 0, 0);
  s.link(3, 0, 4, 0, 0);
  CHECK(s.junction(1, 2, 3) == 0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 60 + trial * 35;
    DualForest<double> f(n, keys);
    naive::Dual<double> ref(n, keys);
    for (int v = 1; v < n; ++v) {
      int p = static_cast<int>(rng() % v);
      f.link(v, p, 2 * (v - 1), 0, 0);
      ref.link(v, p, 2 * (v - 1), 0, 0);
    }
    for (int q = 0; q < 400; ++q) {
      int t = rng() % n, u = rng() % n, v = rng() % n;
      int j = f.junction(t, u, v);
      CHECK(j == ref.junction(t, u, v));
      CHECK(j == f.junction(t, v, u));
    }
  }
}

TEST_CASE("antisymmetry is preserved by path updates") {
  std::vector<uint32_t> keys(100, 0);
  DualForest<Rational> f(10, keys);
  for (int v = 1; v < 10; ++v) f.link(v, v / 2, 2 * v, v, 2 * v);
  std::vector<Rational> sums;
  for (int v = 1; v < 10; ++v) sums.push_back(f.get(2 * v) + f.get(2 * v + 1));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) f.add_path(Rational(static_cast<long>(rng() % 17) - 8, 3), rng() % 10, rng() % 10);
  for (int v = 1; v < 10; ++v) CHECK(f.get(2 * v) + f.get(2 * v + 1) == sums[v - 1]);
}

TEST_CASE("randomized traces match the reference models") {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    CHECK(trace::run_trace(trace::random_primal(seed, 64, 20000)) == "");
    CHECK(trace::run_trace(trace::random_dual(seed, 64, 20000)) == "");
  }
}

TEST_CASE("regression traces replay") {
  for (const char* name : {"primal_basic.trace", "dual_basic.trace"}) {
    std::ifstream in(std::string(MSSP_TEST_DATA) + "/traces/" + name);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);)
      if (!l.empty() && l[0] != '#') lines.push_back(l);
    CHECK(trace::run_trace(lines) == "");
  }
}

TEST_CASE("subtree membership and dual value reset") {
  std::mt19937_64 rng(9);
  const int n = 80;
  PrimalTree<double> t(n);
  naive::Primal<double> ref;
  for (int i = 0; i < n; ++i) ref.add_node(0);
  for (int step = 0; step < 3000; ++step) {
    int p = rng() % n, v = rng() % n;
    if (rng() % 3 == 0) {
      if (ref.parent[v] != -1) {
        t.cut(ref.parent[v], v);
        ref.cut(ref.parent[v], v);
      }
    } else if (ref.root(p) != ref.root(v)) {
      t.link(p, v);
      ref.link(p, v);
    }
    int x = rng() % n, y = rng() % n;
    REQUIRE(t.in_subtree(x, y) == ref.in_subtree(x, y));
  }

  std::vector<uint32_t> keys(10, 0);
  DualForest<Rational> f(3, keys);
  f.link(0, 1, 1, 4, 6);
  f.link(1, 2, 2, 1, 1);
  f.add_path(2, 0, 2);
  f.set_values(0, 7, 9);
  CHECK(f.get(0) == 7);
  CHECK(f.get(1) == 9);
  CHECK(f.min_path(2, 0)->value == -1);
  f.make_root(2);
  CHECK(f.root_of(0) == 2);
}
