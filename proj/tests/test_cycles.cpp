#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "mssp/cycles.hpp"
#include "mssp/generate.hpp"
#include "mssp/oracle.hpp"

using namespace mssp;

namespace {

// Same embedding with every edge reweighted by f(u, v) in both directions.
Surface reweight(const Surface& s, const std::function<Rational(int, int)>& f) {
  EmbeddingInput in = s.g.to_input();
  for (auto& e : in.edges) {
    e.w_uv = f(e.u, e.v);
    e.w_vu = e.w_uv;
  }
  Surface out = s;
  out.g = EmbeddedGraph::build(in);
  return out;
}

std::optional<Rational> enum_min(const std::vector<EnumeratedCycle>& all, bool nonsep) {
  std::optional<Rational> best;
  for (const auto& c : all) {
    bool ok = nonsep ? !c.separating : !c.contractible;
    if (ok && (!best || c.length < *best)) best = c.length;
  }
  return best;
}

// Vertical cycle through column 0 of a w x h torus grid.
std::vector<int> meridian(int w, int h) {
  std::vector<int> out;
  for (int j = 0; j < h; ++j) out.push_back(2 * (2 * (j * w) + 1));
  return out;
}

std::vector<int> longitude(int w, int row) {
  std::vector<int> out;
  for (int i = 0; i < w; ++i) out.push_back(2 * (2 * (row * w + i)));
  return out;
}

bool closed_walk(const EmbeddedGraph& g, const std::vector<int>& w) {
  for (size_t i = 0; i < w.size(); ++i)
    if (g.head(w[i]) != g.tail(w[(i + 1) % w.size()])) return false;
  return !w.empty();
}

}  // namespace

TEST_CASE("symmetrize keeps faces and copies the even dart weight") {
  auto s = make_surface(make_genus_glued(1, 30, random_weights(3), 3));
  auto t = symmetrize(s);
  REQUIRE(t.g.num_faces() == s.g.num_faces());
  for (int e = 0; e < s.g.num_edges(); ++e) {
    CHECK(t.g.weight(2 * e) == s.g.weight(2 * e));
    CHECK(t.g.weight(2 * e + 1) == s.g.weight(2 * e));
  }
}

TEST_CASE("surgery tests on faces, meridians and genus-splitting cycles") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  for (int f = 0; f < torus.g.num_faces(); ++f) {
    CHECK(is_contractible(torus, torus.g.face_darts(f)));
    CHECK(is_separating(torus, torus.g.face_darts(f)));
  }
  CHECK_FALSE(is_separating(torus, meridian(3, 3)));
  CHECK_FALSE(is_contractible(torus, meridian(3, 3)));

  // A genus-2 surface has separating cycles that bound no disk.
  auto g2 = make_surface(make_genus_glued(2, 40, random_weights(4), 4));
  auto all = enumerate_cycles(g2, 200, EnumMode::kSptCandidates);
  int splitting = 0;
  for (const auto& c : all) {
    REQUIRE(is_contractible(g2, c.darts) == c.contractible);
    REQUIRE(is_separating(g2, c.darts) == c.separating);
    splitting += c.separating && !c.contractible;
  }
  CHECK(splitting > 0);
  CHECK(is_contractible(torus, {0, 1, 0, 1}));
  auto twice = longitude(3, 1), once = longitude(3, 1);
  twice.insert(twice.end(), once.begin(), once.end());
  CHECK_THROWS_AS(is_contractible(torus, twice), ContractError);
}

TEST_CASE("crossing counts from the rotation system") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  Curve alpha;
  alpha.darts = meridian(3, 3);
  CHECK(crossing_count(torus, alpha, longitude(3, 0)) == 1);
  CHECK(crossing_count(torus, alpha, longitude(3, 2)) == 1);
  CHECK(crossing_count(torus, alpha, meridian(3, 3)) == 0);
  for (int f = 0; f < torus.g.num_faces(); ++f) CHECK(crossing_count(torus, alpha, torus.g.face_darts(f)) % 2 == 0);
  auto twice = longitude(3, 1);
  auto more = longitude(3, 1);
  twice.insert(twice.end(), more.begin(), more.end());
  CHECK(crossing_count(torus, alpha, twice) == 2);
}

TEST_CASE("shortest cycle crossing a curve once") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  Curve alpha;
  alpha.darts = meridian(3, 3);
  auto c = shortest_cycle_crossing_once(torus, alpha);
  REQUIRE(c);
  CHECK(c->length == 3);
  CHECK(closed_walk(torus.g, c->darts));
  CHECK(crossing_count(torus, alpha, c->darts) == 1);
  CHECK(c->separating == Tri::kNo);

  Curve face;
  face.darts = torus.g.face_darts(0);
  CHECK_FALSE(shortest_cycle_crossing_once(torus, face));

  Curve bad;
  bad.darts = {0, 1};
  CHECK_THROWS_AS(shortest_cycle_crossing_once(torus, bad), ContractError);

  // Random weights on bigger tori and a Klein bottle: compare with the exhaustive minimum
  // over cycles crossing alpha once.
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    auto t = make_surface(make_torus_grid(3, 4, random_weights(seed), false, seed));
    Curve a;
    a.darts = meridian(3, 4);
    auto got = shortest_cycle_crossing_once(t, a);
    REQUIRE(got);
    CHECK(crossing_count(t, a, got->darts) == 1);
    auto sym = symmetrize(t);
    std::optional<Rational> best;
    for (const auto& cyc : enumerate_cycles(sym, 24))
      if (crossing_count(sym, a, cyc.darts) == 1 && (!best || cyc.length < *best)) best = cyc.length;
    REQUIRE(best);
    CHECK(got->length == *best);
  }
}

TEST_CASE("shortest non-separating cycle") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  auto c = shortest_nonseparating(torus);
  CHECK(c.length == 3);
  CHECK(c.separating == Tri::kNo);
  CHECK_FALSE(is_separating(torus, c.darts));

  // One cheap row of weight 0.1 per edge.
  auto cheap = make_surface(make_torus_grid(3, 3, [](int d) { return edge_of(d) % 2 == 0 && edge_of(d) / 2 < 3 ? Rational(1, 10) : Rational(1); }));
  auto r = shortest_nonseparating(cheap);
  CHECK(r.length == Rational(3, 10));
  std::set<int> row;
  for (int d : r.darts) row.insert(edge_of(d));
  CHECK(row == std::set<int>{0, 2, 4});
  CHECK(enum_min(enumerate_cycles(cheap, 18), true) == r.length);

  CHECK_THROWS_AS(shortest_nonseparating(make_surface(make_triangle(unit_weights()))), NoCycleError);
}

TEST_CASE("shortest non-contractible loop at a vertex") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  for (int x = 0; x < 9; ++x) {
    auto l = shortest_noncontractible_loop_at(torus, x);
    REQUIRE(l);
    CHECK(l->length == 3);
    CHECK(l->multiplicity <= 2);
    CHECK(torus.g.tail(l->darts.front()) == x);
    CHECK(torus.g.head(l->darts.back()) == x);
  }
  auto ann = make_annulus(5, 3, unit_weights());
  auto l = shortest_noncontractible_loop_at(ann, 0);
  REQUIRE(l);
  CHECK(l->length == 5);
  CHECK_FALSE(is_contractible(ann, l->darts));
  auto disk = make_surface(make_square(unit_weights()));
  CHECK_FALSE(shortest_noncontractible_loop_at(disk, 0));
}

TEST_CASE("non-contractible arcs and arcs between boundaries") {
  auto check_arc = [](const Surface& s, int hole, const CyclePath& a) {
    CHECK_FALSE(a.closed);
    CHECK(a.multiplicity <= 2);
    std::set<int> delta;
    for (int d : s.boundary_darts(hole)) delta.insert(edge_of(d));
    for (int d : a.darts) CHECK(delta.count(edge_of(d)) == 0);
    CHECK(corner_face(s.g, a.start.after) == hole);
    CHECK(corner_face(s.g, a.end.after) == hole);
    auto cut = cut_along(s, Curve{a.darts, false, a.start, a.end});
    auto cs = census(cut.surface);
    if (cs.size() > 1)
      for (const auto& c : cs) CHECK_FALSE(c.is_disk());
  };
  auto mob = make_moebius(5, 2, unit_weights());
  REQUIRE(mob.num_holes() == 1);
  auto a = shortest_noncontractible_arc(mob, mob.holes()[0]);
  REQUIRE(a);
  check_arc(mob, mob.holes()[0], *a);
  CHECK(a->length == 2);

  auto pants = make_pants(6, 4, unit_weights());
  REQUIRE(pants.num_holes() == 3);
  for (int h : pants.holes()) {
    auto p = shortest_noncontractible_arc(pants, h);
    REQUIRE(p);
    check_arc(pants, h, *p);
  }

  auto disk = make_surface(make_square(unit_weights()));
  disk.hole[0] = 1;
  CHECK_FALSE(shortest_noncontractible_arc(disk, 0));

  auto ann = make_annulus(6, 4, unit_weights());
  auto hs = ann.holes();
  auto rung = shortest_arc_between_boundaries(ann, hs[0], hs[1]);
  CHECK(rung.length == 3);
  CHECK(rung.multiplicity == 1);
  CHECK(corner_face(ann.g, rung.start.after) == hs[0]);
  CHECK(corner_face(ann.g, rung.end.after) == hs[1]);
  CHECK_THROWS_AS(shortest_arc_between_boundaries(ann, hs[0], hs[0]), std::invalid_argument);
}

TEST_CASE("shortest cycle homotopic to a boundary") {
  // Rings 0..3 weigh 5, 1, 7, 7; rungs weigh 10.
  const int around = 6;
  auto ann = reweight(make_annulus(around, 4, unit_weights()), [&](int u, int v) {
    if (u / around != v / around) return Rational(10);
    const int w[] = {5, 1, 7, 7};
    return Rational(w[u / around]);
  });
  int inner = -1;
  for (int h : ann.holes())
    if (ann.g.tail(ann.boundary_darts(h)[0]) < around) inner = h;
  REQUIRE(inner >= 0);
  auto c = shortest_cycle_homotopic_to_boundary(ann, inner);
  CHECK(c.length == around);
  for (int d : c.darts) CHECK(ann.g.tail(d) / around == 1);
  CHECK(is_homotopic_to_boundary(ann, c.darts, inner));

  // Never longer than the boundary, and exact against enumeration on small surfaces.
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto small = make_annulus(3, 3, random_weights(seed), seed);
    auto sym = symmetrize(small);
    for (int h : small.holes()) {
      auto got = shortest_cycle_homotopic_to_boundary(small, h);
      CHECK(got.length <= walk_length(sym.g, sym.boundary_darts(h)));
      std::optional<Rational> best;
      for (const auto& cyc : enumerate_cycles(sym, 15))
        if (is_homotopic_to_boundary(sym, cyc.darts, h) && (!best || cyc.length < *best)) best = cyc.length;
      REQUIRE(best);
      CHECK(got.length == *best);
    }
  }
}

TEST_CASE("shortest non-contractible cycle") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  NonconStats st;
  auto c = shortest_noncontractible(torus, &st);
  CHECK(c.length == 3);
  CHECK(c.contractible == Tri::kNo);
  CHECK(st.iterations <= 3);
  CHECK(st.max_edge_copies <= 4);

  auto ann = reweight(make_annulus(5, 4, unit_weights()), [](int u, int v) {
    if (u / 5 != v / 5) return Rational(3);
    const int w[] = {4, 2, 1, 6};
    return Rational(w[u / 5]);
  });
  auto r = shortest_noncontractible(ann);
  CHECK(r.length == 5);
  for (int d : r.darts) CHECK(ann.g.tail(d) / 5 == 2);

  CHECK_THROWS_AS(shortest_noncontractible(make_surface(make_triangle(unit_weights()))), NoCycleError);

  // Genus 2 with one cheap handle: the answer lives in the cheap half.
  auto base = make_genus_glued(2, 60, random_weights(21), 21);
  const int half = base.num_vertices() / 2;
  auto cheap = reweight(make_surface(base), [&](int u, int v) {
    Rational w = base.weight(0);
    for (int e = 0; e < base.num_edges(); ++e)
      if (base.tail(2 * e) == u && base.head(2 * e) == v) w = base.weight(2 * e);
    return u < half && v < half ? w / 50 : w;
  });
  auto got = shortest_noncontractible(cheap, &st);
  auto want = brute_noncontractible(symmetrize(cheap));
  CHECK(got.length == want.length);
  CHECK(st.iterations <= 5);
}

TEST_CASE("cycle finders agree with exhaustive enumeration on small fixtures") {
  struct Fixture {
    Surface s;
    const char* name;
  };
  std::vector<Fixture> fx;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    fx.push_back({make_surface(make_torus_grid(2, 3, random_weights(seed), false, seed)), "torus-2x3"});
    fx.push_back({make_surface(make_klein_grid(2, 3, random_weights(seed), seed)), "klein-2x3"});
    fx.push_back({make_surface(make_projective_wheel(4, random_weights(seed), seed)), "wheel-4"});
    fx.push_back({make_annulus(3, 3, random_weights(seed), seed), "annulus-3x3"});
    fx.push_back({make_moebius(3, 1, random_weights(seed), seed), "moebius-3x1"});
  }
  for (auto& f : fx) {
    CAPTURE(f.name);
    REQUIRE(f.s.g.num_edges() <= 15);
    auto sym = symmetrize(f.s);
    auto all = enumerate_cycles(sym, 15);
    auto nc = enum_min(all, false);
    REQUIRE(nc);
    CHECK(shortest_noncontractible(f.s).length == *nc);
    if (f.s.num_holes() == 0) {
      Surface closed = sym;
      auto ns = enum_min(enumerate_cycles(closed, 15), true);
      REQUIRE(ns);
      CHECK(shortest_nonseparating(f.s).length == *ns);
    }
  }
}
