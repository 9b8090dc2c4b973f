#include <doctest.h>

#include <memory>

#include "mssp/face_sweep.hpp"
#include "mssp/generate.hpp"
#include "mssp/oracle.hpp"
#include "mssp/slack_probe.hpp"

using namespace mssp;

TEST_CASE("face distance table") {
  auto sq = make_square(unit_weights());
  int f = sq.face_of(0, 0);
  auto rows = dijkstra_all_from_face(sq, f);
  auto walk = sq.face_darts(f);
  REQUIRE(rows.size() == walk.size());
  for (size_t i = 0; i < walk.size(); ++i)
    if (sq.tail(walk[i]) == 0) CHECK(rows[i] == std::vector<Rational>{0, 1, 2, 1});

  auto g = std::make_shared<const EmbeddedGraph>(make_planar_triangulation(120, 12, random_weights(2), 2));
  int face = g->face_of(0, 0);
  auto table = dijkstra_all_from_face(*g, face);
  auto sweep = sweep_face<Rational>(g, face);
  auto fw = g->face_darts(face);
  for (size_t i = 0; i < fw.size(); ++i) {
    REQUIRE(table[i].size() == static_cast<size_t>(g->num_vertices()));
    for (int v = 0; v < g->num_vertices(); ++v) REQUIRE(sweep.dist(g->tail(fw[i]), v) == table[i][v]);
  }
  CHECK(instance_hash(*g) == instance_hash(*g));
  CHECK(instance_hash(*g) != instance_hash(make_planar_triangulation(120, 12, random_weights(3), 2)));
}

TEST_CASE("exhaustive enumeration") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  auto all = enumerate_cycles(torus, 18);
  Rational best = 100;
  for (const auto& c : all) {
    if (!c.contractible) best = std::min(best, c.length);
    REQUIRE(is_contractible(torus, c.darts) == c.contractible);
    REQUIRE(is_separating(torus, c.darts) == c.separating);
  }
  CHECK(best == 3);
  CHECK_THROWS_AS(enumerate_cycles(torus), std::length_error);

  auto k3 = make_surface(make_triangle(unit_weights()));
  auto tri = enumerate_cycles(k3);
  CHECK(tri.size() == 1);
  for (const auto& c : tri) CHECK(c.contractible);
  CHECK_THROWS_AS(brute_noncontractible(k3), NoCycleError);
}

TEST_CASE("brute-force non-contractible search") {
  auto torus = make_surface(make_torus_grid(3, 3, unit_weights()));
  CHECK(brute_noncontractible(torus).length == 3);
  CHECK(brute_nonseparating(torus).length == 3);
  auto ann = make_annulus(7, 3, unit_weights());
  CHECK(brute_noncontractible(ann).length == 7);
  for (int genus = 1; genus <= 2; ++genus)
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(genus);
      CAPTURE(seed);
      auto s = make_surface(make_genus_glued(genus, 50, random_weights(seed), seed));
      auto want = brute_noncontractible(s);
      CHECK(shortest_noncontractible(s).length == want.length);
      CHECK(shortest_nonseparating(s).length == brute_nonseparating(s).length);
    }
}

TEST_CASE("slack slopes follow the side rule between events") {
  auto planar = std::make_shared<const EmbeddedGraph>(make_planar_triangulation(40, 6, random_weights(8), 8));
  auto torus = std::make_shared<const EmbeddedGraph>(make_genus_glued(1, 30, random_weights(9), 9));
  int slopes[3] = {0, 0, 0};
  for (const auto& g : {planar, torus}) {
    std::shared_ptr<const EmbeddedGraph> swept;
    auto samples = sample_slack_states(g, g->face_of(0, 0), &swept);
    REQUIRE(samples.size() > 5);
    for (const auto& s : samples) {
      auto rep = slack_derivative_check(*swept, s.dart, s.lambda, s.eps, s.red);
      REQUIRE_MESSAGE(rep.pass, rep.counterexample);
      for (int d = 0; d < swept->num_darts(); ++d) {
        if (edge_of(d) == edge_of(s.dart)) continue;
        int x = swept->tail(d), y = swept->head(d);
        ++slopes[!s.red[x] && s.red[y] ? 0 : s.red[x] == s.red[y] ? 1 : 2];
      }
    }
    // A wrong coloring is caught, and an interval that crosses an event is refused.
    auto s = samples.front();
    auto flipped = s.red;
    for (auto& r : flipped) r = !r;
    CHECK_FALSE(slack_derivative_check(*swept, s.dart, s.lambda, s.eps, flipped).pass);
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
      if (samples[i + 1].slide != samples[i].slide) continue;
      Rational across = samples[i + 1].lambda - samples[i].lambda;
      CHECK_THROWS_AS(slack_derivative_check(*swept, samples[i].dart, samples[i].lambda, across, samples[i].red), std::invalid_argument);
      break;
    }
  }
  CHECK(slopes[0] > 0);
  CHECK(slopes[1] > 0);
  CHECK(slopes[2] > 0);
}
