#include <doctest.h>

#include <memory>

#include "mssp/generate.hpp"
#include "mssp/planar_sweep.hpp"
#include "support/bisected.hpp"

using namespace mssp;

namespace {

std::shared_ptr<const EmbeddedGraph> share(EmbeddedGraph g) { return std::make_shared<const EmbeddedGraph>(std::move(g)); }

int outer_face(const EmbeddedGraph& g, int k) {
  return g.face_size(g.face_of(0, 0)) == k ? g.face_of(0, 0) : g.face_of(0, 1);
}

// Sweeps face f and compares every boundary tree, every event and every path with Dijkstra.
template <class Num>
void check_face(std::shared_ptr<const EmbeddedGraph> g, int f, bool events = true) {
  const auto& G = *g;
  PlanarSweep<Num> sweep(g, f, SweepOptions{true, -1});
  long seen = 0;
  if (events)
    sweep.set_observer([&](const SweepView<Num>& v) {
      support::Bisected<Num> ref(*v.g, v.dart);
      for (int x = 0; x < G.num_vertices(); ++x) REQUIRE(num_close(v.dist(x), ref.dist(x, v.lambda)));
      ++seen;
    });
  auto tr = sweep.run();
  auto w = G.weights<Num>();
  for (size_t i = 0; i < tr.version.size(); ++i) {
    int u = tr.boundary[i];
    auto want = dijkstra<Num>(G, u, w);
    for (int x = 0; x < G.num_vertices(); ++x) {
      REQUIRE(num_close(tr.dist(u, x), want[x]));
      auto p = tr.path(u, x);
      Num len = NumTraits<Num>::zero();
      int at = u;
      for (int d : p) {
        REQUIRE(G.tail(d) == at);
        at = G.head(d);
        len += w[d];
      }
      CHECK(at == x);
      CHECK(num_close(len, want[x]));
    }
  }
  bool moves = false;
  for (int d : tr.walk) moves = moves || G.tail(d) != G.head(d);
  if (events && moves) CHECK(seen > 0);
}

}  // namespace

TEST_CASE("square distances from A") {
  auto g = share(make_square(unit_weights()));
  auto tr = sweep_planar<Rational>(g, g->face_of(0, 0));
  std::vector<Rational> want{0, 1, 2, 1};
  for (int v = 0; v < 4; ++v) CHECK(tr.dist(0, v) == want[v]);
  check_face<Rational>(g, g->face_of(0, 1));
}

TEST_CASE("planar sweeps match Dijkstra at every event") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    CAPTURE(seed);
    auto g = share(make_planar_triangulation(40, 7, random_weights(seed), seed));
    check_face<Rational>(g, outer_face(*g, 7));
    check_face<double>(g, outer_face(*g, 7), seed <= 3);
  }
}

TEST_CASE("each dart pivots in at most once per sweep") {
  for (uint64_t seed = 11; seed <= 16; ++seed) {
    auto g = share(make_planar_triangulation(120, 12, random_weights(seed), seed));
    auto tr = sweep_planar<Rational>(g, outer_face(*g, 12));
    CHECK(tr.stats.per_slide_violations == 0);
    CHECK(tr.stats.max_pivots_per_dart <= 1);
  }
}

TEST_CASE("faces with repeated vertices, loops, parallel edges and zero weights") {
  // A path 0-1-2 has a single face visiting vertex 1 twice.
  EmbeddingInput path;
  path.n = 3;
  path.edges = {{0, 1, Rational(2), Rational(3)}, {1, 2, Rational(5), Rational(1)}};
  path.rotation = {{0}, {1, 2}, {3}};
  auto pg = share(EmbeddedGraph::build(path));
  check_face<Rational>(pg, 0);

  // Two parallel edges and a loop at vertex 0.
  EmbeddingInput multi;
  multi.n = 2;
  multi.edges = {{0, 1, Rational(1), Rational(4)}, {0, 1, Rational(2), Rational(2)}, {0, 0, Rational(3), Rational(3)}};
  multi.rotation = {{0, 4, 5, 2}, {1, 3}};
  auto mg = share(EmbeddedGraph::build(multi));
  REQUIRE(mg->genus() == 0);
  for (int f = 0; f < mg->num_faces(); ++f) check_face<Rational>(mg, f);

  for (uint64_t seed = 1; seed <= 4; ++seed) {
    auto rw = random_weights(seed);
    auto zw = [rw, seed](int d) { return (d * 7 + static_cast<int>(seed)) % 5 == 0 ? Rational(0) : rw(d); };
    auto g = share(make_planar_triangulation(25, 5, zw, seed));
    for (int f = 0; f < g->num_faces(); f += 9) check_face<Rational>(g, f, false);
  }
}
