#include <doctest.h>

#include <set>

#include "mssp/generate.hpp"
#include "mssp/surface.hpp"

using namespace mssp;

namespace {

EdgeInput edge(int u, int v, int w, std::optional<int> wr = std::nullopt, bool sig = false) {
  EdgeInput e;
  e.u = u;
  e.v = v;
  e.w_uv = w;
  if (wr) e.w_vu = Rational(*wr);
  e.sig = sig;
  return e;
}

// Every dart state lies in exactly one face, and faces cover each edge side twice.
void check_face_partition(const EmbeddedGraph& g) {
  std::vector<int> seen(2 * g.num_darts(), 0);
  for (int f = 0; f < g.num_faces(); ++f)
    for (int st : g.face_states(f)) {
      seen[st]++;
      CHECK(g.face_of(st / 2, st % 2) == f);
    }
  // Each orbit is listed once; its mirror orbit is the same face.
  int covered = 0;
  for (int x : seen) covered += x;
  CHECK(covered == g.num_darts());
}

}  // namespace

TEST_CASE("triangle on the sphere") {
  EmbeddingInput in;
  in.n = 3;
  in.edges = {edge(0, 1, 1, 1), edge(1, 2, 1, 1), edge(2, 0, 1, 1)};
  in.rotation = {{0, 5}, {2, 1}, {4, 3}};
  auto g = EmbeddedGraph::build(in);
  CHECK(g.num_faces() == 2);
  CHECK(g.euler_characteristic() == 2);
  CHECK(g.genus() == 0);
  CHECK(g.orientable());
  check_face_partition(g);
}

TEST_CASE("torus grid 3x3") {
  auto g = make_torus_grid(3, 3, unit_weights());
  CHECK(g.num_vertices() == 9);
  CHECK(g.num_edges() == 18);
  CHECK(g.num_faces() == 9);
  CHECK(g.genus() == 1);
  CHECK(g.orientable());
  for (int v = 0; v < 9; ++v) CHECK(g.degree(v) == 4);
  for (int f = 0; f < g.num_faces(); ++f) CHECK(g.face_size(f) == 4);
  check_face_partition(g);
}

TEST_CASE("single loop on the sphere") {
  auto g = make_single_loop(unit_weights());
  CHECK(g.num_faces() == 2);
  CHECK(g.genus() == 0);
}

TEST_CASE("non-orientable fixtures") {
  auto k = make_klein_grid(3, 3, unit_weights());
  CHECK_FALSE(k.orientable());
  CHECK(k.euler_characteristic() == 0);
  CHECK(k.genus() == 2);
  check_face_partition(k);
  auto p = make_projective_wheel(3, unit_weights());
  CHECK_FALSE(p.orientable());
  CHECK(p.euler_characteristic() == 1);
  CHECK(p.genus() == 1);
  check_face_partition(p);
}

TEST_CASE("generated surfaces have the expected topology") {
  auto g2 = make_genus_glued(2, 60, random_weights(3), 3);
  CHECK(g2.orientable());
  CHECK(g2.genus() == 2);
  auto g3 = make_genus_glued(3, 90, unit_weights(), 1);
  CHECK(g3.genus() == 3);
  auto pl = make_planar_triangulation(200, 14, random_weights(5), 5);
  CHECK(pl.genus() == 0);
  int outer = pl.face_size(pl.face_of(0, 0)) == 14 ? pl.face_of(0, 0) : pl.face_of(0, 1);
  CHECK(pl.face_size(outer) == 14);
  for (int f = 0; f < pl.num_faces(); ++f)
    if (f != outer) CHECK(pl.face_size(f) == 3);

  auto ann = census(make_annulus(5, 3, unit_weights()));
  REQUIRE(ann.size() == 1);
  CHECK(ann[0].holes == 2);
  CHECK(ann[0].genus == 0);
  auto pants = census(make_pants(6, 4, unit_weights()));
  CHECK(pants[0].holes == 3);
  auto mob = census(make_moebius(5, 2, unit_weights()));
  CHECK(mob[0].holes == 1);
  CHECK_FALSE(mob[0].orientable);
  CHECK(mob[0].chi == 0);
}

TEST_CASE("random weights are dyadic in [1, 100]") {
  auto w = random_weights(7);
  for (int i = 0; i < 100; ++i) {
    Rational q = w(i);
    CHECK(q >= 1);
    CHECK(q <= 100);
    CHECK(Rational(q.get_d()) == q);
  }
}

TEST_CASE("missing reversal is synthesized") {
  EmbeddingInput in;
  in.n = 3;
  in.edges = {edge(0, 1, 2), edge(1, 2, 3, 4), edge(2, 0, 5, 6)};
  in.rotation = {{0, 5}, {2, 1}, {4, 3}};
  auto g = EmbeddedGraph::build(in);
  CHECK(g.synthesized(1));
  CHECK_FALSE(g.synthesized(0));
  CHECK(g.weight(1) == 2 * (2 + 3 + 4 + 5 + 6));
}

TEST_CASE("bad embeddings are rejected with a message") {
  EmbeddingInput in;
  in.n = 3;
  in.edges = {edge(0, 1, 1, 1), edge(1, 2, 1, 1), edge(2, 0, 1, 1)};
  SUBCASE("dart listed twice") {
    in.rotation = {{0, 0}, {2, 1}, {4, 3}};
    CHECK_THROWS_AS(EmbeddedGraph::build(in), EmbeddingError);
  }
  SUBCASE("dart at the wrong vertex") {
    in.rotation = {{0, 3}, {2, 1}, {4, 5}};
    CHECK_THROWS_AS(EmbeddedGraph::build(in), EmbeddingError);
  }
  SUBCASE("negative weight") {
    in.edges[0].w_uv = -1;
    in.rotation = {{0, 5}, {2, 1}, {4, 3}};
    CHECK_THROWS_AS(EmbeddedGraph::build(in), EmbeddingError);
  }
  SUBCASE("vertex out of range") {
    in.edges[2].v = 7;
    in.rotation = {{0, 5}, {2, 1}, {4, 3}};
    CHECK_THROWS_AS(EmbeddedGraph::build(in), EmbeddingError);
  }
}

TEST_CASE("cutting the triangle gives two disks") {
  Surface s = make_surface(make_triangle(unit_weights()));
  Curve c;
  c.darts = {0, 2, 4};
  auto r = cut_along(s, c);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 2);
  for (auto& x : cs) CHECK(x.is_disk());
  CHECK(r.new_holes.size() == 2);
  CHECK(r.copies.size() == 3);
  for (auto [l, rr] : r.copies) CHECK(l != rr);
}

TEST_CASE("cutting the torus along a meridian gives an annulus") {
  Surface s = make_surface(make_torus_grid(3, 3, unit_weights()));
  Curve c;
  // Horizontal cycle along row 0: right edges 0, 2, 4 (ids 2*v).
  c.darts = {0, 4, 8};
  auto r = cut_along(s, c);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].holes == 2);
  CHECK(cs[0].genus == 0);
  CHECK(cs[0].orientable);
  CHECK(r.surface.g.num_vertices() == 12);
  // Pasting both holes back yields a sphere.
  Surface p = paste_disk(paste_disk(r.surface, r.new_holes[0]), r.new_holes[1]);
  auto pc = census(p);
  CHECK(pc[0].is_sphere());
}

TEST_CASE("separating cut on a genus-two surface") {
  auto g = make_genus_glued(2, 40, unit_weights(), 0);
  Surface s = make_surface(g);
  // The glued triangle separates the two handles; its vertices are the only ones of degree > 6.
  std::vector<int> hub;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) > 6) hub.push_back(v);
  REQUIRE(hub.size() == 3);
  std::vector<int> cyc;
  auto dart_between = [&](int a, int b) {
    for (int d : g.darts_at(a))
      if (g.head(d) == b) return d;
    return -1;
  };
  cyc = {dart_between(hub[0], hub[1]), dart_between(hub[1], hub[2]), dart_between(hub[2], hub[0])};
  for (int d : cyc) REQUIRE(d >= 0);
  Curve c;
  c.darts = cyc;
  auto r = cut_along(s, c);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 2);
  for (auto& x : cs) {
    CHECK(x.genus == 1);
    CHECK(x.holes == 1);
  }
}

TEST_CASE("contracting a boundary of the annulus gives a disk") {
  Surface s = make_annulus(5, 3, unit_weights());
  auto hs = s.holes();
  REQUIRE(hs.size() == 2);
  auto r = contract_boundary(s, hs[0]);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].is_disk());
  CHECK(r.surface.g.num_vertices() == s.g.num_vertices() - 5 + 1);
  CHECK(r.surface.g.degree(r.apex) == 5);
}

TEST_CASE("cutting a Moebius band along its core") {
  Surface s = make_moebius(4, 2, unit_weights());
  const auto& g = s.g;
  // Middle rail j = 1 with the twist fixing it: (i,1) -> (i+1,1), closes via (4,1) ~ (0,1).
  std::vector<int> cyc;
  for (int i = 0; i < 4; ++i) {
    int a = i * 3 + 1, b = ((i + 1) % 4) * 3 + 1;
    int found = -1;
    for (int d : g.darts_at(a))
      if (g.head(d) == b) found = d;
    REQUIRE(found >= 0);
    cyc.push_back(found);
  }
  Curve c;
  c.darts = cyc;
  auto r = cut_along(s, c);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].orientable);
  CHECK(cs[0].holes == 2);
  CHECK(cs[0].genus == 0);
  CHECK(r.new_holes.size() == 1);
}

TEST_CASE("contracting the Moebius boundary gives a projective plane") {
  Surface s = make_moebius(5, 1, unit_weights());
  auto r = contract_boundary(s, s.holes()[0]);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].holes == 0);
  CHECK_FALSE(cs[0].orientable);
  CHECK(cs[0].chi == 1);
}

TEST_CASE("lasso cut: a loop with a tail") {
  // Torus grid, cycle along row 0 plus a tail from (0,1) down to (0,0) and back.
  auto g = make_torus_grid(4, 4, unit_weights());
  Surface s = make_surface(g);
  auto dart_between = [&](int a, int b) {
    for (int d : g.darts_at(a))
      if (g.head(d) == b) return d;
    return -1;
  };
  int t = dart_between(4, 0);
  Curve c;
  c.darts = {t, dart_between(0, 1), dart_between(1, 2), dart_between(2, 3), dart_between(3, 0), rev(t)};
  auto r = cut_along(s, c);
  auto cs = census(r.surface);
  REQUIRE(cs.size() == 1);
  // Core cut leaves an annulus; the tail slit merges into one of its holes.
  CHECK(cs[0].holes == 2);
  CHECK(cs[0].genus == 0);
}

TEST_CASE("instance generator kinds") {
  auto t = generate_instance("torus-grid", 9, 0, 4);
  CHECK(t.g.num_vertices() == 9);
  CHECK(t.g.genus() == 1);
  auto g2 = generate_instance("genus-g-glued", 200, 2, 4);
  CHECK(census(g2)[0].genus == 2);
  auto k = generate_instance("klein-grid", 16, 0, 1);
  CHECK_FALSE(k.g.orientable());
  auto a1 = generate_instance("planar-delaunay-like", 100, 0, 11);
  auto a2 = generate_instance("planar-delaunay-like", 100, 0, 11);
  REQUIRE(a1.g.num_darts() == a2.g.num_darts());
  bool same = true;
  for (int d = 0; d < a1.g.num_darts(); ++d)
    same &= a1.g.weight(d) == a2.g.weight(d) && a1.g.next_at(d) == a2.g.next_at(d) && a1.g.key(d) == a2.g.key(d);
  CHECK(same);
  CHECK(census(generate_instance("annulus", 30, 0, 2))[0].holes == 2);
  CHECK_THROWS(generate_instance("hexagon", 30, 0, 2));
}

TEST_CASE("merging faces keeps the surface") {
  auto g = make_genus_glued(2, 60, random_weights(1), 1);
  int fd = -1;
  auto m = merge_faces(g, 20, 5, &fd);
  CHECK(m.genus() == 2);
  CHECK(m.num_faces() == g.num_faces() - 19);
  REQUIRE(fd >= 0);
  CHECK(m.face_size(m.face_of(fd, 0)) >= 20);
}
