#pragma once

#include <memory>
#include <string>

#include "mssp/double_cover.hpp"
#include "mssp/genus_sweep.hpp"
#include "mssp/planar_sweep.hpp"

namespace mssp {

// Distances from every vertex of one face, for any connected cellular embedding. Planar and
// orientable inputs are swept directly; non-orientable ones through the orientable double cover.
template <class Num>
struct FaceSweep {
  std::shared_ptr<const EmbeddedGraph> graph;
  int face = -1;
  std::string engine;            // planar, genus, cover-planar or cover-genus
  std::vector<int> walk;         // base darts around the face
  std::vector<int> boundary;     // base vertices, tail(walk[i])
  Transcript<Num> transcript;    // on the base graph, or on the cover
  std::shared_ptr<const DoubleCover> cover;

  bool on_face(int u) const { return position(u) >= 0; }

  Num dist(int u, int v) const {
    check_vertex(v);
    if (!cover) return transcript.dist(u, v);
    int src = cover_source(u);
    Num a = transcript.dist(src, cover->vertex(v, 0)), b = transcript.dist(src, cover->vertex(v, 1));
    return b < a ? b : a;
  }

  std::vector<int> path(int u, int v) const {
    check_vertex(v);
    if (!cover) return transcript.path(u, v);
    int src = cover_source(u);
    int t0 = cover->vertex(v, 0), t1 = cover->vertex(v, 1);
    int t = transcript.dist(src, t1) < transcript.dist(src, t0) ? t1 : t0;
    return project_walk(*cover, transcript.path(src, t));
  }

  const SweepStats& stats() const { return transcript.stats; }

 private:
  int position(int u) const {
    for (size_t i = 0; i < boundary.size(); ++i)
      if (boundary[i] == u) return static_cast<int>(i);
    return -1;
  }
  int cover_source(int u) const {
    int i = position(u);
    if (i < 0) throw std::invalid_argument("vertex " + std::to_string(u) + " is not on the swept face");
    return transcript.boundary[i];
  }
  void check_vertex(int v) const {
    if (v < 0 || v >= graph->num_vertices()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
};

template <class Num>
Transcript<Num> sweep_orientable(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt, std::string* engine) {
  if (g->genus() == 0) {
    if (engine) *engine = "planar";
    return sweep_planar<Num>(std::move(g), face, opt);
  }
  if (engine) *engine = "genus";
  return sweep_genus<Num>(std::move(g), face, opt);
}

template <class Num>
FaceSweep<Num> sweep_face(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt = {}) {
  if (g->num_components() != 1) throw ContractError("sweep needs a connected graph");
  if (face < 0 || face >= g->num_faces()) throw std::invalid_argument("face " + std::to_string(face) + " out of range");
  FaceSweep<Num> out;
  out.graph = g;
  out.face = face;
  if (g->orientable()) {
    out.transcript = sweep_orientable<Num>(g, face, opt, &out.engine);
    out.walk = out.transcript.walk;
    out.boundary = out.transcript.boundary;
    return out;
  }
  auto cover = std::make_shared<DoubleCover>(build_double_cover(*g));
  int lifted = lifted_face(*cover, *g, face);
  auto dg = std::shared_ptr<const EmbeddedGraph>(cover, &cover->d);
  out.transcript = sweep_orientable<Num>(dg, lifted, opt, &out.engine);
  out.engine = "cover-" + out.engine;
  out.cover = cover;
  out.walk = project_walk(*cover, out.transcript.walk);
  for (int x : out.transcript.boundary) out.boundary.push_back(cover->base_vertex(x));
  return out;
}

}  // namespace mssp
