#pragma once

#include <memory>
#include <vector>

#include "mssp/oracle.hpp"
#include "mssp/planar_sweep.hpp"
#include "mssp/genus_sweep.hpp"

namespace mssp {

// Mid-slide sample for the slack oracle: between two consecutive events of one slide the
// tree is fixed, so its coloring can be checked at lambda with eps = a quarter of the gap.
struct SlackSample {
  int slide = 0;
  int dart = -1;
  Rational lambda, eps;
  std::vector<uint8_t> red;
};

// Runs an exact sweep around `face` and samples every inter-event gap of positive length.
// The graph must be orientable; genus > 0 uses the grove sweep on its own triangulation, so
// samples refer to that triangulated graph, returned through *swept.
inline std::vector<SlackSample> sample_slack_states(std::shared_ptr<const EmbeddedGraph> g, int face,
                                                    std::shared_ptr<const EmbeddedGraph>* swept = nullptr) {
  struct Rec {
    int slide, dart;
    Rational lambda;
    std::vector<uint8_t> red;
  };
  std::vector<Rec> recs;
  auto observe = [&](const SweepView<Rational>& v) {
    if (v.dart < 0) return;
    const int u = v.g->tail(v.dart), w = v.g->head(v.dart);
    if (v.parent(u) != v.s_node || v.parent(w) != v.s_node) return;
    Rec r{v.slide, v.dart, v.lambda, std::vector<uint8_t>(v.g->num_vertices(), 0)};
    for (int x = 0; x < v.g->num_vertices(); ++x) {
      int top = x;
      while (v.parent(top) != v.s_node) top = v.parent(top);
      r.red[x] = top == u;
    }
    if (!recs.empty() && recs.back().slide == r.slide && recs.back().lambda == r.lambda) recs.back() = std::move(r);
    else recs.push_back(std::move(r));
  };
  std::shared_ptr<const EmbeddedGraph> used = g;
  if (g->genus() == 0) {
    PlanarSweep<Rational> sweep(g, face);
    sweep.set_observer(observe);
    sweep.run();
  } else {
    auto walk = SweepCore<Rational>::face_walk(*g, face);
    used = std::make_shared<const EmbeddedGraph>(triangulate(*g).g);
    GenusSweep<Rational> sweep(used, used->face_of(walk[0], 0));
    sweep.set_walk(walk);
    sweep.set_observer(observe);
    sweep.run();
  }
  if (swept) *swept = used;
  std::vector<SlackSample> out;
  for (size_t i = 0; i + 1 < recs.size(); ++i) {
    if (recs[i + 1].slide != recs[i].slide) continue;
    Rational gap = recs[i + 1].lambda - recs[i].lambda;
    if (gap <= 0) continue;
    Rational q = gap / 4;
    out.push_back({recs[i].slide, recs[i].dart, recs[i].lambda + q, q, recs[i].red});
  }
  return out;
}

}  // namespace mssp
