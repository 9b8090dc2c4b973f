#pragma once

#include <memory>

#include "mssp/dual_forest.hpp"
#include "mssp/sweep_core.hpp"

namespace mssp {

// Planar sweep: the non-tree darts form a spanning tree of the dual, and the active darts are
// exactly the cotree path between the two faces beside the slide dart.
template <class Num>
class PlanarSweep : public SweepCore<Num> {
 public:
  PlanarSweep(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt = {})
      : SweepCore<Num>(g, face, opt) {
    if (!g->orientable() || g->genus() != 0) throw ContractError("planar sweep needs a planar embedding");
  }

 protected:
  void dual_init(const std::vector<char>& tree_edge, const std::vector<Num>& dist) override {
    const auto& G = this->graph();
    std::vector<uint32_t> keys(G.num_darts());
    for (int d = 0; d < G.num_darts(); ++d) keys[d] = G.key(d);
    cotree_ = DualForest<Num>(G.num_faces(), std::move(keys));
    const auto& w = this->w();
    for (int e = 0; e < G.num_edges(); ++e) {
      if (tree_edge[e]) continue;
      int a = 2 * e, b = a + 1;
      Num sa = dist[G.tail(a)] + w[a] - dist[G.head(a)];
      Num sb = dist[G.tail(b)] + w[b] - dist[G.head(b)];
      cotree_.link(G.face_of(a, 0), G.face_of(a, 1), a, sa, sb);
    }
  }

  // Active darts run along the cotree path between the two faces of the slide dart, in the
  // direction of the slide dart's own dual.
  std::optional<std::pair<Num, int>> active_min(int d) override {
    const auto& G = this->graph();
    auto best = cotree_.min_path(G.face_of(d, 0), G.face_of(d, 1));
    if (!best) return std::nullopt;
    return std::make_pair(best->value, best->dart);
  }

  void active_shift(int d, const Num& delta) override {
    const auto& G = this->graph();
    int from = G.face_of(d, 0), to = G.face_of(d, 1);
    if (from != to) cotree_.add_path(-delta, from, to);
  }

  Num dual_get(int dart) override { return cotree_.get(dart); }
  bool dual_has(int edge) override { return cotree_.has_edge(edge); }

  void source_pivot(int d, int leave) override { swap(edge_of(d), leave, NumTraits<Num>::zero(), this->what(edge_of(leave))); }
  void pivot_done(int x_y, int leave) override { swap(edge_of(x_y), leave, NumTraits<Num>::zero(), this->what(edge_of(leave))); }
  void pivot_source_side(int x_y, int d) override {
    swap(edge_of(x_y), rev(d), NumTraits<Num>::zero(), this->lambda() * this->what(edge_of(d)));
  }
  void finalize_single(int d, const Num& a, const Num& b) override { swap(edge_of(d), d, a, b); }
  void reroot_swap(int d, int leave) override { swap(edge_of(d), leave, NumTraits<Num>::zero(), this->what(edge_of(leave))); }

 private:
  // Edge leave_edge leaves the cotree; enter_dart joins it with slack a (reverse b).
  void swap(int leave_edge, int enter_dart, const Num& a, const Num& b) {
    const auto& G = this->graph();
    cotree_.cut_edge(leave_edge);
    cotree_.link(G.face_of(enter_dart, 0), G.face_of(enter_dart, 1), enter_dart, a, b);
  }

  DualForest<Num> cotree_;
};

template <class Num>
Transcript<Num> sweep_planar(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt = {}) {
  PlanarSweep<Num> s(std::move(g), face, opt);
  return s.run();
}

}  // namespace mssp
