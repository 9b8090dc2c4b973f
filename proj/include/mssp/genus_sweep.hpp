#pragma once

#include <memory>
#include <set>
#include <tuple>

#include "mssp/grove.hpp"
#include "mssp/sweep_core.hpp"
#include "mssp/topology.hpp"

namespace mssp {

// Sweep on an orientable surface of genus g >= 1. The non-tree darts are kept in a grove; while
// both u and v hang below s the primal forest has a red and a blue component, and the active
// darts are exactly the darts of green anchor paths (one red side, one blue side). Green paths
// sit in a priority queue keyed by their minimum slack; shifts are deferred with per-path offsets.
//
// The slide edge stays in the cut graph during the bisection, carrying its own slacks.
template <class Num>
class GenusSweep : public SweepCore<Num> {
 public:
  enum Color { kNone = -1, kRed = 0, kBlue = 1, kGreen = 2, kPurple = 3 };

  // g must have faces of at most three sides; `naive` disables the queue and the lazy offsets.
  GenusSweep(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt = {}, bool naive = false)
      : SweepCore<Num>(g, face, opt), grove_(*g), naive_(naive) {
    if (g->genus() < 1) throw ContractError("genus sweep needs genus at least 1");
    grove_.on_destroy = [this](int id) {
      if (id < static_cast<int>(rec_.size())) drop(id);
    };
  }

  using SweepCore<Num>::set_walk;

  int green_count() const {
    int c = 0;
    for (auto& r : rec_) c += r.color == kGreen;
    return c;
  }

 protected:
  void dual_init(const std::vector<char>& tree_edge, const std::vector<Num>& dist) override {
    const auto& G = this->graph();
    const auto& w = this->w();
    std::vector<char> in_x(G.num_edges());
    for (int e = 0; e < G.num_edges(); ++e) in_x[e] = !tree_edge[e];
    grove_.build(in_x, [&](int d) { return Num(dist[G.tail(d)] + w[d] - dist[G.head(d)]); });
    sync_records();
  }

  void slide_begin(int d, bool split) override {
    if (!split) return;
    glink(d, NumTraits<Num>::zero(), this->what(edge_of(d)));
    activate(d);
  }

  std::optional<std::pair<Num, int>> active_min(int d) override {
    if (!active_) return std::nullopt;
    std::optional<std::pair<Num, int>> best;
    if (naive_) {
      for (int id = 0; id < grove_.capacity(); ++id)
        if (grove_.path(id).alive && rec_[id].color == kGreen) {
          auto b = grove_.min_path(id, rec_[id].reversed);
          if (!best || less(b->value, b->dart, best->first, best->second)) best = std::make_pair(b->value, b->dart);
        }
    } else if (!queue_.empty()) {
      const auto& top = *queue_.begin();
      best = std::make_pair(Num(std::get<0>(top) - total_), std::get<2>(top));
    }
    // The slide edge's own active dart reaches zero exactly at the end of the slide.
    if (best && edge_of(best->second) == edge_of(d)) return std::nullopt;
    return best;
  }

  void active_shift(int, const Num& delta) override {
    total_ += delta;
    if (naive_)
      for (int id = 0; id < grove_.capacity(); ++id)
        if (grove_.path(id).alive) flush(id);
  }

  Num dual_get(int dart) override {
    Num v = grove_.forest().get(dart);
    if (!active_) return v;
    int id = grove_.subtree_of_edge(edge_of(dart));
    const Rec& r = rec_[id];
    if (r.color != kGreen || r.off == total_) return v;
    auto al = grove_.along(id, dart);
    if (!al) return v;
    Num pending = total_ - r.off;
    return *al != r.reversed ? Num(v - pending) : Num(v + pending);
  }

  bool dual_has(int edge) override { return grove_.forest().has_edge(edge); }

  void source_pivot(int d, int leave) override {
    glink(leave, NumTraits<Num>::zero(), this->what(edge_of(leave)));
    Num wh = this->what(edge_of(d));
    set_dart(d, this->lambda() * wh, (NumTraits<Num>::one() - this->lambda()) * wh);
    activate(d);
  }

  void pivot_mid(int, int leave) override {
    ops_ = 0;
    red_before_ = count(kRed);
    blue_before_ = count(kBlue);
    int id = glink(leave, NumTraits<Num>::zero(), this->what(edge_of(leave)));
    if (this->debug() && grove_.count_faces() != 3) throw ContractError("reduced cut graph mid-pivot is not red, blue, purple");
    auto al = grove_.along(id, leave);
    MSSP_CHECK(al.has_value(), "new dual edge off its anchor path");
    // The face on the head side of (zy)* contains y: the purple face.
    for (auto [p, from_b] : grove_.face_walk(id, !*al)) {
      (void)from_b;
      if (rec_[p].color == kNone) continue;
      drop(p);
      touched_.push_back(p);
    }
  }

  void pivot_done(int x_y, int) override {
    gcut(edge_of(x_y));
    if (naive_) {
      for (int id = 0; id < grove_.capacity(); ++id) drop(id);
      for (int id = 0; id < grove_.capacity(); ++id) colorize(id);
    } else {
      for (int id : touched_) colorize(id);
    }
    touched_.clear();
    auto& st = this->stats();
    st.queue_ops += ops_;
    st.max_queue_ops_per_pivot = std::max(st.max_queue_ops_per_pivot, ops_);
    long slack = std::max(0L, red_before_ - count(kRed)) + std::max(0L, count(kBlue) - blue_before_);
    if (!naive_ && ops_ > 20 + slack) st.queue_bound_violations++;
  }

  void pivot_source_side(int x_y, int d) override {
    deactivate();
    gcut(edge_of(x_y));
    set_dart(d, this->lambda() * this->what(edge_of(d)), NumTraits<Num>::zero());
  }

  void finalize_both(int d) override {
    deactivate();
    gcut(edge_of(d));
  }

  void finalize_single(int d, const Num& a, const Num& b) override { set_dart(d, a, b); }

  void reroot_swap(int d, int leave) override {
    glink(leave, NumTraits<Num>::zero(), this->what(edge_of(leave)));
    gcut(edge_of(d));
  }

  void extra_check() override {
    auto fail = [](const std::string& m) { throw ContractError("genus sweep: " + m); };
    std::string bad = grove_.validate();
    if (!bad.empty()) fail(bad);
    const auto& G = this->graph();
    auto& T = this->tree();
    int s = this->source_node();
    int kappa = 0;
    for (int x = 0; x < G.num_vertices(); ++x) kappa += T.parent(x) == s;
    if (grove_.count_faces() != std::max(1, kappa)) fail("reduced cut graph faces do not match the primal forest");
    if (!active_) return;
    std::optional<std::pair<Num, int>> naive;
    int greens = 0;
    for (int id = 0; id < grove_.capacity(); ++id) {
      if (!grove_.path(id).alive) continue;
      const Rec& r = rec_[id];
      auto ds = grove_.path_darts(id);
      int c0 = color_of(G.tail(ds[0])), c1 = color_of(G.head(ds[0]));
      for (int dd : ds)
        if (color_of(G.tail(dd)) != c0 || color_of(G.head(dd)) != c1) fail("mixed colors along an anchor path");
      int want = c0 == c1 ? c0 : kGreen;
      if (r.color != want) fail("stale color on path " + std::to_string(id));
      if (want != kGreen) {
        if (r.queued) fail("non-green path in the queue");
        continue;
      }
      ++greens;
      if (r.reversed != (c0 == kRed)) fail("green path direction");
      if (!naive_ && !r.queued) fail("green path missing from the queue");
      auto b = grove_.min_path(id, r.reversed);
      Num truth = b->value - (total_ - r.off);
      if (!naive_ && !num_close(truth, Num(r.key - total_))) fail("queue key out of date on path " + std::to_string(id));
      if (!naive || less(truth, b->dart, naive->first, naive->second)) naive = std::make_pair(truth, b->dart);
    }
    if (!naive_) {
      if (static_cast<int>(queue_.size()) != greens) fail("queue size");
      if (naive && !num_close(Num(std::get<0>(*queue_.begin()) - total_), naive->first)) fail("queue minimum");
    }
  }

 private:
  struct Rec {
    int color = kNone;
    bool reversed = false;
    bool queued = false;
    Num key, off;
    int dart = -1;
  };
  using Entry = std::tuple<Num, uint32_t, int, int>;  // key, tie key, dart, path

  bool less(const Num& a, int da, const Num& b, int db) const {
    if (a != b) return a < b;
    const auto& G = this->graph();
    if (G.key(da) != G.key(db)) return G.key(da) < G.key(db);
    return da < db;
  }

  void sync_records() {
    if (static_cast<int>(rec_.size()) < grove_.capacity()) rec_.resize(grove_.capacity());
    auto& st = this->stats();
    st.max_paths = std::max(st.max_paths, grove_.num_paths());
    st.max_branch_points = std::max(st.max_branch_points, grove_.num_branch_points());
  }

  int glink(int d, const Num& a, const Num& b) {
    int id = grove_.link(d, a, b);
    after_grove_op();
    return id;
  }
  void gcut(int e) {
    grove_.cut(e);
    after_grove_op();
  }
  void after_grove_op() {
    sync_records();
    for (int id : grove_.created) {
      rec_[id] = Rec{};
      if (active_) touched_.push_back(id);
    }
    grove_.created.clear();
  }

  void set_dart(int d, const Num& a, const Num& b) {
    if (d & 1) grove_.forest().set_values(edge_of(d), b, a);
    else grove_.forest().set_values(edge_of(d), a, b);
  }

  int color_of(int x) {
    auto& T = this->tree();
    if (T.in_subtree(x, u_)) return kRed;
    if (T.in_subtree(x, v_)) return kBlue;
    return kPurple;
  }

  long count(int c) const {
    long k = 0;
    for (int id = 0; id < static_cast<int>(rec_.size()); ++id) k += rec_[id].color == c;
    return k;
  }

  // Applies the deferred shift of a queued path to its darts.
  void flush(int id) {
    Rec& r = rec_[id];
    if (r.color != kGreen || r.off == total_) return;
    grove_.add_path(id, r.reversed, Num(r.off - total_));
    r.off = total_;
  }

  // Flushes and uncolors path id.
  void drop(int id) {
    Rec& r = rec_[id];
    if (r.color == kNone) return;
    flush(id);
    if (r.queued) {
      queue_.erase(Entry{r.key, this->graph().key(r.dart), r.dart, id});
      ++ops_;
    }
    r = Rec{};
  }

  void colorize(int id) {
    if (id >= grove_.capacity() || !grove_.path(id).alive || rec_[id].color != kNone) return;
    const auto& G = this->graph();
    Rec& r = rec_[id];
    int da = grove_.path(id).da;
    int c0 = color_of(G.tail(da)), c1 = color_of(G.head(da));
    MSSP_CHECK(c0 != kPurple && c1 != kPurple, "coloring with a purple face");
    if (c0 == c1) {
      r.color = c0;
      return;
    }
    r.color = kGreen;
    r.reversed = c0 == kRed;
    r.off = total_;
    if (naive_) return;
    auto b = grove_.min_path(id, r.reversed);
    r.queued = true;
    r.key = b->value + total_;
    r.dart = b->dart;
    queue_.insert(Entry{r.key, G.key(r.dart), r.dart, id});
    ++ops_;
  }

  void activate(int d) {
    const auto& G = this->graph();
    u_ = G.tail(d);
    v_ = G.head(d);
    active_ = true;
    total_ = NumTraits<Num>::zero();
    touched_.clear();
    for (int id = 0; id < grove_.capacity(); ++id) colorize(id);
  }

  void deactivate() {
    if (!active_) return;
    for (int id = 0; id < grove_.capacity(); ++id) drop(id);
    active_ = false;
    queue_.clear();
  }

  Grove<Num> grove_;
  bool naive_;
  std::vector<Rec> rec_;
  std::set<Entry> queue_;
  std::vector<int> touched_;
  Num total_ = NumTraits<Num>::zero();
  bool active_ = false;
  int u_ = -1, v_ = -1;
  long ops_ = 0, red_before_ = 0, blue_before_ = 0;
};

// Sweeps face f of an orientable surface of genus >= 1. Faces are first triangulated with heavy
// diagonals (original darts keep their ids); the transcript refers to the original graph.
template <class Num>
Transcript<Num> sweep_genus(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt = {}, bool naive = false) {
  auto walk = SweepCore<Num>::face_walk(*g, face);
  auto red = triangulate(*g);
  auto gt = std::make_shared<const EmbeddedGraph>(std::move(red.g));
  GenusSweep<Num> s(gt, gt->face_of(walk[0], 0), opt, naive);
  s.set_walk(walk);
  auto tr = s.run();
  tr.face = face;
  tr.graph = std::move(g);
  return tr;
}

}  // namespace mssp
