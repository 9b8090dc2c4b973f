#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mssp/dijkstra.hpp"
#include "mssp/embedded_graph.hpp"
#include "mssp/primal_tree.hpp"
#include "mssp/transcript.hpp"

namespace mssp {

// Moves a source around one face and maintains its shortest-path tree with parametric pivots.
// While the source s sits inside the slide dart u->v at parameter lambda, w(s->u) = lambda*w(v->u)
// and w(s->v) = (1-lambda)*w(u->v). The vertices under u are red, those under v blue; only
// blue->red darts lose slack, all at the same rate w_hat(uv).
//
// The primal tree is shared by all variants. Subclasses keep the slacks of non-tree darts and
// locate the active dart of minimum slack.
template <class Num>
class SweepCore {
 public:
  using Observer = std::function<void(const SweepView<Num>&)>;

  SweepCore(std::shared_ptr<const EmbeddedGraph> g, int face, SweepOptions opt)
      : g_(std::move(g)), opt_(opt), face_(face), w_(g_->weights<Num>()) {
    const auto& G = *g_;
    if (G.num_components() != 1) throw ContractError("sweep needs a connected graph");
    if (face < 0 || face >= G.num_faces()) throw std::invalid_argument("face " + std::to_string(face) + " out of range");
    for (int d = 0; d < G.num_darts(); ++d)
      if (w_[d] < 0) throw std::invalid_argument("negative weight on dart " + std::to_string(d));
  }
  virtual ~SweepCore() = default;

  void set_observer(Observer o) { observer_ = std::move(o); }

  Transcript<Num> run() {
    const auto& G = *g_;
    Transcript<Num> tr;
    tr.face = face_;
    tr.graph = g_;
    tr.walk = walk_.empty() ? face_walk(G, face_) : walk_;
    for (int d : tr.walk) tr.boundary.push_back(G.tail(d));
    const int n = G.num_vertices();
    tree_ = std::make_shared<PrimalTree<Num>>(0, true, 0x5eedULL + static_cast<uint64_t>(face_));
    std::vector<int> pred;
    auto dist = dijkstra<Num>(G, tr.boundary[0], w_, &pred);
    for (int v = 0; v < n; ++v) tree_->add_node(dist[v]);
    s_ = tree_->add_node(NumTraits<Num>::zero());
    std::vector<char> tree_edge(G.num_edges(), 0);
    for (int v = 0; v < n; ++v)
      if (pred[v] >= 0) {
        tree_->link(G.tail(pred[v]), v, pred[v]);
        tree_edge[edge_of(pred[v])] = 1;
      }
    events_ = &tr.events;
    stats_ = &tr.stats;
    dual_init(tree_edge, dist);
    tr.stats.dart_pivots.assign(G.num_darts(), 0);
    last_entry_.assign(G.num_darts(), -1);
    tr.version.push_back(tree_->snapshot());
    tr.stats.base_records = tree_->history_records();
    const int k = static_cast<int>(tr.walk.size());
    int slides = opt_.max_slides < 0 ? k : std::min(k, opt_.max_slides);
    for (int i = 0; i < slides; ++i) {
      slide(i, tr.walk[i]);
      int ver = tree_->snapshot();
      if (i + 1 < k) tr.version.push_back(ver);
    }
    tr.stats.history_records = tree_->history_records();
    tr.tree = tree_;
    return tr;
  }

  // Boundary walk of a face, starting just after its smallest dart.
  static std::vector<int> face_walk(const EmbeddedGraph& G, int f) {
    auto darts = G.face_darts(f);
    size_t lo = 0;
    for (size_t i = 1; i < darts.size(); ++i)
      if (darts[i] < darts[lo]) lo = i;
    std::vector<int> out;
    for (size_t i = 1; i <= darts.size(); ++i) out.push_back(darts[(lo + i) % darts.size()]);
    return out;
  }

 protected:
  // Builds the slack store from the initial tree (tree_edge marks tree edges).
  virtual void dual_init(const std::vector<char>& tree_edge, const std::vector<Num>& dist) = 0;
  // The source has entered slide dart d; split is true when u and v both hang below s already.
  virtual void slide_begin(int d, bool split) {
    (void)d;
    (void)split;
  }
  // Active dart of minimum slack while both u and v hang below s; d is the slide dart.
  virtual std::optional<std::pair<Num, int>> active_min(int d) = 0;
  // Subtracts delta from the slack of every active dart (and adds it to the reverses).
  virtual void active_shift(int d, const Num& delta) = 0;
  virtual Num dual_get(int dart) = 0;
  virtual bool dual_has(int edge) = 0;
  // s->v replaced the tree dart `leave` into v, which becomes non-tree with slacks (0, w_hat).
  virtual void source_pivot(int d, int leave) = 0;
  // Pivot x->y replacing tree dart `leave`: mid runs between Cut(z, y) and Link(x, y), done after.
  virtual void pivot_mid(int x_y, int leave) {
    (void)x_y;
    (void)leave;
  }
  virtual void pivot_done(int x_y, int leave) = 0;
  // Pivot x->u: the piece s->u leaves the tree; d keeps slack lambda*w_hat, rev d becomes 0.
  virtual void pivot_source_side(int x_y, int d) = 0;
  // Both pieces of d were in the tree at lambda = 1; edge d joins the tree.
  virtual void finalize_both(int d) { (void)d; }
  // d stays non-tree with final slacks a (reverse b).
  virtual void finalize_single(int d, const Num& a, const Num& b) = 0;
  // Zero-weight slide: rev d joins the tree and `leave` leaves it.
  virtual void reroot_swap(int d, int leave) = 0;
  // Extra consistency checks run with debug invariants.
  virtual void extra_check() {}

  void set_walk(std::vector<int> walk) { walk_ = std::move(walk); }
  PrimalTree<Num>& tree() { return *tree_; }
  int source_node() const { return s_; }
  const Num& lambda() const { return lambda_; }
  bool debug() const { return opt_.debug_invariants; }

  const EmbeddedGraph& graph() const { return *g_; }
  const std::vector<Num>& w() const { return w_; }
  Num what(int e) const { return w_[2 * e] + w_[2 * e + 1]; }
  Num dist(int v) const { return tree_->value(v); }
  Num slack(int d) const { return dist(g_->tail(d)) + w_[d] - dist(g_->head(d)); }
  SweepStats& stats() { return *stats_; }

 private:
  void record(EventKind kind, int entering, int leaving) {
    PivotEvent<Num> ev;
    ev.kind = kind;
    ev.slide = slide_;
    ev.lambda = lambda_;
    ev.entering = entering;
    ev.leaving = leaving;
    events_->push_back(ev);
    if (kind == EventKind::kPivot) {
      stats_->pivots++;
      int c = ++stats_->dart_pivots[entering];
      stats_->max_pivots_per_dart = std::max<long>(stats_->max_pivots_per_dart, c);
      if (last_entry_[entering] == slide_) stats_->per_slide_violations++;
      last_entry_[entering] = slide_;
    }
  }

  // Moves the source forward by delta slack units (lambda += delta / w_hat).
  void advance(int d, const Num& delta, bool both) {
    const auto& G = *g_;
    int u = G.tail(d), v = G.head(d);
    Num wh = what(edge_of(d));
    Num step = delta / wh;
    lambda_ += step;
    if (tree_->parent(u) == s_) tree_->add_subtree(step * w_[rev(d)], u);
    if (tree_->parent(v) == s_) tree_->add_subtree(-(step * w_[d]), v);
    if (both) active_shift(d, delta);
  }

  void slide(int i, int d) {
    const auto& G = *g_;
    slide_ = i;
    cur_dart_ = d;
    lambda_ = NumTraits<Num>::zero();
    int u = G.tail(d), v = G.head(d);
    if (u == v) return;
    MSSP_CHECK(tree_->parent(u) == -1, "slide must start at the root");
    Num wh = what(edge_of(d));
    if (wh == 0) {
      reroot(d);
      return;
    }
    tree_->link(s_, u, rev(d));
    if (tree_->label(v) == d) {
      tree_->cut(u, v);
      tree_->link(s_, v, d);
    }
    slide_begin(d, tree_->parent(v) == s_);
    notify(d);
    while (true) {
      if (tree_->parent(v) != s_) {
        // Only s->v can become tight; it always does before the source reaches v.
        Num delta = clamp_nonneg(dual_get(d));
        Num room = (NumTraits<Num>::one() - lambda_) * wh;
        if (delta > room) delta = room;
        advance(d, delta, false);
        int leave = tree_->label(v);
        int z = tree_->parent(v);
        tree_->cut(z, v);
        tree_->link(s_, v, d);
        source_pivot(d, leave);
        record(EventKind::kSourcePivot, d, leave);
        check(d);
        continue;
      }
      if (tree_->parent(u) != s_) break;
      auto best = active_min(d);
      Num room = (NumTraits<Num>::one() - lambda_) * wh;
      if (!best || !(best->first < room)) break;
      int x_y = best->second;
      advance(d, clamp_nonneg(best->first), true);
      int x = G.tail(x_y), y = G.head(x_y);
      int z = tree_->parent(y);
      int leave = tree_->label(y);
      tree_->cut(z, y);
      if (y != u) pivot_mid(x_y, leave);
      tree_->link(x, y, x_y);
      if (y == u) {
        pivot_source_side(x_y, d);
        record(EventKind::kPivot, x_y, rev(d));
      } else {
        pivot_done(x_y, leave);
        record(EventKind::kPivot, x_y, leave);
      }
      check(d);
    }
    finalize(d);
  }

  void finalize(int d) {
    const auto& G = *g_;
    int u = G.tail(d), v = G.head(d);
    Num wh = what(edge_of(d));
    Num rest = (NumTraits<Num>::one() - lambda_) * wh;
    if (tree_->parent(u) == s_) {
      advance(d, rest, true);
      lambda_ = NumTraits<Num>::one();
      check(d);
      tree_->cut(s_, u);
      tree_->cut(s_, v);
      tree_->link(v, u, rev(d));
      finalize_both(d);
    } else {
      advance(d, rest, false);
      lambda_ = NumTraits<Num>::one();
      tree_->cut(s_, v);
      Num du = dist(u), dv = dist(v);
      finalize_single(d, du + w_[d] - dv, dv + w_[rev(d)] - du);
    }
    check(-1);
  }

  // Zero-weight slide: the tree of u is also a shortest-path tree of v.
  void reroot(int d) {
    const auto& G = *g_;
    int u = G.tail(d), v = G.head(d);
    if (tree_->label(v) == d) {
      tree_->cut(u, v);
      tree_->link(v, u, rev(d));
      return;
    }
    int z = tree_->parent(v), leave = tree_->label(v);
    tree_->cut(z, v);
    tree_->link(v, u, rev(d));
    reroot_swap(d, leave);
    record(EventKind::kReroot, rev(d), leave);
    check(-1);
  }

  SweepView<Num> view(int d) const {
    SweepView<Num> vw;
    vw.g = g_.get();
    vw.slide = slide_;
    vw.dart = d;
    vw.lambda = lambda_;
    vw.s_node = s_;
    auto t = tree_;
    vw.dist = [t](int x) { return t->value(x); };
    vw.parent = [t](int x) { return t->parent(x); };
    vw.label = [t](int x) { return t->label(x); };
    return vw;
  }

  void notify(int d) {
    if (observer_) observer_(view(d));
  }

  // Certificate: tree darts are tight, all slacks nonnegative, stored slacks match.
  void check(int d) {
    notify(d >= 0 ? d : cur_dart_);
    if (!opt_.debug_invariants) return;
    const auto& G = *g_;
    const int n = G.num_vertices();
    auto bad = [&](const std::string& what) {
      throw ContractError("invariant violated in slide " + std::to_string(slide_) + ": " + what);
    };
    int se = d >= 0 ? edge_of(d) : -1;
    Num one = NumTraits<Num>::one();
    auto ws = [&](int dart) {
      // Weight of a slide-edge piece: dart d is s->v, rev d is s->u.
      return dart == d ? Num((one - lambda_) * w_[d]) : Num(lambda_ * w_[rev(d)]);
    };
    for (int x = 0; x < n; ++x) {
      int p = tree_->parent(x);
      if (p == -1) continue;
      int lab = tree_->label(x);
      Num want = p == s_ ? Num(dist(s_) + ws(lab)) : Num(dist(p) + w_[lab]);
      if (!num_close(want, dist(x))) bad("tree dart " + std::to_string(lab) + " is not tight");
    }
    Num tol = NumTraits<Num>::kExact ? NumTraits<Num>::zero() : Num(1e-7);
    for (int e = 0; e < G.num_edges(); ++e) {
      if (e == se) {
        int u = G.tail(d), v = G.head(d);
        if (tree_->parent(G.tail(d)) == s_ && tree_->parent(G.head(d)) == s_) {
          // A store that keeps the slide edge holds its own slacks lambda*w_hat and (1-lambda)*w_hat.
          if (dual_has(e)) {
            Num wh = what(e);
            if (!num_close(dual_get(d), Num(lambda_ * wh)) || !num_close(dual_get(rev(d)), Num((one - lambda_) * wh)))
              bad("slide edge slacks");
          }
          continue;
        }
        for (int piece : {d, rev(d)}) {
          int far = piece == d ? v : u;
          if (tree_->parent(far) == s_) continue;
          Num out = dist(s_) + ws(piece) - dist(far);
          if (out < -tol) bad("negative slack on s piece");
          if (dual_has(e)) {
            // Toward s the piece carries the same fraction of the opposite dart's weight.
            Num back = piece == d ? Num((one - lambda_) * w_[rev(d)]) : Num(lambda_ * w_[d]);
            Num in_val = dist(far) + back - dist(s_);
            // The stored pair names the piece by the slide dart's orientation.
            Num a = piece == d ? out : in_val;
            Num b = piece == d ? in_val : out;
            if (!num_close(dual_get(d), a) || !num_close(dual_get(rev(d)), b)) bad("stale slack on s piece " + std::to_string(piece) + " stored " +
                  NumTraits<Num>::to_string(dual_get(d)) + "," + NumTraits<Num>::to_string(dual_get(rev(d))) + " want " +
                  NumTraits<Num>::to_string(a) + "," + NumTraits<Num>::to_string(b) + " lambda " + NumTraits<Num>::to_string(lambda_));
          }
        }
        continue;
      }
      int a = 2 * e, b = a + 1;
      bool is_tree = tree_->label(G.head(a)) == a || tree_->label(G.head(b)) == b;
      for (int dd : {a, b})
        if (slack(dd) < -tol) bad("negative slack on dart " + std::to_string(dd));
      if (is_tree) {
        if (dual_has(e)) bad("tree edge " + std::to_string(e) + " in dual store");
        continue;
      }
      if (!dual_has(e)) bad("non-tree edge " + std::to_string(e) + " missing from dual store");
      for (int dd : {a, b})
        if (!num_close(dual_get(dd), slack(dd))) bad("stored slack of dart " + std::to_string(dd));
    }
    extra_check();
  }

  std::shared_ptr<const EmbeddedGraph> g_;
  SweepOptions opt_;
  int face_;
  std::vector<Num> w_;
  std::vector<int> walk_;
  std::shared_ptr<PrimalTree<Num>> tree_;
  int s_ = -1;
  int slide_ = 0;
  int cur_dart_ = -1;
  Num lambda_;
  std::vector<PivotEvent<Num>>* events_ = nullptr;
  SweepStats* stats_ = nullptr;
  std::vector<int> last_entry_;
  Observer observer_;
};

}  // namespace mssp
