#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mssp/dual_forest.hpp"
#include "mssp/embedded_graph.hpp"

namespace mssp {

// The cut graph X (a set of dual edges) split into edge-disjoint subtrees, one per cut path of
// the core X-bar (X with degree-1 vertices stripped) together with the hair hanging off that
// path. Every subtree is its own dual-forest component. A branch point of X-bar (a face with
// three core edges) is stored as three nodes, one per incident path; any other face is one node
// whose id is the face id.
//
// Faces must have at most three sides. Each component is kept rooted at its anchor a, so the
// subtree containing a node is found from the root.
template <class Num>
class Grove {
 public:
  struct Path {
    int a = -1, b = -1;    // anchor nodes
    int da = -1, db = -1;  // dual darts leaving a (resp. b) along the path
    bool alive = false;
  };

  // Called before a subtree is dismantled, while its values are still addressable.
  std::function<void(int)> on_destroy;
  // Subtrees created since the caller last cleared it.
  std::vector<int> created;

  Grove() = default;
  explicit Grove(const EmbeddedGraph& g) : g_(&g) {
    if (!g.orientable()) throw ContractError("grove needs an orientable embedding");
    for (int f = 0; f < g.num_faces(); ++f)
      if (g.face_size(f) > 3) throw ContractError("grove needs faces with at most three sides");
  }

  // in_x marks the edges whose duals form X; val(dart) gives the initial dart values.
  void build(const std::vector<char>& in_x, const std::function<Num(int)>& val) {
    const auto& G = *g_;
    const int nf = G.num_faces();
    std::vector<uint32_t> keys(G.num_darts());
    for (int d = 0; d < G.num_darts(); ++d) keys[d] = G.key(d);
    df_ = DualForest<Num>(nf, std::move(keys));
    node_face_.resize(nf);
    for (int f = 0; f < nf; ++f) node_face_[f] = f;
    node_path_.assign(nf, -1);
    node_end_.assign(nf, -1);
    copies_.assign(nf, {});
    for (int f = 0; f < nf; ++f) copies_[f] = {f};
    paths_.clear();
    free_paths_.clear();
    pool_.clear();

    for (int e = 0; e < G.num_edges(); ++e)
      if (in_x[e] && G.face_of(2 * e, 0) == G.face_of(2 * e, 1)) throw ContractError("cut graph with a dual loop");
    auto core = strip(in_x);
    std::vector<int> xdeg(nf, 0);
    for (int e = 0; e < G.num_edges(); ++e)
      if (core[e]) {
        xdeg[G.face_of(2 * e, 0)]++;
        xdeg[G.face_of(2 * e, 1)]++;
      }
    std::vector<int> branch;
    for (int f = 0; f < nf; ++f)
      if (xdeg[f] == 3) branch.push_back(f);
    if (branch.empty()) throw ContractError("cut graph has no branch point");
    std::vector<int> used(nf, 0);
    for (int f : branch) copies_[f] = {f, new_node(f), new_node(f)};
    auto copy_for = [&](int f) { return copies_[f][used[f]++]; };
    std::vector<char> assigned(G.num_edges(), 0);
    for (int f : branch) {
      for (int d0 : out_darts(f)) {
        if (!core[edge_of(d0)] || assigned[edge_of(d0)]) continue;
        std::vector<int> walk{d0};
        assigned[edge_of(d0)] = 1;
        int d = d0;
        while (xdeg[G.face_of(d, 1)] != 3) {
          int h = G.face_of(d, 1), next = -1;
          for (int c : out_darts(h))
            if (core[edge_of(c)] && edge_of(c) != edge_of(d)) next = c;
          MSSP_CHECK(next != -1, "cut path dead end");
          d = next;
          assigned[edge_of(d)] = 1;
          walk.push_back(d);
        }
        int a = copy_for(f), b = copy_for(G.face_of(d, 1));
        int prev = a;
        for (size_t k = 0; k < walk.size(); ++k) {
          int next_node = k + 1 == walk.size() ? b : G.face_of(walk[k], 1);
          df_.link(prev, next_node, walk[k], val(walk[k]), val(rev(walk[k])));
          prev = next_node;
        }
        add_path(a, b, d0, rev(d));
      }
    }
    for (int e = 0; e < G.num_edges(); ++e)
      if (in_x[e] && !core[e]) df_.link(G.face_of(2 * e, 0), G.face_of(2 * e, 1), 2 * e, val(2 * e), val(2 * e + 1));
    for (size_t i = 0; i < paths_.size(); ++i) df_.make_root(paths_[i].a);
    created.clear();
  }

  DualForest<Num>& forest() { return df_; }
  const Path& path(int id) const { return paths_[id]; }
  int capacity() const { return static_cast<int>(paths_.size()); }
  int node_face(int node) const { return node_face_[node]; }

  int num_paths() const {
    int c = 0;
    for (auto& p : paths_) c += p.alive;
    return c;
  }
  int num_branch_points() const {
    int c = 0;
    for (auto& cp : copies_) c += cp.size() == 3;
    return c;
  }

  int subtree_of_node(int node) {
    int r = df_.root_of(node);
    int id = node_path_[r];
    MSSP_CHECK(id >= 0 && paths_[id].alive && paths_[id].a == r, "grove component not rooted at its anchor");
    return id;
  }
  int subtree_of_edge(int e) { return subtree_of_node(df_.ends(e).first); }

  // Minimum (and shift) along a path directed from one anchor to the other.
  std::optional<typename DualForest<Num>::Best> min_path(int id, bool reversed) {
    const Path& p = paths_[id];
    auto r = reversed ? df_.min_path(p.b, p.a) : df_.min_path(p.a, p.b);
    df_.make_root(p.a);
    return r;
  }
  void add_path(int id, bool reversed, const Num& delta) {
    const Path& p = paths_[id];
    if (reversed) df_.add_path(delta, p.b, p.a);
    else df_.add_path(delta, p.a, p.b);
    df_.make_root(p.a);
  }

  // For a dart on the anchor path of subtree id: whether it points from a toward b.
  std::optional<bool> along(int id, int dart) {
    const Path& P = paths_[id];
    auto [x, y] = df_.ends(edge_of(dart));
    if (dart & 1) std::swap(x, y);
    std::optional<bool> out;
    if (df_.junction(P.a, x, P.b) == x && df_.junction(P.a, y, P.b) == y) out = df_.junction(P.a, x, y) == x;
    df_.make_root(P.a);
    return out;
  }

  // Anchor path darts of subtree id, oriented from a to b.
  std::vector<int> path_darts(int id) {
    auto ds = df_.path_darts(paths_[id].a, paths_[id].b);
    df_.make_root(paths_[id].a);
    return ds;
  }

  // Adds dual dart d* (from face_of(d,0) to face_of(d,1)) to X with val(d*) = alpha,
  // val(rev d*) = beta. Returns the subtree holding the new edge.
  int link(int d, const Num& alpha, const Num& beta) {
    const auto& G = *g_;
    int n1 = G.face_of(d, 0), n2 = G.face_of(d, 1);
    MSSP_CHECK(n1 != n2, "grove link of a dual loop");
    MSSP_CHECK(copies_[n1].size() == 1 && copies_[n2].size() == 1, "grove link at a branch point");
    int i = subtree_of_node(n1), j = subtree_of_node(n2);
    if (i != j) return link_apart(d, alpha, beta, i, j);
    Path P = paths_[i];
    int ha = df_.junction(P.a, n1, P.b), hb = df_.junction(P.a, n2, P.b);
    if (ha != hb) return link_across(d, alpha, beta, i, ha, hb);
    return link_loop(d, alpha, beta, i, ha);
  }

  // Removes the dual edge e, which must lie on a cut path.
  void cut(int e) {
    MSSP_CHECK(df_.has_edge(e), "grove cut of an absent edge");
    auto [x, y] = df_.ends(e);
    int i = subtree_of_node(x);
    Path P = paths_[i];
    MSSP_CHECK(df_.junction(P.a, x, P.b) == x && df_.junction(P.a, y, P.b) == y, "grove cut of a hair edge");
    int fa = node_face_[P.a], fb = node_face_[P.b];
    if (fa != fb) {
      auto at_a = others(fa, P.a), at_b = others(fb, P.b);
      std::vector<int> gone{i};
      for (auto& q : at_a) gone.push_back(q.first);
      for (auto& q : at_b) gone.push_back(q.first);
      std::sort(gone.begin(), gone.end());
      gone.erase(std::unique(gone.begin(), gone.end()), gone.end());
      MSSP_CHECK(at_a[0].first != at_a[1].first && at_b[0].first != at_b[1].first, "loop at a dissolving branch point");
      int shared = -1;
      for (auto& p : at_a)
        for (auto& q : at_b)
          if (p.first == q.first) {
            MSSP_CHECK(shared == -1, "dissolving a theta");
            shared = p.first;
          }
      auto fa_far = [&](std::pair<int, int> q) { return far(q.first, q.second); };
      std::vector<std::pair<End, End>> fresh;
      if (shared >= 0) {
        auto po = at_a[0].first == shared ? at_a[1] : at_a[0];
        auto qo = at_b[0].first == shared ? at_b[1] : at_b[0];
        fresh.push_back({fa_far(po), fa_far(qo)});
      } else {
        fresh.push_back({fa_far(at_a[0]), fa_far(at_a[1])});
        fresh.push_back({fa_far(at_b[0]), fa_far(at_b[1])});
      }
      for (int id : gone) destroy(id);
      df_.cut_edge(e);
      merge_face(fa);
      merge_face(fb);
      for (auto& [s, t] : fresh) register_path(s.node, t.node, s.dart, t.dart);
      return;
    }
    // A loop path at branch point c: its third path j dies too and the far branch point h dissolves.
    int c = fa;
    auto at_c = others(c, P.a);
    int third = at_c[0].first == i ? at_c[1].first : at_c[0].first;
    int third_end = at_c[0].first == i ? at_c[1].second : at_c[0].second;
    End hj = far(third, third_end);
    int h = node_face_[hj.node];
    MSSP_CHECK(h != c, "figure eight");
    auto at_h = others(h, hj.node);
    MSSP_CHECK(at_h[0].first != at_h[1].first, "loop at a dissolving branch point");
    End r1 = far(at_h[0].first, at_h[0].second), r2 = far(at_h[1].first, at_h[1].second);
    std::vector<int> gone{i, third, at_h[0].first, at_h[1].first};
    for (int id : gone) destroy(id);
    df_.cut_edge(e);
    merge_face(c);
    merge_face(h);
    register_path(r1.node, r2.node, r1.dart, r2.dart);
  }

  // Walks one face of the reduced cut graph, starting along path id from its anchor a (from_b
  // false) or b. Returns (path, from_b) pairs. The face lies on the side of head(d) for the
  // first dual dart d of each traversal.
  std::vector<std::pair<int, bool>> face_walk(int id, bool from_b) const {
    const auto& G = *g_;
    std::vector<std::pair<int, bool>> out;
    int p = id;
    bool fb = from_b;
    const int guard = 4 * capacity() + 8;
    do {
      out.push_back({p, fb});
      MSSP_CHECK(static_cast<int>(out.size()) <= guard, "reduced cut graph face does not close");
      const Path& P = paths_[p];
      int to = fb ? P.a : P.b;
      int od = fb ? P.da : P.db;
      int nd = rev(G.prev_at(od));
      int f = node_face_[to];
      int found = -1;
      for (int c : copies_[f])
        if (node_path_[c] >= 0 && end_dart(c) == nd) found = c;
      MSSP_CHECK(found != -1, "reduced cut graph rotation");
      p = node_path_[found];
      fb = node_end_[found] == 1;
    } while (p != id || fb != from_b);
    return out;
  }

  // First dual dart of path id when walked from a (or from b).
  int first_dart(int id, bool from_b) const { return from_b ? paths_[id].db : paths_[id].da; }

  int count_faces() const {
    std::set<std::pair<int, bool>> seen;
    int faces = 0;
    for (int id = 0; id < capacity(); ++id) {
      if (!paths_[id].alive) continue;
      for (bool fb : {false, true}) {
        if (seen.count({id, fb})) continue;
        ++faces;
        for (auto& s : face_walk(id, fb)) seen.insert(s);
      }
    }
    return faces;
  }

  // Full recomputation of the decomposition; returns "" when consistent.
  std::string validate() {
    const auto& G = *g_;
    std::vector<char> in_x(G.num_edges(), 0);
    int xedges = 0;
    for (int e = 0; e < G.num_edges(); ++e)
      if (df_.has_edge(e)) in_x[e] = 1, ++xedges;
    auto core = strip(in_x);
    std::vector<int> xdeg(G.num_faces(), 0);
    int core_edges = 0;
    for (int e = 0; e < G.num_edges(); ++e)
      if (core[e]) {
        ++core_edges;
        xdeg[G.face_of(2 * e, 0)]++;
        xdeg[G.face_of(2 * e, 1)]++;
      }
    for (int f = 0; f < G.num_faces(); ++f)
      if ((xdeg[f] == 3) != (copies_[f].size() == 3)) return "branch point mismatch at face " + std::to_string(f);
    int on_paths = 0;
    for (int id = 0; id < capacity(); ++id) {
      const Path& P = paths_[id];
      if (!P.alive) continue;
      if (df_.root_of(P.a) != P.a) return "subtree " + std::to_string(id) + " not rooted at its anchor";
      if (!df_.connected(P.a, P.b)) return "anchors of " + std::to_string(id) + " disconnected";
      auto ds = df_.path_darts(P.a, P.b);
      df_.make_root(P.a);
      if (ds.empty() || ds.front() != P.da || ds.back() != rev(P.db)) return "anchor darts of " + std::to_string(id);
      for (size_t k = 0; k < ds.size(); ++k) {
        if (!core[edge_of(ds[k])]) return "hair edge on cut path " + std::to_string(id);
        if (k > 0 && xdeg[G.face_of(ds[k], 0)] == 3) return "branch point inside path";
      }
      on_paths += static_cast<int>(ds.size());
    }
    if (on_paths != core_edges) return "cut paths do not cover the core";
    int comps = 0;
    for (int id = 0; id < capacity(); ++id) comps += paths_[id].alive;
    // Every forest component is one subtree: nodes = edges + components.
    int nodes = 0;
    for (auto& cp : copies_) nodes += static_cast<int>(cp.size());
    if (nodes != xedges + comps) return "subtrees are not exactly the forest components";
    return "";
  }

 private:
  struct End {
    int node, dart;
  };

  std::vector<int> out_darts(int f) const {
    // Dual darts leaving face f: primal darts with f on side 0.
    std::vector<int> out;
    for (int s : g_->face_states(f)) out.push_back(s >> 1);
    return out;
  }

  // Core edges of X: strip faces of degree one.
  std::vector<char> strip(const std::vector<char>& in_x) const {
    const auto& G = *g_;
    const int nf = G.num_faces();
    std::vector<char> core = in_x;
    std::vector<int> deg(nf, 0);
    for (int e = 0; e < G.num_edges(); ++e)
      if (core[e]) {
        deg[G.face_of(2 * e, 0)]++;
        deg[G.face_of(2 * e, 1)]++;
      }
    std::vector<int> stack;
    for (int f = 0; f < nf; ++f)
      if (deg[f] == 1) stack.push_back(f);
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      if (deg[f] != 1) continue;
      for (int d : out_darts(f)) {
        int e = edge_of(d);
        if (!core[e]) continue;
        core[e] = 0;
        deg[f]--;
        int h = G.face_of(d, 1);
        if (--deg[h] == 1) stack.push_back(h);
        break;
      }
    }
    return core;
  }

  int new_node(int f) {
    int x;
    if (!pool_.empty()) {
      x = pool_.back();
      pool_.pop_back();
    } else {
      x = df_.add_vertex();
      if (x >= static_cast<int>(node_face_.size())) {
        node_face_.resize(x + 1, -1);
        node_path_.resize(x + 1, -1);
        node_end_.resize(x + 1, -1);
      }
    }
    node_face_[x] = f;
    node_path_[x] = -1;
    node_end_[x] = -1;
    return x;
  }

  int end_dart(int node) const {
    const Path& P = paths_[node_path_[node]];
    return node_end_[node] == 0 ? P.da : P.db;
  }

  int add_path(int a, int b, int da, int db) {
    int id;
    if (!free_paths_.empty()) {
      id = free_paths_.back();
      free_paths_.pop_back();
    } else {
      id = static_cast<int>(paths_.size());
      paths_.emplace_back();
    }
    paths_[id] = Path{a, b, da, db, true};
    node_path_[a] = id;
    node_end_[a] = 0;
    node_path_[b] = id;
    node_end_[b] = 1;
    return id;
  }

  int register_path(int a, int b, int da, int db) {
    int id = add_path(a, b, da, db);
    df_.make_root(a);
    created.push_back(id);
    return id;
  }

  void destroy(int id) {
    if (on_destroy) on_destroy(id);
    Path& P = paths_[id];
    for (int x : {P.a, P.b})
      if (node_path_[x] == id) node_path_[x] = node_end_[x] = -1;
    P.alive = false;
    free_paths_.push_back(id);
  }

  // The other end of path id seen from its end `end`.
  End far(int id, int end) const {
    const Path& P = paths_[id];
    return end == 0 ? End{P.b, P.db} : End{P.a, P.da};
  }

  // (path, end) for the copies of branch face f other than node.
  std::vector<std::pair<int, int>> others(int f, int node) const {
    std::vector<std::pair<int, int>> out;
    for (int c : copies_[f])
      if (c != node) out.push_back({node_path_[c], node_end_[c]});
    MSSP_CHECK(out.size() == 2, "branch point without three copies");
    return out;
  }

  // Re-hangs edge e from node `from` to node `to`, keeping its values.
  void move_edge(int e, int from, int to) {
    auto [x, y] = df_.ends(e);
    Num a = df_.get(2 * e), b = df_.get(2 * e + 1);
    df_.cut_edge(e);
    if (x == from) x = to;
    else if (y == from) y = to;
    else throw ContractError("move_edge: edge not at node");
    df_.link(x, y, 2 * e, a, b);
  }

  // Collapses the three copies of face f onto its primary node.
  void merge_face(int f) {
    for (int c : copies_[f]) {
      if (c == f) continue;
      for (int d : out_darts(f)) {
        int e = edge_of(d);
        if (!df_.has_edge(e)) continue;
        auto [x, y] = df_.ends(e);
        if (x == c || y == c) move_edge(e, c, f);
      }
      node_path_[c] = node_end_[c] = -1;
      node_face_[c] = -1;
      pool_.push_back(c);
    }
    copies_[f] = {f};
  }

  // Splits interior node h into three: h keeps the edge toward keep, the others move to fresh copies.
  // Returns the copies receiving the edges of darts t1 and t2 (-1 darts: empty copy).
  std::pair<int, int> split(int h, int t1, int t2) {
    int f = node_face_[h];
    int c1 = new_node(f), c2 = new_node(f);
    if (t1 >= 0) move_edge(edge_of(t1), h, c1);
    if (t2 >= 0) move_edge(edge_of(t2), h, c2);
    copies_[f] = {h, c1, c2};
    return {c1, c2};
  }

  int link_apart(int d, const Num& alpha, const Num& beta, int i, int j) {
    int n1 = g_->face_of(d, 0), n2 = g_->face_of(d, 1);
    Path Pi = paths_[i], Pj = paths_[j];
    int ha = df_.junction(Pi.a, n1, Pi.b);
    int hb = df_.junction(Pj.a, n2, Pj.b);
    MSSP_CHECK(ha != Pi.a && ha != Pi.b && hb != Pj.a && hb != Pj.b, "junction at an anchor");
    int ta_a = *df_.first_dart(ha, Pi.a), ta_b = *df_.first_dart(ha, Pi.b);
    int ta_n = ha == n1 ? -1 : *df_.first_dart(ha, n1);
    int tb_a = *df_.first_dart(hb, Pj.a), tb_b = *df_.first_dart(hb, Pj.b);
    int tb_n = hb == n2 ? -1 : *df_.first_dart(hb, n2);
    destroy(i);
    destroy(j);
    auto [ha_b, ha_n] = split(ha, ta_b, ta_n);
    auto [hb_b, hb_n] = split(hb, tb_b, tb_n);
    df_.link(ha == n1 ? ha_n : n1, hb == n2 ? hb_n : n2, d, alpha, beta);
    register_path(Pi.a, ha, Pi.da, ta_a);
    register_path(ha_b, Pi.b, ta_b, Pi.db);
    register_path(Pj.a, hb, Pj.da, tb_a);
    register_path(hb_b, Pj.b, tb_b, Pj.db);
    return register_path(ha_n, hb_n, ta_n >= 0 ? ta_n : d, tb_n >= 0 ? tb_n : rev(d));
  }

  int link_across(int d, const Num& alpha, const Num& beta, int i, int ha, int hb) {
    Path P = paths_[i];
    int n1 = g_->face_of(d, 0), n2 = g_->face_of(d, 1);
    if (df_.junction(P.a, ha, hb) != ha) return link_across(rev(d), beta, alpha, i, hb, ha);
    // Order along the path: a, ha, hb, b.
    int ta_a = *df_.first_dart(ha, P.a), ta_b = *df_.first_dart(ha, hb);
    int ta_n = ha == n1 ? -1 : *df_.first_dart(ha, n1);
    int tb_a = *df_.first_dart(hb, ha), tb_b = *df_.first_dart(hb, P.b);
    int tb_n = hb == n2 ? -1 : *df_.first_dart(hb, n2);
    destroy(i);
    auto [ha_b, ha_n] = split(ha, ta_b, ta_n);
    auto [hb_b, hb_n] = split(hb, tb_b, tb_n);
    df_.link(ha == n1 ? ha_n : n1, hb == n2 ? hb_n : n2, d, alpha, beta);
    register_path(P.a, ha, P.da, ta_a);
    register_path(ha_b, hb, ta_b, tb_a);
    register_path(hb_b, P.b, tb_b, P.db);
    return register_path(ha_n, hb_n, ta_n >= 0 ? ta_n : d, tb_n >= 0 ? tb_n : rev(d));
  }

  int link_loop(int d, const Num& alpha, const Num& beta, int i, int h) {
    Path P = paths_[i];
    int n1 = g_->face_of(d, 0), n2 = g_->face_of(d, 1);
    int c = df_.junction(h, n1, n2);
    MSSP_CHECK(c != h, "new cycle through a path vertex");
    int th_a = *df_.first_dart(h, P.a), th_b = *df_.first_dart(h, P.b), th_c = *df_.first_dart(h, c);
    int tc_h = *df_.first_dart(c, h);
    int t1 = c == n1 ? -1 : *df_.first_dart(c, n1);
    int t2 = c == n2 ? -1 : *df_.first_dart(c, n2);
    destroy(i);
    auto [h_b, h_c] = split(h, th_b, th_c);
    auto [c1, c2] = split(c, t1, t2);
    df_.link(c == n1 ? c1 : n1, c == n2 ? c2 : n2, d, alpha, beta);
    register_path(P.a, h, P.da, th_a);
    register_path(h_b, P.b, th_b, P.db);
    register_path(h_c, c, th_c, tc_h);
    return register_path(c1, c2, t1 >= 0 ? t1 : d, t2 >= 0 ? t2 : rev(d));
  }

  const EmbeddedGraph* g_ = nullptr;
  DualForest<Num> df_;
  std::vector<int> node_face_, node_path_, node_end_;
  std::vector<std::vector<int>> copies_;
  std::vector<Path> paths_;
  std::vector<int> free_paths_, pool_;
};

}  // namespace mssp
