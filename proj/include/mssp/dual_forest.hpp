#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mssp/forest_error.hpp"
#include "mssp/numeric.hpp"

namespace mssp {

// Unrooted dynamic forest with a value on each dart of each forest edge: a link-cut tree in
// which every edge is a node of its own. Darts are identified by caller ids: edge e has darts
// 2e and 2e+1, and link() names which dart runs x -> y.
//
// Minimum queries order darts by (value, key, dart id); keys come from a caller table indexed
// by dart id.
template <class Num>
class DualForest {
 public:
  struct Best {
    Num value;
    int dart = -1;
  };

  DualForest() = default;
  DualForest(int vertices, std::vector<uint32_t> dart_keys) : keys_(std::move(dart_keys)) {
    for (int i = 0; i < vertices; ++i) add_vertex();
  }

  int add_vertex() {
    int x = alloc();
    is_edge_[x] = 0;
    vertex_count_++;
    return x;
  }
  int vertex_count() const { return vertex_count_; }

  bool connected(int x, int y) { return find_root(x) == find_root(y); }
  bool has_edge(int e) const { return e < static_cast<int>(edge_node_.size()) && edge_node_[e] != -1; }

  // Adds edge e between x and y where dart_xy runs x -> y; val(x->y) = a, val(y->x) = b.
  void link(int x, int y, int dart_xy, const Num& a, const Num& b) {
    if (connected(x, y))
      throw ForestError(ForestErrc::kSameTree, "link " + std::to_string(x) + "-" + std::to_string(y));
    int e = dart_xy >> 1;
    if (e >= static_cast<int>(edge_node_.size())) {
      edge_node_.resize(e + 1, -1);
      edge_end_.resize(e + 1, {-1, -1});
    }
    if (edge_node_[e] != -1) throw ForestError(ForestErrc::kSameTree, "edge " + std::to_string(e) + " already present");
    int z = alloc();
    is_edge_[z] = 1;
    // In-order runs from y down to x: the forward dart is y -> x.
    fwd_[z] = dart_xy ^ 1;
    vdown_[z] = b;
    vup_[z] = a;
    pull(z);
    edge_node_[e] = z;
    edge_end_[e] = (dart_xy & 1) ? std::pair<int, int>{y, x} : std::pair<int, int>{x, y};
    evert(x);
    pp_[x] = z;
    pp_[z] = y;
  }

  void cut_edge(int e) {
    if (!has_edge(e)) throw ForestError(ForestErrc::kAbsentEdge, "edge " + std::to_string(e));
    int z = edge_node_[e];
    auto [x, y] = edge_end_[e];
    cut_adjacent(z, x);
    cut_adjacent(z, y);
    edge_node_[e] = -1;
    free_.push_back(z);
  }

  // Endpoints (tail of dart 2e, head of dart 2e).
  std::pair<int, int> ends(int e) const { return edge_end_[e]; }

  Num get(int dart) {
    int e = dart >> 1;
    if (!has_edge(e)) throw ForestError(ForestErrc::kAbsentEdge, "dart " + std::to_string(dart));
    int z = edge_node_[e];
    splay(z);
    return fwd_[z] == dart ? vdown_[z] : vup_[z];
  }

  void set_blocked(int e, bool blocked) {
    int z = edge_node_.at(e);
    splay(z);
    blocked_[z] = blocked;
    pull(z);
  }

  // Adds delta to every dart on the path directed from u to v and subtracts it from the reverses.
  void add_path(const Num& delta, int u, int v) {
    int r = expose(u, v);
    apply_add(r, delta);
  }

  // Minimum dart directed from u towards v; nullopt when u == v or all path edges are blocked.
  std::optional<Best> min_path(int u, int v) {
    int r = expose(u, v);
    if (!agg_down_[r].has) return std::nullopt;
    return Best{agg_down_[r].value, agg_down_[r].dart};
  }

  // Median of t, u, v.
  int junction(int t, int u, int v) {
    if (!connected(t, u) || !connected(t, v))
      throw ForestError(ForestErrc::kDifferentTrees, "junction");
    evert(t);
    access(u);
    return access(v);
  }

  // First dart on the path from x to y (nullopt when x == y).
  std::optional<int> first_dart(int x, int y) {
    if (x == y) return std::nullopt;
    int r = expose(x, y);
    (void)r;
    // x is leftmost; its in-order successor is the first edge node.
    splay(x);
    int z = r_[x];
    push(z);
    while (l_[z] != -1) {
      z = l_[z];
      push(z);
    }
    splay(z);
    return fwd_[z];
  }

  // All darts on the path from x to y in order (linear time; used by checks and traversals).
  std::vector<int> path_darts(int x, int y) {
    std::vector<int> out;
    if (x == y) return out;
    int r = expose(x, y);
    collect(r, out);
    return out;
  }

  // Current root of x's represented tree, and re-rooting.
  int root_of(int x) { return find_root(x); }
  void make_root(int x) { evert(x); }

  // Overwrites both dart values of edge e (dart 2e gets a).
  void set_values(int e, const Num& a, const Num& b) {
    if (!has_edge(e)) throw ForestError(ForestErrc::kAbsentEdge, "edge " + std::to_string(e));
    int z = edge_node_[e];
    splay(z);
    if (fwd_[z] == 2 * e) {
      vdown_[z] = a;
      vup_[z] = b;
    } else {
      vdown_[z] = b;
      vup_[z] = a;
    }
    pull(z);
  }

  int edge_count() const {
    int c = 0;
    for (int z : edge_node_) c += z != -1;
    return c;
  }

 private:
  struct Agg {
    bool has = false;
    Num value;
    uint32_t key = 0;
    int dart = -1;
  };

  int alloc() {
    int x;
    if (!free_.empty()) {
      x = free_.back();
      free_.pop_back();
    } else {
      x = static_cast<int>(l_.size());
      l_.push_back(-1);
      r_.push_back(-1);
      pp_.push_back(-1);
      flip_.push_back(0);
      is_edge_.push_back(0);
      blocked_.push_back(0);
      fwd_.push_back(-1);
      vdown_.emplace_back();
      vup_.emplace_back();
      add_.emplace_back();
      agg_down_.emplace_back();
      agg_up_.emplace_back();
    }
    l_[x] = r_[x] = pp_[x] = -1;
    flip_[x] = 0;
    blocked_[x] = 0;
    fwd_[x] = -1;
    add_[x] = NumTraits<Num>::zero();
    vdown_[x] = vup_[x] = NumTraits<Num>::zero();
    agg_down_[x] = Agg{};
    agg_up_[x] = Agg{};
    return x;
  }

  bool better(const Agg& a, const Agg& b) const {
    if (!a.has) return false;
    if (!b.has) return true;
    if (a.value != b.value) return a.value < b.value;
    if (a.key != b.key) return a.key < b.key;
    return a.dart < b.dart;
  }
  uint32_t key_of(int dart) const { return dart < static_cast<int>(keys_.size()) ? keys_[dart] : 0; }

  bool is_root(int x) const {
    int p = pp_[x];
    return p == -1 || (l_[p] != x && r_[p] != x);
  }

  void pull(int x) {
    Agg d, u;
    if (is_edge_[x] && !blocked_[x]) {
      d = Agg{true, vdown_[x], key_of(fwd_[x]), fwd_[x]};
      u = Agg{true, vup_[x], key_of(fwd_[x] ^ 1), fwd_[x] ^ 1};
    }
    for (int c : {l_[x], r_[x]}) {
      if (c == -1) continue;
      if (better(agg_down_[c], d)) d = agg_down_[c];
      if (better(agg_up_[c], u)) u = agg_up_[c];
    }
    agg_down_[x] = d;
    agg_up_[x] = u;
  }

  void apply_flip(int x) {
    if (x == -1) return;
    std::swap(l_[x], r_[x]);
    if (is_edge_[x]) {
      std::swap(vdown_[x], vup_[x]);
      fwd_[x] ^= 1;
    }
    // The up aggregate already names darts in the reverse direction.
    std::swap(agg_down_[x], agg_up_[x]);
    add_[x] = -add_[x];
    flip_[x] ^= 1;
  }

  void apply_add(int x, const Num& delta) {
    if (x == -1) return;
    if (is_edge_[x]) {
      vdown_[x] += delta;
      vup_[x] -= delta;
    }
    if (agg_down_[x].has) agg_down_[x].value += delta;
    if (agg_up_[x].has) agg_up_[x].value -= delta;
    add_[x] += delta;
  }

  void push(int x) {
    if (flip_[x]) {
      apply_flip(l_[x]);
      apply_flip(r_[x]);
      flip_[x] = 0;
    }
    if (add_[x] != 0) {
      apply_add(l_[x], add_[x]);
      apply_add(r_[x], add_[x]);
      add_[x] = NumTraits<Num>::zero();
    }
  }

  void rotate(int x) {
    int p = pp_[x], g = pp_[p];
    bool p_root = is_root(p);
    if (l_[p] == x) {
      l_[p] = r_[x];
      if (r_[x] != -1) pp_[r_[x]] = p;
      r_[x] = p;
    } else {
      r_[p] = l_[x];
      if (l_[x] != -1) pp_[l_[x]] = p;
      l_[x] = p;
    }
    pp_[p] = x;
    pp_[x] = g;
    if (!p_root) {
      if (l_[g] == p) l_[g] = x;
      else r_[g] = x;
    }
    pull(p);
    pull(x);
  }

  void splay(int x) {
    stack_.clear();
    for (int y = x;; y = pp_[y]) {
      stack_.push_back(y);
      if (is_root(y)) break;
    }
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);
    while (!is_root(x)) {
      int p = pp_[x];
      if (!is_root(p)) {
        int g = pp_[p];
        bool zigzig = (l_[g] == p) == (l_[p] == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  // Returns the last node whose path-parent jump was taken (the LCA trick).
  int access(int x) {
    int last = -1;
    for (int y = x; y != -1; y = pp_[y]) {
      splay(y);
      r_[y] = last;
      pull(y);
      last = y;
    }
    splay(x);
    return last;
  }

  void evert(int x) {
    access(x);
    apply_flip(x);
  }

  int find_root(int x) {
    access(x);
    int y = x;
    push(y);
    while (l_[y] != -1) {
      y = l_[y];
      push(y);
    }
    splay(y);
    return y;
  }

  // Path u..v as one splay tree with u leftmost; returns its root (v).
  int expose(int u, int v) {
    if (!connected(u, v)) throw ForestError(ForestErrc::kDifferentTrees, std::to_string(u) + "," + std::to_string(v));
    evert(u);
    access(v);
    return v;
  }

  void cut_adjacent(int a, int b) {
    evert(a);
    access(b);
    // b's left subtree is exactly a.
    if (l_[b] != a || r_[a] != -1) throw ForestError(ForestErrc::kAbsentEdge, "cut");
    l_[b] = -1;
    pp_[a] = -1;
    pull(b);
  }

  void collect(int x, std::vector<int>& out) {
    if (x == -1) return;
    push(x);
    collect(l_[x], out);
    if (is_edge_[x]) out.push_back(fwd_[x]);
    collect(r_[x], out);
  }

  std::vector<uint32_t> keys_;
  std::vector<int> l_, r_, pp_, fwd_;
  std::vector<char> flip_, is_edge_, blocked_;
  std::vector<Num> vdown_, vup_, add_;
  std::vector<Agg> agg_down_, agg_up_;
  std::vector<int> edge_node_;
  std::vector<std::pair<int, int>> edge_end_;
  std::vector<int> free_, stack_;
  int vertex_count_ = 0;
};

}  // namespace mssp
