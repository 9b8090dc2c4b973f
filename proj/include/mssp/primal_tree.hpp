#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mssp/forest_error.hpp"
#include "mssp/numeric.hpp"

namespace mssp {

// Rooted dynamic forest with vertex values and subtree addition, realized as an Euler tour
// over a treap. Each tree edge p-v owns two arc tokens (p->v, v->p); each vertex owns one token
// somewhere among its visits. The subtree of v is the token range from arc p->v to arc v->p.
//
// Persistence: treap nodes are never reused. Nodes touched since the last snapshot get one
// record (version, parent, val, tag) when the next snapshot is taken, so a historical value is
// read by walking the treap path of that version. Parent links of the represented forest are
// versioned the same way.
template <class Num>
class PrimalTree {
 public:
  explicit PrimalTree(int n = 0, bool persistent = true, uint64_t seed = 1) : persistent_(persistent), rng_(seed) {
    for (int i = 0; i < n; ++i) add_node(NumTraits<Num>::zero());
  }

  int add_node(const Num& value) {
    int v = static_cast<int>(parent_.size());
    int t = new_token(v);
    val_[t] = value;
    vtok_.push_back(t);
    parent_.push_back(-1);
    label_.push_back(-1);
    pred_hist_.emplace_back();
    vdirty_.push_back(0);
    mark_vertex(v);
    return v;
  }

  int size() const { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[check(v)]; }
  // Dart (or any caller tag) recorded with the edge to the parent.
  int label(int v) const { return label_[check(v)]; }

  int root(int v) const {
    int x = vtok_[check(v)];
    while (par_[x] != -1) x = par_[x];
    while (l_[x] != -1) x = l_[x];
    return owner_[x];
  }
  bool connected(int u, int v) const { return root(u) == root(v); }

  // Adds edge p-v; v's tree is re-rooted at v and hung below p (the root of p's tree stays root).
  void link(int p, int v, int label = -1) {
    check(p);
    check(v);
    if (connected(p, v))
      throw ForestError(ForestErrc::kSameTree, "link " + std::to_string(p) + "-" + std::to_string(v));
    if (parent_[v] != -1) evert(v);
    int tv = tree_of(vtok_[v]);
    int down = new_token(p), up = new_token(v);
    arc_[key(p, v)] = down;
    arc_[key(v, p)] = up;
    auto [a, b] = split_after(vtok_[p]);
    merge_all({a, down, tv, up, b});
    parent_[v] = p;
    label_[v] = label;
    mark_vertex(v);
  }

  // Removes edge p-v (in either orientation).
  void cut(int p, int v) {
    check(p);
    check(v);
    if (parent_[v] != p) {
      if (parent_[p] == v) std::swap(p, v);
      else throw ForestError(ForestErrc::kAbsentEdge, "cut " + std::to_string(p) + "-" + std::to_string(v));
    }
    int down = arc_.at(key(p, v)), up = arc_.at(key(v, p));
    int a = split_before(down).first;
    int c = split_after(up).second;
    split_after(down);
    split_before(up);
    merge(a, c);
    arc_.erase(key(p, v));
    arc_.erase(key(v, p));
    parent_[v] = -1;
    label_[v] = -1;
    mark_vertex(v);
  }

  // Makes v the root of its tree. Parent links along the old root path are reversed, which
  // costs time proportional to the depth of v; labels on that path are cleared.
  void evert(int v) {
    check(v);
    if (parent_[v] == -1) return;
    auto [a, b] = split_before(vtok_[v]);
    merge(b, a);
    int prev = -1, x = v;
    while (x != -1) {
      int nx = parent_[x];
      parent_[x] = prev;
      label_[x] = -1;
      mark_vertex(x);
      prev = x;
      x = nx;
    }
  }

  void add_subtree(const Num& delta, int v) {
    check(v);
    if (parent_[v] == -1) {
      int t = tree_of(vtok_[v]);
      tag_[t] += delta;
      mark(t);
      return;
    }
    int down = arc_.at(key(parent_[v], v)), up = arc_.at(key(v, parent_[v]));
    int a = split_before(down).first;
    auto [mid, c] = split_after(up);
    tag_[mid] += delta;
    mark(mid);
    merge_all({a, mid, c});
  }

  Num value(int v) const {
    int x = vtok_[check(v)];
    Num s = val_[x];
    for (; x != -1; x = par_[x]) s += tag_[x];
    return s;
  }

  // True when x lies in the subtree of v (x == v included).
  bool in_subtree(int x, int v) const {
    check(x);
    check(v);
    if (parent_[v] == -1) return root(x) == v;
    int down = arc_.at(key(parent_[v], v)), up = arc_.at(key(v, parent_[v]));
    int t = vtok_[x];
    if (tree_of(t) != tree_of(down)) return false;
    return before(down, t) && before(t, up);
  }

  // Freezes the current state; returns the version id (1, 2, ...).
  int snapshot() {
    ++version_;
    if (persistent_) {
      for (int x : dirty_) {
        hist_[x].push_back({version_, par_[x], val_[x], tag_[x]});
        dirty_flag_[x] = 0;
      }
      records_ += dirty_.size();
      dirty_.clear();
      for (int v : vdirty_list_) {
        pred_hist_[v].push_back({version_, parent_[v], label_[v]});
        vdirty_[v] = 0;
      }
      records_ += vdirty_list_.size();
      vdirty_list_.clear();
    }
    return version_;
  }

  struct Snapshot {
    Num dist;
    int parent;
    int label;
  };

  Snapshot query(int version, int v) const {
    if (!persistent_) throw ForestError(ForestErrc::kStaleNode, "tree is not persistent");
    if (version < 1 || version > version_) throw ForestError(ForestErrc::kStaleNode, "unknown version");
    if (v < 0 || v >= size()) throw ForestError(ForestErrc::kBadNode, std::to_string(v));
    int x = vtok_[v];
    const Rec* r = rec_at(x, version);
    if (!r) throw ForestError(ForestErrc::kStaleNode, "node " + std::to_string(v) + " created after version");
    Num s = r->val;
    while (true) {
      s += r->tag;
      x = r->par;
      if (x == -1) break;
      r = rec_at(x, version);
    }
    const auto& ph = pred_hist_[v];
    auto it = std::upper_bound(ph.begin(), ph.end(), version, [](int ver, const PredRec& p) { return ver < p.ver; });
    --it;
    return {s, it->parent, it->label};
  }

  int version() const { return version_; }
  // Number of history records written so far (each a handful of words).
  size_t history_records() const { return records_; }
  size_t token_count() const { return par_.size(); }

 private:
  struct Rec {
    int ver;
    int par;
    Num val, tag;
  };
  struct PredRec {
    int ver;
    int parent;
    int label;
  };

  int check(int v) const {
    if (v < 0 || v >= size()) throw ForestError(ForestErrc::kBadNode, std::to_string(v));
    return v;
  }
  static uint64_t key(int a, int b) { return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b); }

  int new_token(int owner) {
    int t = static_cast<int>(par_.size());
    l_.push_back(-1);
    r_.push_back(-1);
    par_.push_back(-1);
    pri_.push_back(static_cast<uint32_t>(rng_()));
    val_.push_back(NumTraits<Num>::zero());
    tag_.push_back(NumTraits<Num>::zero());
    owner_.push_back(owner);
    hist_.emplace_back();
    dirty_flag_.push_back(0);
    mark(t);
    return t;
  }

  void mark(int x) {
    if (persistent_ && x >= 0 && !dirty_flag_[x]) {
      dirty_flag_[x] = 1;
      dirty_.push_back(x);
    }
  }
  void mark_vertex(int v) {
    if (persistent_ && !vdirty_[v]) {
      vdirty_[v] = 1;
      vdirty_list_.push_back(v);
    }
  }

  const Rec* rec_at(int x, int version) const {
    const auto& h = hist_[x];
    auto it = std::upper_bound(h.begin(), h.end(), version, [](int ver, const Rec& r) { return ver < r.ver; });
    if (it == h.begin()) return nullptr;
    return &*(it - 1);
  }

  // In-order comparison of two tokens of the same treap.
  bool before(int a, int b) const {
    if (a == b) return false;
    auto depth = [&](int x) {
      int k = 0;
      for (; par_[x] != -1; x = par_[x]) ++k;
      return k;
    };
    int da = depth(a), db = depth(b);
    int x = a, y = b, cx = -1, cy = -1;
    while (da > db) { cx = x; x = par_[x]; --da; }
    while (db > da) { cy = y; y = par_[y]; --db; }
    while (x != y) {
      cx = x;
      cy = y;
      x = par_[x];
      y = par_[y];
    }
    if (x == a) return cy == r_[a];
    if (x == b) return cx == l_[b];
    return cx == l_[x];
  }

  int tree_of(int x) const {
    while (par_[x] != -1) x = par_[x];
    return x;
  }

  void push(int x) {
    if (tag_[x] == 0) return;
    val_[x] += tag_[x];
    for (int c : {l_[x], r_[x]})
      if (c != -1) {
        tag_[c] += tag_[x];
        mark(c);
      }
    tag_[x] = NumTraits<Num>::zero();
    mark(x);
  }

  void push_path(int x) {
    path_.clear();
    for (int y = x; y != -1; y = par_[y]) path_.push_back(y);
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) push(*it);
  }

  void set_left(int p, int c) {
    l_[p] = c;
    if (c != -1) {
      par_[c] = p;
      mark(c);
    }
    mark(p);
  }
  void set_right(int p, int c) {
    r_[p] = c;
    if (c != -1) {
      par_[c] = p;
      mark(c);
    }
    mark(p);
  }
  void detach(int c) {
    if (c != -1 && par_[c] != -1) {
      par_[c] = -1;
      mark(c);
    }
  }

  // Splits the treap holding x so that the right part starts with x.
  std::pair<int, int> split_before(int x) {
    push_path(x);
    int L = l_[x];
    if (L != -1) {
      detach(L);
      l_[x] = -1;
      mark(x);
    }
    return climb(x, L, x);
  }
  // Splits so that the left part ends with x.
  std::pair<int, int> split_after(int x) {
    push_path(x);
    int R = r_[x];
    if (R != -1) {
      detach(R);
      r_[x] = -1;
      mark(x);
    }
    return climb(x, x, R);
  }
  std::pair<int, int> climb(int x, int L, int R) {
    int cur = x, p = par_[x];
    detach(x);
    while (p != -1) {
      int pp = par_[p];
      bool left_child = l_[p] == cur;
      detach(p);
      if (left_child) {
        set_left(p, R);
        R = p;
      } else {
        set_right(p, L);
        L = p;
      }
      cur = p;
      p = pp;
    }
    if (L != -1) detach(L);
    if (R != -1) detach(R);
    return {L, R};
  }

  int merge(int a, int b) {
    if (a == -1) return b;
    if (b == -1) return a;
    if (pri_[a] > pri_[b]) {
      push(a);
      int r = merge(r_[a], b);
      set_right(a, r);
      return a;
    }
    push(b);
    int l = merge(a, l_[b]);
    set_left(b, l);
    return b;
  }
  int merge_all(std::initializer_list<int> parts) {
    int acc = -1;
    for (int p : parts) acc = merge(acc, p);
    if (acc != -1) detach(acc);
    return acc;
  }

  bool persistent_;
  std::mt19937_64 rng_;
  std::vector<int> l_, r_, par_, owner_;
  std::vector<uint32_t> pri_;
  std::vector<Num> val_, tag_;
  std::vector<int> vtok_, parent_, label_;
  std::unordered_map<uint64_t, int> arc_;
  std::vector<std::vector<Rec>> hist_;
  std::vector<char> dirty_flag_;
  std::vector<int> dirty_;
  std::vector<std::vector<PredRec>> pred_hist_;
  std::vector<char> vdirty_;
  std::vector<int> vdirty_list_;
  std::vector<int> path_;
  int version_ = 0;
  size_t records_ = 0;
};

}  // namespace mssp
