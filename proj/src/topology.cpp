#include "mssp/topology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace mssp {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

EmbeddedGraph dual(const EmbeddedGraph& g) {
  if (!g.orientable())
    throw EmbeddingError("dual requires an orientable embedding; use the double cover instead");
  EmbeddingInput in;
  in.n = g.num_faces();
  in.edges.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    in.edges[e].u = g.face_of(2 * e, 0);
    in.edges[e].v = g.face_of(2 * e + 1, 0);
    in.edges[e].w_uv = g.weight(2 * e);
    in.edges[e].w_vu = g.weight(2 * e + 1);
  }
  in.rotation.resize(in.n);
  for (int f = 0; f < in.n; ++f) {
    // Rotation around the dual vertex runs against the face walk.
    std::vector<int> walk = g.face_darts(f);
    in.rotation[f].assign(walk.rbegin(), walk.rend());
  }
  for (int d = 0; d < g.num_darts(); ++d) in.keys.push_back(g.key(d));
  return EmbeddedGraph::build(in);
}

std::vector<int> bfs_tree(const EmbeddedGraph& g, int root) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<int> tree;
  std::deque<int> q{root};
  seen[root] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int d : g.darts_at(v)) {
      int h = g.head(d);
      if (seen[h]) continue;
      seen[h] = 1;
      tree.push_back(edge_of(d));
      q.push_back(h);
    }
  }
  return tree;
}

TreeCotree tree_cotree(const EmbeddedGraph& g, const std::vector<int>& tree_edges) {
  if (!g.orientable()) throw EmbeddingError("tree-cotree decomposition requires an orientable embedding");
  if (static_cast<int>(tree_edges.size()) != g.num_vertices() - 1)
    throw EmbeddingError("tree has " + std::to_string(tree_edges.size()) + " edges, expected " +
                         std::to_string(g.num_vertices() - 1));
  UnionFind vu(g.num_vertices());
  std::vector<char> in_tree(g.num_edges(), 0);
  for (int e : tree_edges) {
    if (e < 0 || e >= g.num_edges()) throw EmbeddingError("tree edge " + std::to_string(e) + " out of range");
    if (in_tree[e] || !vu.unite(g.tail(2 * e), g.head(2 * e)))
      throw EmbeddingError("tree edge " + std::to_string(e) + " closes a cycle");
    in_tree[e] = 1;
  }
  TreeCotree out;
  out.tree = tree_edges;
  UnionFind fu(g.num_faces());
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_tree[e]) continue;
    if (fu.unite(g.face_of(2 * e, 0), g.face_of(2 * e + 1, 0))) out.cotree.push_back(e);
    else out.leftover.push_back(e);
  }
  return out;
}

Rational heavy_weight(const EmbeddedGraph& g) {
  Rational total = 0;
  for (int d = 0; d < g.num_darts(); ++d) total += g.weight(d);
  return 2 * total + 1;
}

namespace {

// Inserts fan diagonals into every face of size > 3 of an orientable embedding.
Reduction triangulate_input(EmbeddingInput in, const EmbeddedGraph& g, const Rational& heavy,
                            std::vector<int> orig_vertex, std::vector<int> orig_dart) {
  const int m0 = static_cast<int>(in.edges.size());
  std::vector<std::vector<int>> before(2 * m0);  // darts inserted immediately before dart d
  std::vector<uint32_t> keys = in.keys;
  for (int f = 0; f < g.num_faces(); ++f) {
    std::vector<int> walk = g.face_darts(f);
    const int k = static_cast<int>(walk.size());
    if (k <= 3) continue;
    // The fan from walk[0] puts walk[0], walk[1] in one triangle and walk[k-2], walk[k-1] in
    // another. If either pair is a spur (d followed by rev d) that edge would have the same
    // triangle on both sides, so start the fan where neither end pair is a spur. Spurs are never
    // adjacent in a face walk of length > 2, so r or r - 1 works for any r that is not a spur.
    auto spur = [&](int i) { return walk[(i + 1) % k] == rev(walk[i % k]); };
    int r = 0;
    while (r < k && spur(r)) ++r;
    if (r < k && spur((r + k - 2) % k)) r = (r + k - 1) % k;
    std::rotate(walk.begin(), walk.begin() + r, walk.end());
    for (int j = 2; j <= k - 2; ++j) {
      int e = static_cast<int>(in.edges.size());
      EdgeInput ed;
      ed.u = g.tail(walk[0]);
      ed.v = g.tail(walk[j]);
      ed.w_uv = heavy;
      ed.w_vu = heavy;
      in.edges.push_back(ed);
      keys.push_back(derive_key(in.seed ^ 0x5bd1e995ULL, 2 * e));
      keys.push_back(derive_key(in.seed ^ 0x5bd1e995ULL, 2 * e + 1));
      // x_j sits just before walk[0], later diagonals further from it.
      before[walk[0]].insert(before[walk[0]].begin(), 2 * e);
      before[walk[j]].push_back(2 * e + 1);
    }
  }
  for (auto& rot : in.rotation) {
    std::vector<int> nr;
    for (int d : rot) {
      for (int x : before[d]) nr.push_back(x);
      nr.push_back(d);
    }
    rot = std::move(nr);
  }
  in.keys = keys;
  Reduction r;
  r.g = EmbeddedGraph::build(in);
  r.orig_vertex = std::move(orig_vertex);
  orig_dart.resize(r.g.num_darts(), -1);
  r.orig_dart = std::move(orig_dart);
  return r;
}

void fill_inverse(Reduction& r, int n0, int darts0) {
  r.new_dart.assign(darts0, -1);
  for (int d = 0; d < r.g.num_darts(); ++d)
    if (r.orig_dart[d] >= 0) r.new_dart[r.orig_dart[d]] = d;
  r.new_vertex.assign(n0, -1);
  for (int v = static_cast<int>(r.orig_vertex.size()) - 1; v >= 0; --v) r.new_vertex[r.orig_vertex[v]] = v;
}

}  // namespace

Reduction triangulate(const EmbeddedGraph& g) {
  if (!g.orientable()) throw EmbeddingError("triangulation requires an orientable embedding");
  std::vector<int> ov(g.num_vertices()), od(g.num_darts());
  std::iota(ov.begin(), ov.end(), 0);
  std::iota(od.begin(), od.end(), 0);
  Reduction r = triangulate_input(g.to_input(), g, heavy_weight(g), ov, od);
  fill_inverse(r, g.num_vertices(), g.num_darts());
  return r;
}

Reduction degree_reduce_and_triangulate(const EmbeddedGraph& g) {
  if (!g.orientable()) throw EmbeddingError("degree reduction requires an orientable embedding");
  EmbeddingInput in = g.to_input();
  std::vector<int> ov(g.num_vertices());
  std::iota(ov.begin(), ov.end(), 0);
  const int m0 = g.num_edges();
  std::vector<int> od(2 * m0);
  std::iota(od.begin(), od.end(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> rot = in.rotation[v];
    const int k = static_cast<int>(rot.size());
    if (k <= 3) continue;
    // Chain v = c_0, c_1, ..., c_{k-3}; c_i keeps rot[i+1] (c_0 also rot[0], the last also rot[k-1]).
    std::vector<int> chain{v};
    for (int i = 1; i <= k - 3; ++i) {
      chain.push_back(in.n++);
      ov.push_back(v);
      in.rotation.emplace_back();
    }
    std::vector<int> link;  // edge c_{i} -> c_{i+1}
    for (int i = 0; i + 1 < static_cast<int>(chain.size()); ++i) {
      int e = static_cast<int>(in.edges.size());
      EdgeInput ed;
      ed.u = chain[i];
      ed.v = chain[i + 1];
      ed.w_uv = 0;
      ed.w_vu = 0;
      in.edges.push_back(ed);
      in.keys.push_back(derive_key(in.seed ^ 0x27d4eb2fULL, 2 * e));
      in.keys.push_back(derive_key(in.seed ^ 0x27d4eb2fULL, 2 * e + 1));
      od.push_back(-1);
      od.push_back(-1);
      link.push_back(e);
    }
    auto owner = [&](int i) { return std::min(std::max(i - 1, 0), k - 3); };
    for (int i = 0; i < k; ++i) {
      int d = rot[i];
      int c = chain[owner(i)];
      EdgeInput& ed = in.edges[edge_of(d)];
      if (d % 2 == 0) ed.u = c;
      else ed.v = c;
    }
    for (int c = 0; c <= k - 3; ++c) {
      std::vector<int> r;
      if (c > 0) r.push_back(2 * link[c - 1] + 1);
      for (int i = 0; i < k; ++i)
        if (owner(i) == c) r.push_back(rot[i]);
      if (c < k - 3) r.push_back(2 * link[c]);
      in.rotation[chain[c]] = r;
    }
  }
  EmbeddedGraph mid = EmbeddedGraph::build(in);
  Reduction r = triangulate_input(mid.to_input(), mid, heavy_weight(mid), ov, od);
  fill_inverse(r, g.num_vertices(), g.num_darts());
  return r;
}

}  // namespace mssp
