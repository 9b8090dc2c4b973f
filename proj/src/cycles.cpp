#include "mssp/cycles.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "mssp/dijkstra.hpp"
#include "mssp/face_sweep.hpp"

namespace mssp {

Surface symmetrize(const Surface& s) {
  EmbeddingInput in = s.g.to_input();
  for (auto& e : in.edges) e.w_vu = e.w_uv;
  Surface out = s;
  out.g = EmbeddedGraph::build(in);
  if (out.g.num_faces() != s.g.num_faces()) throw ContractError("symmetrizing changed the faces");
  for (int f = 0; f < s.g.num_faces(); ++f)
    if (out.g.face_states(f) != s.g.face_states(f)) throw ContractError("symmetrizing renumbered the faces");
  return out;
}

Rational walk_length(const EmbeddedGraph& g, const std::vector<int>& darts) {
  Rational len = 0;
  for (int d : darts) len += g.weight(d);
  return len;
}

int multiplicity(const std::vector<int>& darts) {
  std::map<int, int> count;
  int best = 0;
  for (int d : darts) best = std::max(best, ++count[edge_of(d)]);
  return best;
}

std::vector<int> loop_core(const std::vector<int>& walk) {
  const size_t k = walk.size();
  size_t t = 0;
  while (2 * t + 2 <= k && walk[k - 1 - t] == rev(walk[t])) ++t;
  return std::vector<int>(walk.begin() + t, walk.end() - t);
}

bool is_simple_cycle(const EmbeddedGraph& g, const std::vector<int>& darts) {
  if (darts.empty()) return false;
  std::set<int> edges, verts;
  for (size_t i = 0; i < darts.size(); ++i) {
    int d = darts[i];
    if (d < 0 || d >= g.num_darts()) return false;
    if (g.head(d) != g.tail(darts[(i + 1) % darts.size()])) return false;
    if (!edges.insert(edge_of(d)).second || !verts.insert(g.tail(d)).second) return false;
  }
  return true;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

std::vector<int> simple_core(const EmbeddedGraph& g, const std::vector<int>& walk) {
  auto core = loop_core(walk);
  if (!core.empty() && !is_simple_cycle(g, core)) throw ContractError("cycle is not simple");
  return core;
}

// Euler census of the two sides of a simple cycle, without building the cut surface.
struct Sides {
  bool separating = false;
  long chi[2] = {0, 0};  // of each side with the cut capped by a disk
  int holes[2] = {0, 0};
  int root[2] = {-1, -1};
  Dsu faces{0};
};

Sides sides_of(const Surface& s, const std::vector<int>& cyc) {
  const EmbeddedGraph& g = s.g;
  Sides out;
  out.faces = Dsu(g.num_faces());
  std::vector<uint8_t> on(g.num_edges(), 0), von(g.num_vertices(), 0);
  for (int d : cyc) on[edge_of(d)] = 1, von[g.tail(d)] = 1;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!on[e]) out.faces.unite(g.face_of(2 * e, 0), g.face_of(2 * e, 1));
  int a = out.faces.find(g.face_of(cyc[0], 0));
  int b = -1;
  for (int d : cyc)
    for (int o = 0; o < 2; ++o) {
      int r = out.faces.find(g.face_of(d, o));
      if (r != a) b = r;
    }
  out.root[0] = a;
  out.root[1] = b;
  if (b < 0) return out;
  out.separating = true;
  auto side = [&](int f) {
    int r = out.faces.find(f);
    return r == a ? 0 : r == b ? 1 : -1;
  };
  // The k copies of the cycle's vertices and edges cancel; the capping disk adds one face.
  out.chi[0] = out.chi[1] = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (von[v] || g.first_dart(v) < 0) continue;
    int sd = side(g.face_of(g.first_dart(v), 0));
    if (sd >= 0) ++out.chi[sd];
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (on[e]) continue;
    int sd = side(g.face_of(2 * e, 0));
    if (sd >= 0) --out.chi[sd];
  }
  for (int f = 0; f < g.num_faces(); ++f) {
    int sd = side(f);
    if (sd < 0) continue;
    ++out.chi[sd];
    if (s.hole[f]) ++out.holes[sd];
  }
  return out;
}

bool fast_contractible(const Surface& s, const std::vector<int>& core) {
  if (core.empty()) return true;
  Sides sd = sides_of(s, core);
  if (!sd.separating) return false;
  for (int i = 0; i < 2; ++i)
    if (sd.chi[i] == 2 && sd.holes[i] == 0) return true;
  return false;
}

bool fast_homotopic(const Surface& s, const std::vector<int>& core, int hole_face) {
  Sides sd = sides_of(s, core);
  if (!sd.separating) return false;
  int r = sd.faces.find(hole_face);
  int i = r == sd.root[0] ? 0 : r == sd.root[1] ? 1 : -1;
  if (i < 0) return false;
  if (sd.chi[1 - i] == 2 && sd.holes[1 - i] == 0) return false;
  return sd.chi[i] == 2 && sd.holes[i] == 1;
}

}  // namespace

bool is_separating(const Surface& s, const std::vector<int>& cycle) {
  auto core = simple_core(s.g, cycle);
  if (core.empty()) return false;
  Curve c;
  c.darts = core;
  auto cut = cut_along(s, c);
  const auto& ng = cut.surface.g;
  return ng.component_of(cut.copies[0].first) != ng.component_of(cut.copies[0].second);
}

bool is_contractible(const Surface& s, const std::vector<int>& cycle) {
  auto core = simple_core(s.g, cycle);
  if (core.empty()) return true;
  Curve c;
  c.darts = core;
  auto cut = cut_along(s, c);
  const auto& ng = cut.surface.g;
  int l = ng.component_of(cut.copies[0].first), r = ng.component_of(cut.copies[0].second);
  if (l == r) return false;
  auto cs = census(cut.surface);
  return cs[l].is_disk() || cs[r].is_disk();
}

bool is_homotopic_to_boundary(const Surface& s, const std::vector<int>& cycle, int hole_face) {
  auto core = simple_core(s.g, cycle);
  if (core.empty()) return false;
  std::set<int> ce, de;
  for (int d : core) ce.insert(edge_of(d));
  for (int d : s.boundary_darts(hole_face)) de.insert(edge_of(d));
  if (ce == de) return true;
  return !is_contractible(s, core) && is_contractible(paste_disk(s, hole_face), core);
}

namespace {

// Separator at a vertex of alpha: an alpha dart leaving the vertex (out), the reverse of the
// alpha dart entering it (in), or the hole corner after a dart (gap).
enum class Sep { kNone, kOut, kIn, kGap };

struct VertexSeps {
  std::vector<int> rotation;       // darts in pi order
  std::vector<Sep> after;          // separator placed right after rotation[i], if a gap
  std::vector<Sep> at;             // separator role of rotation[i]
};

}  // namespace

int crossing_count(const Surface& s, const Curve& alpha, const std::vector<int>& gamma) {
  const EmbeddedGraph& g = s.g;
  const auto& a = alpha.darts;
  if (a.empty()) throw ContractError("curve has no darts");
  const int k = static_cast<int>(a.size());
  std::vector<int> verts;
  for (int d : a) verts.push_back(g.tail(d));
  if (!alpha.closed) verts.push_back(g.head(a.back()));
  {
    std::set<int> vs(verts.begin(), verts.end());
    if (vs.size() != verts.size() || (alpha.closed && g.head(a.back()) != verts.front()))
      throw ContractError("crossing count needs a simple curve");
  }
  std::map<int, VertexSeps> frames;
  std::vector<uint8_t> on_alpha(g.num_edges(), 0);
  for (int d : a) on_alpha[edge_of(d)] = 1;
  for (size_t i = 0; i < verts.size(); ++i) {
    int v = verts[i];
    VertexSeps& f = frames[v];
    f.rotation = g.darts_at(v);
    f.at.assign(f.rotation.size(), Sep::kNone);
    f.after.assign(f.rotation.size(), Sep::kNone);
    auto mark = [&](int dart, Sep role) {
      for (size_t j = 0; j < f.rotation.size(); ++j)
        if (f.rotation[j] == dart) f.at[j] = role;
    };
    auto mark_gap = [&](int h) {
      for (size_t j = 0; j < f.rotation.size(); ++j)
        if (f.rotation[j] == h) f.after[j] = Sep::kGap;
    };
    bool has_out = alpha.closed || static_cast<int>(i) < k;
    bool has_in = alpha.closed || i > 0;
    if (has_out) mark(a[i % k], Sep::kOut);
    if (has_in) mark(rev(a[(i + k - 1) % k]), Sep::kIn);
    if (!has_in) mark_gap(alpha.start.after);
    if (!has_out) mark_gap(alpha.end.after);
  }
  // Side of a non-alpha dart at v: 0 on alpha's left, 1 on its right, read in the local
  // rotation and flipped when `frame` is odd.
  auto side = [&](int v, int dart, int frame) {
    const VertexSeps& f = frames.at(v);
    const int deg = static_cast<int>(f.rotation.size());
    int j = -1;
    for (int t = 0; t < deg; ++t)
      if (f.rotation[t] == dart) j = t;
    Sep start = Sep::kNone, stop = Sep::kNone;
    for (int t = 1; t <= deg && start == Sep::kNone; ++t) {
      int q = (j - t + deg) % deg;
      if (f.after[q] != Sep::kNone) start = Sep::kGap;
      else if (f.at[q] != Sep::kNone) start = f.at[q];
    }
    for (int t = 0; t < deg && stop == Sep::kNone; ++t) {
      int q = (j + t) % deg;
      if (t > 0 && f.at[q] != Sep::kNone) stop = f.at[q];
      else if (f.after[q] != Sep::kNone) stop = Sep::kGap;
    }
    int left;
    if (start == Sep::kOut) left = 1;
    else if (start == Sep::kIn) left = 0;
    else if (stop == Sep::kIn) left = 1;
    else if (stop == Sep::kOut) left = 0;
    else throw ContractError("crossing count: ambiguous sector");
    return (left ? 0 : 1) ^ frame;
  };
  const int m = static_cast<int>(gamma.size());
  for (int i = 0; i < m; ++i)
    if (g.head(gamma[i]) != g.tail(gamma[(i + 1) % m])) throw ContractError("gamma is not a closed walk");
  int start = -1;
  for (int i = 0; i < m; ++i)
    if (!on_alpha[edge_of(gamma[i])]) start = i;
  if (start < 0) return 0;
  int crossings = 0;
  // Walk once around gamma starting after a non-alpha dart.
  for (int step = 1; step <= m; ++step) {
    int i = (start + step) % m;
    int prev = gamma[(i + m - 1) % m];
    if (on_alpha[edge_of(prev)]) continue;
    int v = g.tail(gamma[i]);
    if (!frames.count(v)) continue;
    int frame = 0;
    int in_side = side(v, rev(prev), frame);
    int j = i, t = 0, w = v;
    while (on_alpha[edge_of(gamma[j])]) {
      frame ^= g.sig(edge_of(gamma[j])) ? 1 : 0;
      w = g.head(gamma[j]);
      j = (j + 1) % m;
      if (++t > m) break;
    }
    int out_side = side(w, gamma[j], frame);
    if (in_side != out_side) ++crossings;
  }
  return crossings;
}

namespace {

CyclePath make_path(const EmbeddedGraph& g, std::vector<int> darts, bool closed = true) {
  CyclePath c;
  c.length = walk_length(g, darts);
  c.multiplicity = multiplicity(darts);
  c.closed = closed;
  c.darts = std::move(darts);
  return c;
}

bool shorter(const CyclePath& a, const std::optional<CyclePath>& best) {
  return !best || a.length < best->length;
}

// Cross(alpha) on a surface with symmetric weights.
std::optional<CyclePath> cross_once(const Surface& s, const Curve& alpha) {
  if (s.g.num_components() != 1) throw ContractError("surface is not connected");
  CutResult cut = cut_along(s, alpha);
  Surface pasted = cut.surface;
  for (int f : cut.new_holes) pasted.hole[f] = 0;
  auto g = std::make_shared<const EmbeddedGraph>(pasted.g);
  if (g->num_components() != 1) return std::nullopt;
  std::set<int> lefts;
  for (auto [l, r] : cut.copies) lefts.insert(l);
  int face = -1;
  for (int f : cut.new_holes) {
    std::set<int> on;
    for (int d : g->face_darts(f)) on.insert(g->tail(d));
    if (std::includes(on.begin(), on.end(), lefts.begin(), lefts.end())) {
      face = f;
      break;
    }
  }
  if (face < 0) throw ContractError("no cut face carries every left copy");
  auto sweep = sweep_face<Rational>(g, face);
  int best = -1;
  Rational best_len;
  for (size_t i = 0; i < cut.copies.size(); ++i) {
    Rational d = sweep.dist(cut.copies[i].first, cut.copies[i].second);
    if (best < 0 || d < best_len) best = static_cast<int>(i), best_len = d;
  }
  std::vector<int> darts;
  for (int d : sweep.path(cut.copies[best].first, cut.copies[best].second)) darts.push_back(cut.parent_dart[d]);
  return make_path(s.g, std::move(darts));
}

struct Spt {
  std::vector<Rational> dist;
  std::vector<int> pred;
  std::vector<char> reached;
  int root = -1;

  std::vector<int> path_to(const EmbeddedGraph& g, int v) const {
    std::vector<int> out;
    while (v != root) {
      out.push_back(pred[v]);
      v = g.tail(pred[v]);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
  bool tree_edge(const EmbeddedGraph& g, int e) const {
    int u = g.tail(2 * e), v = g.head(2 * e);
    return (pred[v] >= 0 && edge_of(pred[v]) == e) || (pred[u] >= 0 && edge_of(pred[u]) == e);
  }
  // root -> u, the dart u->v, v -> root.
  std::vector<int> loop_through(const EmbeddedGraph& g, int dart) const {
    auto out = path_to(g, g.tail(dart));
    out.push_back(dart);
    auto back = path_to(g, g.head(dart));
    for (auto it = back.rbegin(); it != back.rend(); ++it) out.push_back(rev(*it));
    return out;
  }
};

Spt spt(const EmbeddedGraph& g, int x) {
  Spt t;
  t.root = x;
  t.dist = dijkstra<Rational>(g, x, g.weights<Rational>(), &t.pred, &t.reached);
  return t;
}

struct Candidate {
  Rational length;
  int root, dart;
  bool operator<(const Candidate& o) const { return std::tie(length, root, dart) < std::tie(o.length, o.root, o.dart); }
};

// Non-tree edges of the SPT from x, as loops sorted by length.
std::vector<Candidate> loop_candidates(const EmbeddedGraph& g, const Spt& t) {
  std::vector<Candidate> out;
  for (int e = 0; e < g.num_edges(); ++e) {
    int u = g.tail(2 * e), v = g.head(2 * e);
    if (!t.reached[u] || !t.reached[v] || t.tree_edge(g, e)) continue;
    out.push_back({t.dist[u] + g.weight(2 * e) + t.dist[v], t.root, 2 * e});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<CyclePath> loop_at(const Surface& s, int x) {
  const EmbeddedGraph& g = s.g;
  if (x < 0 || x >= g.num_vertices()) throw std::invalid_argument("vertex " + std::to_string(x) + " out of range");
  Spt t = spt(g, x);
  for (const auto& c : loop_candidates(g, t)) {
    auto loop = t.loop_through(g, c.dart);
    auto core = loop_core(loop);
    if (fast_contractible(s, core)) continue;
    if (is_contractible(s, core)) throw ContractError("surgery and side census disagree on a loop");
    auto out = make_path(g, std::move(loop));
    out.contractible = Tri::kNo;
    return out;
  }
  return std::nullopt;
}

int hole_corner_of(const Surface& s, int v, int hole_face) {
  for (int h : s.g.darts_at(v))
    if (corner_face(s.g, h) == hole_face) return h;
  return -1;
}

std::optional<CyclePath> arc_on(const Surface& s, int hole_face) {
  if (hole_face < 0 || hole_face >= s.g.num_faces() || !s.hole[hole_face])
    throw std::invalid_argument("face " + std::to_string(hole_face) + " is not a boundary");
  int comp = s.g.component_of(s.g.tail(s.boundary_darts(hole_face)[0]));
  if (census(s)[comp].is_disk()) return std::nullopt;
  ContractResult cr = contract_boundary(s, hole_face);
  auto loop = loop_at(cr.surface, cr.apex);
  if (!loop) return std::nullopt;
  std::vector<int> darts;
  for (int d : loop->darts) darts.push_back(cr.parent_dart[d]);
  CyclePath out = make_path(s.g, std::move(darts), false);
  out.start.after = cr.apex_corner[loop->darts.front()];
  out.end.after = cr.apex_corner[rev(loop->darts.back())];
  out.contractible = Tri::kNo;
  return out;
}

CyclePath arc_between(const Surface& s, int ha, int hb) {
  const EmbeddedGraph& g = s.g;
  for (int h : {ha, hb})
    if (h < 0 || h >= g.num_faces() || !s.hole[h]) throw std::invalid_argument("face " + std::to_string(h) + " is not a boundary");
  if (ha == hb) throw std::invalid_argument("boundaries must differ");
  std::vector<uint8_t> in_a(g.num_vertices(), 0), in_b(g.num_vertices(), 0);
  for (int d : s.boundary_darts(ha)) in_a[g.tail(d)] = 1;
  for (int d : s.boundary_darts(hb)) in_b[g.tail(d)] = 1;
  // Multi-source Dijkstra from the first boundary through a virtual source.
  using Item = std::pair<Rational, int>;
  std::vector<Rational> dist(g.num_vertices());
  std::vector<int> pred(g.num_vertices(), -1);
  std::vector<char> seen(g.num_vertices(), 0), done(g.num_vertices(), 0);
  auto cmp = [](const Item& x, const Item& y) { return x.first > y.first || (x.first == y.first && x.second > y.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (in_a[v]) {
      if (in_b[v]) throw ContractError("boundaries " + std::to_string(ha) + " and " + std::to_string(hb) + " touch");
      dist[v] = 0;
      seen[v] = 1;
      pq.push({dist[v], v});
    }
  int target = -1;
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (done[v] || dv != dist[v]) continue;
    done[v] = 1;
    if (in_b[v]) {
      target = v;
      break;
    }
    for (int d : g.darts_at(v)) {
      int h = g.head(d);
      Rational cand = dv + g.weight(d);
      if (!done[h] && (!seen[h] || cand < dist[h])) {
        seen[h] = 1;
        dist[h] = cand;
        pred[h] = d;
        pq.push({cand, h});
      }
    }
  }
  if (target < 0) throw std::invalid_argument("boundaries lie in different components");
  std::vector<int> darts;
  for (int v = target; pred[v] >= 0; v = g.tail(pred[v])) darts.push_back(pred[v]);
  std::reverse(darts.begin(), darts.end());
  CyclePath out = make_path(g, std::move(darts), false);
  out.start.after = hole_corner_of(s, g.tail(out.darts.front()), ha);
  out.end.after = hole_corner_of(s, target, hb);
  return out;
}

// Simple cycles cobounding an annulus with the hole, from the SPT loops of every vertex.
CyclePath homotopic_to(const Surface& s, int hole_face) {
  const EmbeddedGraph& g = s.g;
  if (hole_face < 0 || hole_face >= g.num_faces() || !s.hole[hole_face])
    throw std::invalid_argument("face " + std::to_string(hole_face) + " is not a boundary");
  auto delta = s.boundary_darts(hole_face);
  CyclePath best = make_path(g, delta);
  int comp = g.component_of(g.tail(delta[0]));
  std::vector<Candidate> all;
  std::vector<Spt> trees(g.num_vertices());
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (g.component_of(x) != comp) continue;
    trees[x] = spt(g, x);
    for (const auto& c : loop_candidates(g, trees[x]))
      if (c.length < best.length) all.push_back(c);
  }
  std::sort(all.begin(), all.end());
  std::set<std::vector<int>> tried;
  for (const auto& c : all) {
    auto core = loop_core(trees[c.root].loop_through(g, c.dart));
    if (!is_simple_cycle(g, core)) continue;
    std::vector<int> key;
    for (int d : core) key.push_back(edge_of(d));
    std::sort(key.begin(), key.end());
    if (!tried.insert(key).second) continue;
    if (!fast_homotopic(s, core, hole_face)) continue;
    if (!is_homotopic_to_boundary(s, core, hole_face)) throw ContractError("surgery and side census disagree on an annulus");
    return make_path(g, std::move(core));
  }
  return best;
}

}  // namespace

void certify(const Surface& s, CyclePath& c) {
  if (!c.closed) return;
  if (is_simple_cycle(s.g, c.darts)) {
    c.simple = Tri::kYes;
    c.separating = is_separating(s, c.darts) ? Tri::kYes : Tri::kNo;
    c.contractible = c.separating == Tri::kNo ? Tri::kNo : is_contractible(s, c.darts) ? Tri::kYes : Tri::kNo;
    return;
  }
  c.simple = Tri::kNo;
  auto core = loop_core(c.darts);
  if (core.empty() || is_simple_cycle(s.g, core)) c.contractible = is_contractible(s, c.darts) ? Tri::kYes : Tri::kNo;
}

namespace {

bool simple_curve(const EmbeddedGraph& g, const Curve& c) {
  if (c.closed) return is_simple_cycle(g, c.darts);
  if (c.darts.empty()) return false;
  std::set<int> edges, verts;
  for (size_t i = 0; i < c.darts.size(); ++i) {
    int d = c.darts[i];
    if (d < 0 || d >= g.num_darts()) return false;
    if (i + 1 < c.darts.size() && g.head(d) != g.tail(c.darts[i + 1])) return false;
    if (!edges.insert(edge_of(d)).second || !verts.insert(g.tail(d)).second) return false;
  }
  int last = g.head(c.darts.back());
  return last == g.tail(c.darts.front()) || !verts.count(last);
}

Curve as_curve(const CyclePath& p) {
  Curve c;
  c.darts = p.darts;
  c.closed = p.closed;
  c.start = p.start;
  c.end = p.end;
  return c;
}

// Closed walk split at repeated vertices into vertex-simple pieces.
std::vector<std::vector<int>> split_simple(const EmbeddedGraph& g, const std::vector<int>& walk) {
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  std::map<int, size_t> at;
  at[g.tail(walk[0])] = 0;
  for (int d : walk) {
    stack.push_back(d);
    int h = g.head(d);
    auto it = at.find(h);
    if (it == at.end()) {
      at[h] = stack.size();
      continue;
    }
    size_t p = it->second;
    std::vector<int> piece(stack.begin() + p, stack.end());
    for (size_t i = p; i < stack.size(); ++i) at.erase(g.head(stack[i]));
    at[h] = p;
    stack.resize(p);
    out.push_back(std::move(piece));
  }
  return out;
}

std::vector<Surface> components(const Surface& s) {
  std::vector<Surface> out;
  if (s.g.num_components() == 1) {
    out.push_back(s);
    return out;
  }
  for (int c = 0; c < s.g.num_components(); ++c) out.push_back(component_surface(s, c));
  return out;
}

Surface with_identity_maps(Surface s) {
  s.orig_vertex.resize(s.g.num_vertices());
  std::iota(s.orig_vertex.begin(), s.orig_vertex.end(), 0);
  s.orig_dart.resize(s.g.num_darts());
  std::iota(s.orig_dart.begin(), s.orig_dart.end(), 0);
  return s;
}

}  // namespace

std::optional<CyclePath> shortest_cycle_crossing_once(const Surface& s, const Curve& alpha) {
  if (!simple_curve(s.g, alpha)) throw ContractError("curve is not simple");
  Surface sym = symmetrize(s);
  auto out = cross_once(sym, alpha);
  if (out) certify(sym, *out);
  return out;
}

CyclePath shortest_nonseparating(const Surface& s) {
  Surface w = symmetrize(s);
  for (auto& h : w.hole) h = 0;
  const EmbeddedGraph& g = w.g;
  if (g.num_components() != 1) throw std::invalid_argument("surface is not connected");
  if (g.genus() == 0) throw NoCycleError("a sphere has no non-separating cycle");
  Spt t = spt(g, 0);
  Dsu dual(g.num_faces());
  std::optional<CyclePath> best;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (t.tree_edge(g, e) || dual.unite(g.face_of(2 * e, 0), g.face_of(2 * e, 1))) continue;
    Curve c;
    c.darts = loop_core(t.loop_through(g, 2 * e));
    auto cand = cross_once(w, c);
    if (cand && shorter(*cand, best)) best = std::move(cand);
  }
  if (!best) throw ContractError("no candidate cycle crosses a tree-cotree loop once");
  certify(w, *best);
  if (best->separating != Tri::kNo) throw ContractError("shortest non-separating candidate separates");
  return *best;
}

std::optional<CyclePath> shortest_noncontractible_loop_at(const Surface& s, int x) {
  return loop_at(symmetrize(s), x);
}

std::optional<CyclePath> shortest_noncontractible_arc(const Surface& s, int hole_face) {
  return arc_on(symmetrize(s), hole_face);
}

CyclePath shortest_arc_between_boundaries(const Surface& s, int hole_a, int hole_b) {
  return arc_between(symmetrize(s), hole_a, hole_b);
}

CyclePath shortest_cycle_homotopic_to_boundary(const Surface& s, int hole_face) {
  Surface sym = symmetrize(s);
  auto out = homotopic_to(sym, hole_face);
  certify(sym, out);
  return out;
}

CyclePath shortest_noncontractible(const Surface& s, NonconStats* stats) {
  NonconStats local;
  NonconStats& st = stats ? *stats : local;
  st = NonconStats{};
  const Surface base = with_identity_maps(symmetrize(s));
  const EmbeddedGraph& bg = base.g;
  std::optional<CyclePath> best;
  auto consider = [&](const std::vector<int>& walk) {
    ++st.candidates;
    for (auto& piece : split_simple(bg, walk)) {
      if (!is_simple_cycle(bg, piece) || fast_contractible(base, piece)) continue;
      if (is_contractible(base, piece)) throw ContractError("surgery and side census disagree on a candidate");
      auto c = make_path(bg, std::move(piece));
      if (shorter(c, best)) best = std::move(c);
    }
  };
  auto lift = [](const Surface& piece, const std::vector<int>& darts) {
    std::vector<int> out;
    for (int d : darts) out.push_back(piece.orig_dart[d]);
    return out;
  };

  // Boundaries first: a shortest cycle homotopic to each, then paste it shut.
  Surface cur = base;
  for (int h : base.holes()) {
    int comp = bg.component_of(bg.tail(base.boundary_darts(h)[0]));
    if (census(cur)[comp].is_disk()) continue;
    consider(homotopic_to(cur, h).darts);
    cur.hole[h] = 0;
  }
  for (auto& h : cur.hole) h = 0;

  int budget = 0;
  std::vector<Surface> work;
  for (auto& piece : components(cur)) {
    budget += 1 + 2 * census(piece)[0].genus;
    work.push_back(std::move(piece));
  }
  auto check_copies = [&]() {
    std::map<int, int> count;
    for (const auto& piece : work)
      for (int d = 0; d < piece.g.num_darts(); d += 2) st.max_edge_copies = std::max(st.max_edge_copies, ++count[edge_of(piece.orig_dart[d])]);
    if (st.max_edge_copies > 4) throw ContractError("an edge has more than four copies");
  };
  while (!work.empty()) {
    Surface piece = std::move(work.back());
    work.pop_back();
    ComponentCensus cs = census(piece)[0];
    if (cs.genus == 0 && cs.holes <= 1) continue;
    if (++st.iterations > budget) throw ContractError("iteration bound exceeded");
    auto holes = piece.holes();
    Curve cut;
    if (cs.holes == 0) {
      ++st.case_a;
      auto loop = loop_at(piece, 0);
      if (!loop) throw ContractError("closed surface of positive genus without a non-contractible loop");
      Curve core;
      core.darts = loop_core(loop->darts);
      if (auto c = cross_once(piece, core)) consider(lift(piece, c->darts));
      cut = as_curve(*loop);
    } else if (cs.holes == 1) {
      ++st.case_b;
      auto arc = arc_on(piece, holes[0]);
      if (!arc) throw ContractError("boundary of a positive-genus piece without a non-contractible arc");
      Curve across = as_curve(*arc);
      if (!simple_curve(piece.g, across)) {
        across = Curve{};
        across.darts = loop_core(arc->darts);
      }
      if (auto c = cross_once(piece, across)) consider(lift(piece, c->darts));
      consider(lift(piece, homotopic_to(piece, holes[0]).darts));
      cut = as_curve(*arc);
    } else if (cs.holes == 2) {
      ++st.case_c;
      auto arc = arc_between(piece, holes[0], holes[1]);
      if (auto c = cross_once(piece, as_curve(arc))) consider(lift(piece, c->darts));
      cut = as_curve(arc);
    } else {
      throw ContractError("piece with " + std::to_string(cs.holes) + " boundaries");
    }
    CutResult res = cut_along(piece, cut);
    for (auto& next : components(res.surface)) work.push_back(std::move(next));
    check_copies();
  }
  if (!best) throw NoCycleError("surface is simply connected");
  certify(base, *best);
  if (best->contractible != Tri::kNo) throw ContractError("shortest non-contractible candidate is contractible");
  return *best;
}

}  // namespace mssp
