#include "mssp/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <map>
#include <numeric>
#include <set>

namespace mssp {

WeightFn unit_weights() {
  return [](int) { return Rational(1); };
}

WeightFn random_weights(uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed ^ 0x9e3779b97f4a7c15ULL);
  return [rng](int) {
    std::uniform_int_distribution<uint64_t> dist(0, 99ULL << 30);
    mpz_class num;
    uint64_t r = (1ULL << 30) + dist(*rng);
    num = static_cast<unsigned long>(r);
    mpz_class den = mpz_class(1) << 30;
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
}

namespace {

// Accumulates polygons over vertex ids, merging opposite uses of an unordered pair into one edge.
struct PolyBuilder {
  int n = 0;
  std::map<std::pair<int, int>, int> edge_of_pair;
  std::vector<std::pair<int, int>> ends;
  std::vector<std::vector<int>> faces;

  int dart(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = edge_of_pair.find(key);
    int e;
    if (it == edge_of_pair.end()) {
      e = static_cast<int>(ends.size());
      edge_of_pair.emplace(key, e);
      ends.push_back({a, b});
    } else {
      e = it->second;
    }
    return ends[e].first == a ? 2 * e : 2 * e + 1;
  }
  void face(const std::vector<int>& verts) {
    std::vector<int> f;
    for (size_t i = 0; i < verts.size(); ++i) f.push_back(dart(verts[i], verts[(i + 1) % verts.size()]));
    faces.push_back(std::move(f));
  }
  EmbeddedGraph finish(const WeightFn& wt, uint64_t seed) const {
    PolygonInput in;
    in.n = n;
    in.seed = seed;
    for (auto [a, b] : ends) {
      EdgeInput e;
      e.u = a;
      e.v = b;
      in.edges.push_back(e);
    }
    for (size_t e = 0; e < in.edges.size(); ++e) {
      in.edges[e].w_uv = wt(static_cast<int>(2 * e));
      in.edges[e].w_vu = wt(static_cast<int>(2 * e + 1));
    }
    in.faces = faces;
    return EmbeddedGraph::from_polygons(in);
  }
};

EmbeddedGraph from_edges(int n, const std::vector<std::pair<int, int>>& ends,
                         const std::vector<std::vector<int>>& faces, const WeightFn& wt, uint64_t seed) {
  PolygonInput in;
  in.n = n;
  in.seed = seed;
  for (size_t e = 0; e < ends.size(); ++e) {
    EdgeInput ei;
    ei.u = ends[e].first;
    ei.v = ends[e].second;
    ei.w_uv = wt(static_cast<int>(2 * e));
    ei.w_vu = wt(static_cast<int>(2 * e + 1));
    in.edges.push_back(ei);
  }
  in.faces = faces;
  return EmbeddedGraph::from_polygons(in);
}

}  // namespace

EmbeddedGraph make_triangle(const WeightFn& w) {
  return from_edges(3, {{0, 1}, {1, 2}, {2, 0}}, {{0, 2, 4}, {5, 3, 1}}, w, 0);
}

EmbeddedGraph make_square(const WeightFn& w) {
  return from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 2, 4, 6}, {7, 5, 3, 1}}, w, 0);
}

EmbeddedGraph make_single_loop(const WeightFn& w) {
  return from_edges(1, {{0, 0}}, {{0}, {1}}, w, 0);
}

EmbeddedGraph make_torus_grid(int w, int h, const WeightFn& wt, bool diagonals, uint64_t seed) {
  // Edge ids: right(i,j) = 2*(j*w+i) (or 3* with diagonals), up = +1, diag = +2.
  int per = diagonals ? 3 : 2;
  auto id = [&](int i, int j) { return ((j % h + h) % h) * w + ((i % w) + w) % w; };
  std::vector<std::pair<int, int>> ends(static_cast<size_t>(per) * w * h);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      int v = id(i, j);
      ends[per * v] = {v, id(i + 1, j)};
      ends[per * v + 1] = {v, id(i, j + 1)};
      if (diagonals) ends[per * v + 2] = {v, id(i + 1, j + 1)};
    }
  std::vector<std::vector<int>> faces;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      int R0 = 2 * (per * id(i, j)), U1 = 2 * (per * id(i + 1, j) + 1);
      int R1 = 2 * (per * id(i, j + 1)), U0 = 2 * (per * id(i, j) + 1);
      if (!diagonals) {
        faces.push_back({R0, U1, R1 ^ 1, U0 ^ 1});
      } else {
        int D = 2 * (per * id(i, j) + 2);
        faces.push_back({R0, U1, D ^ 1});
        faces.push_back({D, R1 ^ 1, U0 ^ 1});
      }
    }
  return from_edges(w * h, ends, faces, wt, seed);
}

EmbeddedGraph make_klein_grid(int w, int h, const WeightFn& wt, uint64_t seed) {
  // The top row is glued to the bottom row reflected: (i, h) ~ (w - i, 0).
  auto id = [&](int i, int j) { return j * w + ((i % w) + w) % w; };
  auto up_target = [&](int i, int j) { return j + 1 < h ? id(i, j + 1) : id(w - i, 0); };
  std::vector<std::pair<int, int>> ends(2 * w * h);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      int v = id(i, j);
      ends[2 * v] = {v, id(i + 1, j)};
      ends[2 * v + 1] = {v, up_target(i, j)};
    }
  std::vector<std::vector<int>> faces;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      int R0 = 2 * (2 * id(i, j)), U1 = 2 * (2 * id(i + 1, j) + 1), U0 = 2 * (2 * id(i, j) + 1);
      int top;
      if (j + 1 < h) {
        top = (2 * (2 * id(i, j + 1))) ^ 1;
      } else {
        // From the top of column i+1, i.e. (w-i-1, 0), forward to (w-i, 0).
        top = 2 * (2 * id(w - i - 1, 0));
      }
      faces.push_back({R0, U1, top, U0 ^ 1});
    }
  return from_edges(w * h, ends, faces, wt, seed);
}

EmbeddedGraph make_projective_wheel(int k, const WeightFn& wt, uint64_t seed) {
  // Vertex 0 is the hub, rim vertices 1..k. Disk boundary positions 0..2k-1 with antipodes glued.
  std::vector<std::pair<int, int>> ends;
  for (int i = 0; i < k; ++i) ends.push_back({1 + i, 1 + (i + 1) % k});  // rim segment i
  for (int i = 0; i < 2 * k; ++i) ends.push_back({0, 1 + i % k});       // spoke i
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < 2 * k; ++i) {
    int spoke = 2 * (k + i), next_spoke = 2 * (k + (i + 1) % (2 * k));
    int seg = 2 * (i % k);
    faces.push_back({spoke, seg, next_spoke ^ 1});
  }
  return from_edges(k + 1, ends, faces, wt, seed);
}

EmbeddedGraph make_genus_glued(int g, int n, const WeightFn& wt, uint64_t seed) {
  MSSP_CHECK(g >= 1, "genus must be positive");
  int per = std::max(16, n / g);
  int w = std::max(4, static_cast<int>(std::lround(std::sqrt(static_cast<double>(per)))));
  int h = std::max(4, per / w);
  int tv = w * h;
  // Union-find over torus vertices implements the connected sums.
  std::vector<int> uf(static_cast<size_t>(g) * tv);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto vid = [&](int t, int i, int j) { return t * tv + ((j % h + h) % h) * w + ((i % w) + w) % w; };
  std::set<std::vector<int>> removed;
  for (int t = 0; t + 1 < g; ++t) {
    std::vector<int> a = {vid(t, 2, 2), vid(t, 3, 2), vid(t, 3, 3)};
    std::vector<int> b = {vid(t + 1, 0, 0), vid(t + 1, 1, 0), vid(t + 1, 1, 1)};
    removed.insert(a);
    removed.insert(b);
    uf[find(b[0])] = find(a[0]);
    uf[find(b[2])] = find(a[1]);
    uf[find(b[1])] = find(a[2]);
  }
  std::map<int, int> compact;
  for (int x = 0; x < g * tv; ++x) {
    int r = find(x);
    if (!compact.count(r)) compact.emplace(r, static_cast<int>(compact.size()));
  }
  PolyBuilder pb;
  pb.n = static_cast<int>(compact.size());
  auto m = [&](int x) { return compact.at(find(x)); };
  for (int t = 0; t < g; ++t)
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < w; ++i) {
        std::vector<int> t1 = {vid(t, i, j), vid(t, i + 1, j), vid(t, i + 1, j + 1)};
        std::vector<int> t2 = {vid(t, i, j), vid(t, i + 1, j + 1), vid(t, i, j + 1)};
        for (auto& tri : {t1, t2}) {
          if (removed.count(tri)) continue;
          pb.face({m(tri[0]), m(tri[1]), m(tri[2])});
        }
      }
  return pb.finish(wt, seed);
}

EmbeddedGraph make_planar_triangulation(int n, int k, const WeightFn& wt, uint64_t seed) {
  MSSP_CHECK(k >= 3 && n >= k + 1, "planar triangulation needs k >= 3 and n > k");
  std::mt19937_64 rng(seed);
  // Vertex k is the first interior vertex joined to every boundary vertex.
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < k; ++i) tris.push_back({i, (i + 1) % k, k});
  for (int v = k + 1; v < n; ++v) {
    size_t t = std::uniform_int_distribution<size_t>(0, tris.size() - 1)(rng);
    auto [a, b, c] = tris[t];
    tris[t] = {a, b, v};
    tris.push_back({b, c, v});
    tris.push_back({c, a, v});
  }
  // Random flips of interior edges keep the graph simple and spread out degrees.
  std::map<std::pair<int, int>, int> dir;  // directed edge -> triangle
  for (size_t t = 0; t < tris.size(); ++t)
    for (int s = 0; s < 3; ++s) dir[{tris[t][s], tris[t][(s + 1) % 3]}] = static_cast<int>(t);
  int flips = 3 * n;
  for (int it = 0; it < flips; ++it) {
    int t1 = std::uniform_int_distribution<int>(0, static_cast<int>(tris.size()) - 1)(rng);
    int s = std::uniform_int_distribution<int>(0, 2)(rng);
    int a = tris[t1][s], b = tris[t1][(s + 1) % 3], c = tris[t1][(s + 2) % 3];
    auto op = dir.find({b, a});
    if (op == dir.end()) continue;  // boundary edge
    int t2 = op->second;
    int d = -1;
    for (int q = 0; q < 3; ++q)
      if (tris[t2][q] != a && tris[t2][q] != b) d = tris[t2][q];
    if (c == d || dir.count({c, d}) || dir.count({d, c})) continue;
    for (int q = 0; q < 3; ++q) {
      dir.erase({tris[t1][q], tris[t1][(q + 1) % 3]});
      dir.erase({tris[t2][q], tris[t2][(q + 1) % 3]});
    }
    tris[t1] = {a, d, c};
    tris[t2] = {d, b, c};
    for (int t : {t1, t2})
      for (int q = 0; q < 3; ++q) dir[{tris[t][q], tris[t][(q + 1) % 3]}] = t;
  }
  PolyBuilder pb;
  pb.n = n;
  // Outer face first so that dart 0 lies on it.
  std::vector<int> outer;
  for (int i = 0; i < k; ++i) outer.push_back((k - i) % k);
  pb.face(outer);
  for (auto& t : tris) pb.face({t[0], t[1], t[2]});
  return pb.finish(wt, seed);
}

Surface make_annulus(int around, int rings, const WeightFn& wt, uint64_t seed) {
  MSSP_CHECK(around >= 3 && rings >= 2, "annulus too small");
  PolyBuilder pb;
  pb.n = around * rings;
  auto id = [&](int i, int j) { return j * around + ((i % around) + around) % around; };
  std::vector<int> inner, outer;
  for (int i = 0; i < around; ++i) inner.push_back(id(around - i, 0));
  for (int i = 0; i < around; ++i) outer.push_back(id(i, rings - 1));
  pb.face(inner);
  pb.face(outer);
  for (int j = 0; j + 1 < rings; ++j)
    for (int i = 0; i < around; ++i) pb.face({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  EmbeddedGraph g = pb.finish(wt, seed);
  Surface s = make_surface(g);
  // The two ring faces are the only faces of size `around` not bounded by rungs.
  for (int f = 0; f < g.num_faces(); ++f) {
    bool ring = true;
    for (int d : g.face_darts(f)) {
      int a = g.tail(d) / around, b = g.head(d) / around;
      if (a != b || (a != 0 && a != rings - 1)) ring = false;
    }
    if (ring && g.face_size(f) == around) s.hole[f] = 1;
  }
  return s;
}

Surface make_pants(int around, int rings, const WeightFn& wt, uint64_t seed) {
  MSSP_CHECK(rings >= 3, "pants need at least three rings");
  Surface s = make_annulus(around, rings, wt, seed);
  // Remove a quad in the middle ring band.
  int v = (rings / 2) * around;
  for (int f = 0; f < s.g.num_faces(); ++f) {
    if (s.hole[f] || s.g.face_size(f) != 4) continue;
    bool touches = false;
    for (int d : s.g.face_darts(f)) touches |= (s.g.tail(d) == v);
    if (touches) {
      s.hole[f] = 1;
      break;
    }
  }
  return s;
}

Surface make_moebius(int len, int width, const WeightFn& wt, uint64_t seed) {
  MSSP_CHECK(len >= 3 && width >= 1, "moebius band too small");
  // Vertices (i, j), i in [0, len), j in [0, width]; (len, j) ~ (0, width - j).
  auto id = [&](int i, int j) {
    if (i == len) return width - j;
    return i * (width + 1) + j;
  };
  PolyBuilder pb;
  pb.n = len * (width + 1);
  std::vector<int> boundary;
  for (int i = 0; i < len; ++i) boundary.push_back(id(i, 0));
  for (int i = 0; i < len; ++i) boundary.push_back(id(i, width));
  pb.face(boundary);
  for (int i = 0; i < len; ++i)
    for (int j = 0; j < width; ++j) pb.face({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  EmbeddedGraph g = pb.finish(wt, seed);
  Surface s = make_surface(g);
  for (int f = 0; f < g.num_faces(); ++f)
    if (g.face_size(f) == 2 * len) s.hole[f] = 1;
  return s;
}

}  // namespace mssp

namespace mssp {

EmbeddedGraph merge_faces(const EmbeddedGraph& g, int faces_to_merge, uint64_t seed, int* face_dart) {
  std::mt19937_64 rng(seed);
  const int nf = g.num_faces();
  std::vector<char> merged(nf, 0), removed(g.num_edges(), 0);
  int start = std::uniform_int_distribution<int>(0, nf - 1)(rng);
  merged[start] = 1;
  int count = 1;
  std::vector<int> frontier;
  auto push_face = [&](int f) {
    for (int st : g.face_states(f)) frontier.push_back(edge_of(st / 2));
  };
  push_face(start);
  while (count < faces_to_merge && !frontier.empty()) {
    size_t i = std::uniform_int_distribution<size_t>(0, frontier.size() - 1)(rng);
    int e = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    int a = g.face_of(2 * e, 0), b = g.face_of(2 * e, 1);
    if (removed[e] || merged[a] == merged[b]) continue;
    int other = merged[a] ? b : a;
    removed[e] = 1;
    merged[other] = 1;
    ++count;
    push_face(other);
  }
  EmbeddingInput in = g.to_input();
  std::vector<int> new_id(g.num_edges(), -1);
  EmbeddingInput out;
  out.n = in.n;
  out.seed = seed;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (removed[e]) continue;
    new_id[e] = static_cast<int>(out.edges.size());
    out.edges.push_back(in.edges[e]);
    out.keys.push_back(in.keys[2 * e]);
    out.keys.push_back(in.keys[2 * e + 1]);
  }
  out.rotation.resize(in.n);
  for (int v = 0; v < in.n; ++v)
    for (int d : in.rotation[v])
      if (!removed[edge_of(d)]) out.rotation[v].push_back(2 * new_id[edge_of(d)] + (d & 1));
  EmbeddedGraph r = EmbeddedGraph::build(out);
  if (face_dart) {
    int best = 0;
    for (int f = 1; f < r.num_faces(); ++f)
      if (r.face_size(f) > r.face_size(best)) best = f;
    for (int d = r.num_darts() - 1; d >= 0; --d)
      if (r.face_of(d, 0) == best) *face_dart = d;
  }
  return r;
}

Surface generate_instance(const std::string& kind, int n, int genus, uint64_t seed) {
  auto side = [](int n) { return std::max(3, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))))); };
  WeightFn wt = random_weights(seed);
  if (kind == "planar-delaunay-like") {
    if (n < 4) throw std::invalid_argument("planar-delaunay-like needs n >= 4");
    int k = std::min(n - 1, side(n));
    return make_surface(make_planar_triangulation(n, k, wt, seed));
  }
  if (kind == "torus-grid") {
    if (n < 9) throw std::invalid_argument("torus-grid needs n >= 9");
    int w = side(n);
    return make_surface(make_torus_grid(w, std::max(3, n / w), wt, false, seed));
  }
  if (kind == "genus-g-glued") {
    if (genus < 1) throw std::invalid_argument("genus-g-glued needs genus >= 1");
    if (n < 16 * genus) throw std::invalid_argument("genus-g-glued needs n >= 16 * genus");
    return make_surface(make_genus_glued(genus, n, wt, seed));
  }
  if (kind == "klein-grid") {
    if (n < 9) throw std::invalid_argument("klein-grid needs n >= 9");
    int w = side(n);
    return make_surface(make_klein_grid(w, std::max(3, n / w), wt, seed));
  }
  if (kind == "annulus") {
    if (n < 6) throw std::invalid_argument("annulus needs n >= 6");
    int a = side(n);
    return make_annulus(a, std::max(2, n / a), wt, seed);
  }
  throw std::invalid_argument("unknown instance kind '" + kind + "'");
}

}  // namespace mssp
