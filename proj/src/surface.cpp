#include "mssp/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mssp {

int Surface::num_holes() const {
  int c = 0;
  for (auto h : hole) c += h ? 1 : 0;
  return c;
}

std::vector<int> Surface::holes() const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(hole.size()); ++f)
    if (hole[f]) out.push_back(f);
  return out;
}

std::vector<int> Surface::boundary_darts(int hole_face) const { return g.face_darts(hole_face); }

Surface make_surface(const EmbeddedGraph& g) {
  Surface s;
  s.g = g;
  s.hole.assign(g.num_faces(), 0);
  s.orig_vertex.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) s.orig_vertex[v] = v;
  s.orig_dart.resize(g.num_darts());
  for (int d = 0; d < g.num_darts(); ++d) s.orig_dart[d] = d;
  return s;
}

std::vector<ComponentCensus> census(const Surface& s) {
  const EmbeddedGraph& g = s.g;
  std::vector<ComponentCensus> out(g.num_components());
  for (int v = 0; v < g.num_vertices(); ++v) ++out[g.component_of(v)].vertices;
  for (int e = 0; e < g.num_edges(); ++e) ++out[g.component_of(g.tail(2 * e))].edges;
  for (int f = 0; f < g.num_faces(); ++f) {
    int c = g.component_of(g.tail(g.face_states(f)[0] >> 1));
    if (s.hole[f]) ++out[c].holes;
    else ++out[c].faces;
  }
  for (int c = 0; c < g.num_components(); ++c) {
    ComponentCensus& k = out[c];
    k.orientable = g.component_orientable(c);
    k.chi = static_cast<long>(k.vertices) - k.edges + k.faces;
    long closed = k.chi + k.holes;
    k.genus = k.orientable ? static_cast<int>((2 - closed) / 2) : static_cast<int>(2 - closed);
    MSSP_CHECK(k.orientable ? (2 - closed) % 2 == 0 : true, "odd Euler characteristic on orientable component");
  }
  return out;
}

int corner_face(const EmbeddedGraph& g, int h) { return g.face_of(rev(h), g.sig(edge_of(h)) ? 1 : 0); }

namespace {

// Maps the non-hole faces of `old` onto faces of `ng` through a state translation and
// returns the hole flags of ng. State translation returns -1 for states that vanished.
std::vector<uint8_t> carry_holes(const Surface& old, const EmbeddedGraph& ng,
                                 const std::function<int(int)>& map_state, bool allow_vanish) {
  std::vector<uint8_t> hole(ng.num_faces(), 2);
  for (int f = 0; f < old.g.num_faces(); ++f) {
    int target = -1;
    for (int st : old.g.face_states(f)) {
      int ns = map_state(st);
      if (ns < 0) continue;
      target = ng.face_of(ns >> 1, ns & 1);
      break;
    }
    if (target < 0) {
      if (allow_vanish) continue;
      throw ContractError("face vanished during surgery");
    }
    uint8_t want = old.hole[f] ? 1 : 0;
    if (hole[target] == 2) hole[target] = want;
    else if (hole[target] != want) throw ContractError("surgery merged a face with a boundary");
  }
  for (auto& h : hole)
    if (h == 2) h = 1;
  return hole;
}

struct SimpleCut {
  CutResult res;
  std::vector<int> map_normal;  // old dart -> new dart for uncut darts
  std::vector<int> copy_after, copy_before;
};

void check_walk(const EmbeddedGraph& g, const Curve& c) {
  if (c.darts.empty()) throw ContractError("curve has no darts");
  for (int d : c.darts)
    if (d < 0 || d >= g.num_darts()) throw ContractError("curve names an unknown dart");
  for (size_t i = 0; i + 1 < c.darts.size(); ++i)
    if (g.head(c.darts[i]) != g.tail(c.darts[i + 1])) throw ContractError("curve is not a walk");
  if (c.closed && g.head(c.darts.back()) != g.tail(c.darts.front())) throw ContractError("closed curve does not close");
}

bool vertex_simple(const EmbeddedGraph& g, const Curve& c) {
  std::set<int> edges;
  for (int d : c.darts)
    if (!edges.insert(edge_of(d)).second) return false;
  std::vector<int> verts;
  for (int d : c.darts) verts.push_back(g.tail(d));
  if (!c.closed) verts.push_back(g.head(c.darts.back()));
  std::set<int> seen;
  size_t limit = verts.size();
  if (!c.closed && verts.front() == verts.back()) limit = verts.size() - 1;
  for (size_t i = 0; i < limit; ++i)
    if (!seen.insert(verts[i]).second) return false;
  return true;
}

SimpleCut cut_simple(const Surface& s, const Curve& c) {
  const EmbeddedGraph& g = s.g;
  check_walk(g, c);
  if (!vertex_simple(g, c)) throw ContractError("curve is not simple");
  const int D = g.num_darts();
  std::vector<uint8_t> cut(D, 0), gapcut(D, 0);
  for (int d : c.darts) cut[d] = cut[rev(d)] = 1;
  if (!c.closed) {
    if (!c.free_start) {
      int h = c.start.after;
      if (h < 0 || g.tail(h) != g.tail(c.darts.front())) throw ContractError("arc start corner is not at its first vertex");
      if (!s.hole[corner_face(g, h)]) throw ContractError("arc start is not on a boundary");
      gapcut[h] = 1;
    }
    if (!c.free_end) {
      int h = c.end.after;
      if (h < 0 || g.tail(h) != g.head(c.darts.back())) throw ContractError("arc end corner is not at its last vertex");
      if (!s.hole[corner_face(g, h)]) throw ContractError("arc end is not on a boundary");
      gapcut[h] = 1;
    }
  }
  // Rotation tokens: 3*d + kind, kind 0 uncut, 1 after-copy, 2 before-copy.
  std::vector<std::vector<int>> rot;
  std::vector<int> parent_vertex;
  std::vector<int> sec(D, -1), sec_after(D, -1), sec_before(D, -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> ring = g.darts_at(v);
    const int k = static_cast<int>(ring.size());
    int first = -1;
    for (int i = 0; i < 2 * k && first < 0; ++i) {
      int d = ring[i / 2];
      if ((i % 2 == 0 && cut[d]) || (i % 2 == 1 && gapcut[d])) first = i;
    }
    auto new_sector = [&]() {
      rot.emplace_back();
      parent_vertex.push_back(v);
      return static_cast<int>(rot.size()) - 1;
    };
    if (first < 0) {
      int id = new_sector();
      for (int d : ring) {
        sec[d] = id;
        rot[id].push_back(3 * d);
      }
      continue;
    }
    int s_first = new_sector();
    int cur = s_first;
    if (first % 2 == 0) {
      int d = ring[first / 2];
      sec_after[d] = s_first;
      rot[s_first].push_back(3 * d + 1);
    }
    for (int t = 1; t <= 2 * k; ++t) {
      int i = (first + t) % (2 * k);
      int d = ring[i / 2];
      bool is_dart = i % 2 == 0;
      if (t == 2 * k) {
        if (is_dart) {
          sec_before[d] = cur;
          rot[cur].push_back(3 * d + 2);
        }
        break;
      }
      if (is_dart) {
        if (cut[d]) {
          sec_before[d] = cur;
          rot[cur].push_back(3 * d + 2);
          cur = new_sector();
          sec_after[d] = cur;
          rot[cur].push_back(3 * d + 1);
        } else {
          sec[d] = cur;
          rot[cur].push_back(3 * d);
        }
      } else if (gapcut[d]) {
        cur = new_sector();
      }
    }
  }
  for (const auto& r : rot)
    if (r.empty()) throw ContractError("surgery produced an isolated vertex");

  EmbeddingInput in;
  in.n = static_cast<int>(rot.size());
  std::vector<int> token_dart(3 * D, -1);
  std::vector<int> parent_dart;
  std::vector<uint32_t> keys;
  auto add_edge = [&](int od, int tail_v, int head_v) {
    EdgeInput ed;
    ed.u = tail_v;
    ed.v = head_v;
    ed.w_uv = g.weight(od);
    ed.w_vu = g.weight(rev(od));
    ed.sig = g.sig(edge_of(od));
    in.edges.push_back(ed);
    int e = static_cast<int>(in.edges.size()) - 1;
    parent_dart.push_back(od);
    parent_dart.push_back(rev(od));
    return e;
  };
  SimpleCut out;
  out.map_normal.assign(D, -1);
  out.copy_after.assign(D, -1);
  out.copy_before.assign(D, -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = 2 * e, b = 2 * e + 1;
    bool s1 = g.sig(e);
    if (!cut[a]) {
      int ne = add_edge(a, sec[a], sec[b]);
      token_dart[3 * a] = 2 * ne;
      token_dart[3 * b] = 2 * ne + 1;
      keys.push_back(g.key(a));
      keys.push_back(g.key(b));
      continue;
    }
    // Left copy: after a at its tail; right copy: before a.
    int hb_left = s1 ? sec_after[b] : sec_before[b];
    int hb_right = s1 ? sec_before[b] : sec_after[b];
    int eL = add_edge(a, sec_after[a], hb_left);
    token_dart[3 * a + 1] = 2 * eL;
    token_dart[3 * b + (s1 ? 1 : 2)] = 2 * eL + 1;
    keys.push_back(g.key(a));
    keys.push_back(g.key(b));
    int eR = add_edge(a, sec_before[a], hb_right);
    token_dart[3 * a + 2] = 2 * eR;
    token_dart[3 * b + (s1 ? 2 : 1)] = 2 * eR + 1;
    keys.push_back(derive_key(g.key(a), 7));
    keys.push_back(derive_key(g.key(b), 7));
  }
  in.rotation.resize(rot.size());
  for (size_t v = 0; v < rot.size(); ++v)
    for (int tok : rot[v]) {
      int nd = token_dart[tok];
      MSSP_CHECK(nd >= 0, "unresolved rotation token");
      in.rotation[v].push_back(nd);
    }
  in.keys = keys;
  EmbeddedGraph ng = EmbeddedGraph::build(in);

  for (int d = 0; d < D; ++d) {
    if (!cut[d]) out.map_normal[d] = token_dart[3 * d];
    else {
      out.copy_after[d] = token_dart[3 * d + 1];
      out.copy_before[d] = token_dart[3 * d + 2];
    }
  }
  auto map_state = [&](int st) {
    int d = st >> 1, o = st & 1;
    int nd = cut[d] ? (o == 0 ? out.copy_before[d] : out.copy_after[d]) : out.map_normal[d];
    int no = o ^ (ng.normalization_flipped(ng.tail(nd)) ? 1 : 0);
    return 2 * nd + no;
  };
  CutResult& res = out.res;
  res.surface.g = ng;
  res.surface.hole = carry_holes(s, ng, map_state, false);
  res.parent_dart = parent_dart;
  res.parent_vertex = parent_vertex;
  res.surface.orig_dart.resize(ng.num_darts());
  for (int d = 0; d < ng.num_darts(); ++d) res.surface.orig_dart[d] = s.orig_dart[parent_dart[d]];
  res.surface.orig_vertex.resize(ng.num_vertices());
  for (int v = 0; v < ng.num_vertices(); ++v) res.surface.orig_vertex[v] = s.orig_vertex[parent_vertex[v]];

  // Faces on the far side of the first cut edge copies are the new boundary pieces.
  int d1 = c.darts.front();
  auto face_at = [&](int nd, int o) { return ng.face_of(nd, o ^ (ng.normalization_flipped(ng.tail(nd)) ? 1 : 0)); };
  int hl = face_at(out.copy_after[d1], 0);
  int hr = face_at(out.copy_before[d1], 1);
  res.new_holes.push_back(hl);
  if (hr != hl) res.new_holes.push_back(hr);
  for (int h : res.new_holes) MSSP_CHECK(res.surface.hole[h], "curve side is not a boundary after cutting");

  // Left/right copies of every vertex occurrence.
  const int k = static_cast<int>(c.darts.size());
  int parity = 0;
  for (int i = 0; i < k; ++i) {
    int out_d = c.darts[i];
    if (i > 0) parity ^= g.sig(edge_of(c.darts[i - 1])) ? 1 : 0;
    int L = parity == 0 ? sec_after[out_d] : sec_before[out_d];
    int R = parity == 0 ? sec_before[out_d] : sec_after[out_d];
    res.copies.push_back({L, R});
  }
  if (!c.closed) {
    parity ^= g.sig(edge_of(c.darts.back())) ? 1 : 0;
    int in_r = rev(c.darts.back());
    int L = parity == 0 ? sec_before[in_r] : sec_after[in_r];
    int R = parity == 0 ? sec_after[in_r] : sec_before[in_r];
    res.copies.push_back({L, R});
  }
  return out;
}

int hole_corner_at(const Surface& s, int v, const std::vector<int>& allowed) {
  for (int h : s.g.darts_at(v)) {
    int f = corner_face(s.g, h);
    if (!s.hole[f]) continue;
    if (allowed.empty() || std::find(allowed.begin(), allowed.end(), f) != allowed.end()) return h;
  }
  return -1;
}

CutResult compose(const CutResult& first, CutResult second) {
  for (auto& d : second.parent_dart) d = first.parent_dart[d];
  for (auto& v : second.parent_vertex) v = first.parent_vertex[v];
  return second;
}

}  // namespace

CutResult cut_along(const Surface& s, const Curve& c) {
  check_walk(s.g, c);
  if (vertex_simple(s.g, c)) return cut_simple(s, c).res;
  const int k = static_cast<int>(c.darts.size());
  int t = 0;
  while (2 * (t + 1) < k && c.darts[k - 1 - t] == rev(c.darts[t])) ++t;
  if (t == 0) throw ContractError("curve is not simple");
  Curve core;
  core.closed = true;
  core.darts.assign(c.darts.begin() + t, c.darts.end() - t);
  Curve tail;
  tail.darts.assign(c.darts.begin(), c.darts.begin() + t);
  tail.closed = false;
  if (!vertex_simple(s.g, core) || !vertex_simple(s.g, tail)) throw ContractError("curve is not simple");
  {
    std::set<int> cv;
    for (int d : core.darts) cv.insert(s.g.tail(d));
    for (int d : tail.darts)
      if (cv.count(s.g.tail(d))) throw ContractError("curve is not simple");
  }
  SimpleCut first = cut_simple(s, core);
  const Surface& s1 = first.res.surface;
  Curve slit;
  slit.closed = false;
  if (c.closed) {
    // Slit from the core boundary back to the basepoint.
    for (int i = t - 1; i >= 0; --i) slit.darts.push_back(first.map_normal[rev(c.darts[i])]);
    int w = s1.g.tail(slit.darts.front());
    slit.start.after = hole_corner_at(s1, w, first.res.new_holes);
    slit.free_end = true;
  } else {
    for (int i = 0; i < t; ++i) slit.darts.push_back(first.map_normal[c.darts[i]]);
    if (c.free_start) slit.free_start = true;
    else slit.start.after = first.map_normal[c.start.after];
    int w = s1.g.head(slit.darts.back());
    slit.end.after = hole_corner_at(s1, w, first.res.new_holes);
  }
  SimpleCut second = cut_simple(s1, slit);
  CutResult out = compose(first.res, second.res);
  // Copies reported for the core loop, carried through the slit.
  out.copies.clear();
  for (auto [L, R] : first.res.copies) {
    auto carry = [&](int v1) {
      for (int nv = 0; nv < static_cast<int>(second.res.parent_vertex.size()); ++nv)
        if (second.res.parent_vertex[nv] == v1) return nv;
      return -1;
    };
    out.copies.push_back({carry(L), carry(R)});
  }
  out.new_holes.clear();
  for (int f = 0; f < out.surface.g.num_faces(); ++f) {
    if (!out.surface.hole[f]) continue;
    // A hole is new when it contains a copy of a curve edge.
    bool is_new = false;
    for (int st : out.surface.g.face_states(f)) {
      int od = out.parent_dart[st >> 1];
      for (int d : c.darts)
        if (edge_of(od) == edge_of(d)) is_new = true;
    }
    if (is_new) out.new_holes.push_back(f);
  }
  return out;
}

Surface paste_disk(const Surface& s, int hole_face) {
  if (hole_face < 0 || hole_face >= static_cast<int>(s.hole.size()) || !s.hole[hole_face])
    throw ContractError("face " + std::to_string(hole_face) + " is not a boundary");
  Surface out = s;
  out.hole[hole_face] = 0;
  return out;
}

ContractResult contract_boundary(const Surface& s, int hole_face) {
  const EmbeddedGraph& g = s.g;
  if (hole_face < 0 || hole_face >= static_cast<int>(s.hole.size()) || !s.hole[hole_face])
    throw ContractError("face " + std::to_string(hole_face) + " is not a boundary");
  const auto& states = g.face_states(hole_face);
  const int k = static_cast<int>(states.size());
  const int D = g.num_darts();
  std::vector<uint8_t> on_delta(g.num_edges(), 0);
  std::vector<uint8_t> delta_vertex(g.num_vertices(), 0);
  for (int st : states) {
    on_delta[edge_of(st >> 1)] = 1;
    delta_vertex[g.tail(st >> 1)] = 1;
  }
  // Segments of non-boundary darts at every boundary occurrence.
  std::vector<std::vector<int>> segs(k);
  std::vector<int> seg_flip(k, 0), seg_corner(k, -1);
  for (int i = 0; i < k; ++i) {
    int d = states[i] >> 1, o = states[i] & 1;
    int nxt = states[(i + 1) % k] >> 1;
    int oo = o ^ (g.sig(edge_of(d)) ? 1 : 0);
    seg_flip[i] = oo;
    seg_corner[i] = oo == 0 ? rev(d) : nxt;
    int x = oo == 0 ? g.next_at(nxt) : g.prev_at(nxt);
    while (!on_delta[edge_of(x)]) {
      segs[i].push_back(x);
      x = oo == 0 ? g.next_at(x) : g.prev_at(x);
    }
  }
  std::vector<int> vmap(g.num_vertices(), -1);
  int nv = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!delta_vertex[v]) vmap[v] = nv++;
  const int apex = nv++;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (delta_vertex[v]) vmap[v] = apex;

  std::vector<int> dmap(D, -1), end_flip(D, 0), corner_of(D, -1);
  for (int i = 0; i < k; ++i)
    for (int d : segs[i]) {
      end_flip[d] = seg_flip[i];
      corner_of[d] = seg_corner[i];
    }
  EmbeddingInput in;
  in.n = nv;
  ContractResult res;
  std::vector<uint32_t> keys;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (on_delta[e]) continue;
    EdgeInput ed;
    ed.u = vmap[g.tail(2 * e)];
    ed.v = vmap[g.tail(2 * e + 1)];
    ed.w_uv = g.weight(2 * e);
    ed.w_vu = g.weight(2 * e + 1);
    ed.sig = g.sig(e) ^ (end_flip[2 * e] != 0) ^ (end_flip[2 * e + 1] != 0);
    int ne = static_cast<int>(in.edges.size());
    in.edges.push_back(ed);
    dmap[2 * e] = 2 * ne;
    dmap[2 * e + 1] = 2 * ne + 1;
    res.parent_dart.push_back(2 * e);
    res.parent_dart.push_back(2 * e + 1);
    keys.push_back(g.key(2 * e));
    keys.push_back(g.key(2 * e + 1));
  }
  in.rotation.assign(nv, {});
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (delta_vertex[v]) continue;
    for (int d : g.darts_at(v)) in.rotation[vmap[v]].push_back(dmap[d]);
  }
  for (int i = k - 1; i >= 0; --i)
    for (int d : segs[i]) in.rotation[apex].push_back(dmap[d]);
  if (in.rotation[apex].empty()) throw ContractError("contracting the boundary leaves an isolated point");
  in.keys = keys;
  EmbeddedGraph ng = EmbeddedGraph::build(in);
  auto map_state = [&](int st) {
    int d = st >> 1, o = st & 1;
    if (dmap[d] < 0) return -1;
    int nd = dmap[d];
    int no = o ^ end_flip[d] ^ (ng.normalization_flipped(ng.tail(nd)) ? 1 : 0);
    return 2 * nd + no;
  };
  Surface tmp = s;
  tmp.hole[hole_face] = 0;  // the contracted hole disappears
  std::vector<uint8_t> hole(ng.num_faces(), 2);
  for (int f = 0; f < g.num_faces(); ++f) {
    if (f == hole_face) continue;
    for (int st : g.face_states(f)) {
      int ns = map_state(st);
      if (ns < 0) continue;
      hole[ng.face_of(ns >> 1, ns & 1)] = s.hole[f];
      break;
    }
  }
  for (auto h : hole)
    if (h == 2) throw ContractError("boundary contraction changed the face structure");
  if (ng.num_faces() != g.num_faces() - 1) throw ContractError("boundary contraction changed the face count");
  res.surface.g = ng;
  res.surface.hole = hole;
  res.apex = apex;
  res.surface.orig_dart.resize(ng.num_darts());
  for (int d = 0; d < ng.num_darts(); ++d) res.surface.orig_dart[d] = s.orig_dart[res.parent_dart[d]];
  res.surface.orig_vertex.assign(ng.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!delta_vertex[v]) res.surface.orig_vertex[vmap[v]] = s.orig_vertex[v];
  res.apex_corner.assign(ng.num_darts(), -1);
  for (int d = 0; d < D; ++d)
    if (dmap[d] >= 0 && delta_vertex[g.tail(d)]) res.apex_corner[dmap[d]] = corner_of[d];
  return res;
}

Surface component_surface(const Surface& s, int comp, std::vector<int>* vertex_map, std::vector<int>* dart_map) {
  const EmbeddedGraph& g = s.g;
  std::vector<int> vmap(g.num_vertices(), -1), dmap(g.num_darts(), -1);
  EmbeddingInput in;
  std::vector<int> back_v, back_d;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.component_of(v) == comp) {
      vmap[v] = in.n++;
      back_v.push_back(v);
    }
  std::vector<uint32_t> keys;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.component_of(g.tail(2 * e)) != comp) continue;
    EdgeInput ed;
    ed.u = vmap[g.tail(2 * e)];
    ed.v = vmap[g.tail(2 * e + 1)];
    ed.w_uv = g.weight(2 * e);
    ed.w_vu = g.weight(2 * e + 1);
    ed.sig = g.sig(e);
    int ne = static_cast<int>(in.edges.size());
    in.edges.push_back(ed);
    dmap[2 * e] = 2 * ne;
    dmap[2 * e + 1] = 2 * ne + 1;
    back_d.push_back(2 * e);
    back_d.push_back(2 * e + 1);
    keys.push_back(g.key(2 * e));
    keys.push_back(g.key(2 * e + 1));
  }
  in.rotation.assign(in.n, {});
  for (int v : back_v)
    for (int d : g.darts_at(v)) in.rotation[vmap[v]].push_back(dmap[d]);
  in.keys = keys;
  Surface out;
  out.g = EmbeddedGraph::build(in);
  out.hole.assign(out.g.num_faces(), 0);
  for (int f = 0; f < g.num_faces(); ++f) {
    int st = g.face_states(f)[0];
    int d = st >> 1;
    if (dmap[d] < 0) continue;
    int nd = dmap[d];
    int no = (st & 1) ^ (out.g.normalization_flipped(out.g.tail(nd)) ? 1 : 0);
    out.hole[out.g.face_of(nd, no)] = s.hole[f];
  }
  out.orig_vertex.resize(in.n);
  for (int v = 0; v < in.n; ++v) out.orig_vertex[v] = s.orig_vertex[back_v[v]];
  out.orig_dart.resize(out.g.num_darts());
  for (int d = 0; d < out.g.num_darts(); ++d) out.orig_dart[d] = s.orig_dart[back_d[d]];
  if (vertex_map) *vertex_map = vmap;
  if (dart_map) *dart_map = dmap;
  return out;
}

}  // namespace mssp
