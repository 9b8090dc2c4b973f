#include "mssp/embedded_graph.hpp"

#include <numeric>
#include <queue>

namespace mssp {

uint32_t derive_key(uint64_t seed, int dart) {
  uint32_t k = static_cast<uint32_t>(splitmix64(seed * 0x100000001b3ULL + static_cast<uint64_t>(dart)));
  return k == 0 ? 1u : k;
}

EmbeddedGraph EmbeddedGraph::build(const EmbeddingInput& in) {
  EmbeddedGraph g;
  if (in.n <= 0) throw EmbeddingError("vertex count must be positive");
  const int m = static_cast<int>(in.edges.size());
  g.n_ = in.n;
  g.tail_.resize(2 * m);
  g.w_.resize(2 * m);
  g.synth_.assign(2 * m, 0);
  g.sig_.resize(m);
  Rational total = 0;
  for (int e = 0; e < m; ++e) {
    const EdgeInput& ed = in.edges[e];
    if (ed.u < 0 || ed.u >= in.n || ed.v < 0 || ed.v >= in.n)
      throw EmbeddingError("edge " + std::to_string(e) + " references vertex out of range");
    if (ed.w_uv < 0 || (ed.w_vu && *ed.w_vu < 0))
      throw EmbeddingError("edge " + std::to_string(e) + " has a negative weight");
    g.tail_[2 * e] = ed.u;
    g.tail_[2 * e + 1] = ed.v;
    g.w_[2 * e] = ed.w_uv;
    total += ed.w_uv;
    if (ed.w_vu) {
      g.w_[2 * e + 1] = *ed.w_vu;
      total += *ed.w_vu;
    }
    g.sig_[e] = ed.sig ? 1 : 0;
  }
  for (int e = 0; e < m; ++e) {
    if (!in.edges[e].w_vu) {
      g.w_[2 * e + 1] = 2 * total;
      g.synth_[2 * e + 1] = 1;
    }
  }
  g.wf_.resize(2 * m);
  for (int d = 0; d < 2 * m; ++d) g.wf_[d] = g.w_[d].get_d();
  g.key_.resize(2 * m);
  if (!in.keys.empty()) {
    if (static_cast<int>(in.keys.size()) != 2 * m) throw EmbeddingError("key table size mismatch");
    g.key_ = in.keys;
  } else {
    for (int d = 0; d < 2 * m; ++d) g.key_[d] = derive_key(in.seed, d);
  }

  if (static_cast<int>(in.rotation.size()) != in.n)
    throw EmbeddingError("rotation table has " + std::to_string(in.rotation.size()) + " rows, expected " +
                         std::to_string(in.n));
  g.next_.assign(2 * m, -1);
  g.prev_.assign(2 * m, -1);
  g.first_.assign(in.n, -1);
  g.degree_.assign(in.n, 0);
  std::vector<uint8_t> seen(2 * m, 0);
  for (int v = 0; v < in.n; ++v) {
    const auto& rot = in.rotation[v];
    if (rot.empty()) throw EmbeddingError("vertex " + std::to_string(v) + " has an empty rotation");
    for (size_t i = 0; i < rot.size(); ++i) {
      int d = rot[i];
      if (d < 0 || d >= 2 * m)
        throw EmbeddingError("rotation of vertex " + std::to_string(v) + " names unknown dart " + std::to_string(d));
      if (g.tail_[d] != v)
        throw EmbeddingError("rotation of vertex " + std::to_string(v) + " lists dart " + std::to_string(d) +
                             " whose tail is " + std::to_string(g.tail_[d]));
      if (seen[d]) throw EmbeddingError("dart " + std::to_string(d) + " appears twice in rotations");
      seen[d] = 1;
      int nx = rot[(i + 1) % rot.size()];
      g.next_[d] = nx;
    }
    for (size_t i = 0; i < rot.size(); ++i) g.prev_[rot[(i + 1) % rot.size()]] = rot[i];
    g.first_[v] = rot[0];
    g.degree_[v] = static_cast<int>(rot.size());
  }
  for (int d = 0; d < 2 * m; ++d)
    if (!seen[d]) throw EmbeddingError("dart " + std::to_string(d) + " missing from rotation of vertex " +
                                       std::to_string(g.tail_[d]));
  g.compute_components();
  g.normalize_signatures();
  g.trace_faces();
  return g;
}

void EmbeddedGraph::compute_components() {
  comp_.assign(n_, -1);
  num_components_ = 0;
  for (int s = 0; s < n_; ++s) {
    if (comp_[s] != -1) continue;
    std::vector<int> stack{s};
    comp_[s] = num_components_;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      int d = first_[x];
      do {
        int y = head(d);
        if (comp_[y] == -1) {
          comp_[y] = num_components_;
          stack.push_back(y);
        }
        d = next_[d];
      } while (d != first_[x]);
    }
    ++num_components_;
  }
}

void EmbeddedGraph::normalize_signatures() {
  std::vector<int> flip(n_, -1);
  comp_orientable_.assign(num_components_, 1);
  for (int s = 0; s < n_; ++s) {
    if (flip[s] != -1) continue;
    flip[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      int d = first_[x];
      do {
        int y = head(d);
        int want = flip[x] ^ sig_[edge_of(d)];
        if (flip[y] == -1) {
          flip[y] = want;
          stack.push_back(y);
        } else if (flip[y] != want) {
          comp_orientable_[comp_[x]] = 0;
        }
        d = next_[d];
      } while (d != first_[x]);
    }
  }
  orientable_ = true;
  for (int c = 0; c < num_components_; ++c) orientable_ = orientable_ && comp_orientable_[c];
  // Flip vertices of orientable components so that every signature becomes 0.
  flip_.assign(n_, 0);
  for (int v = 0; v < n_; ++v) {
    if (!comp_orientable_[comp_[v]] || !flip[v]) continue;
    flip_[v] = 1;
    int d = first_[v];
    std::vector<int> ring;
    do {
      ring.push_back(d);
      d = next_[d];
    } while (d != first_[v]);
    for (int x : ring) std::swap(next_[x], prev_[x]);
  }
  for (int e = 0; e < num_edges(); ++e)
    if (comp_orientable_[comp_[tail_[2 * e]]]) sig_[e] = 0;
}

int EmbeddedGraph::next_state(int state) const {
  int d = state >> 1, o = state & 1;
  int o2 = o ^ sig_[edge_of(d)];
  int r = rev(d);
  int nd = o2 == 0 ? next_[r] : prev_[r];
  return 2 * nd + o2;
}

void EmbeddedGraph::trace_faces() {
  const int S = 2 * num_darts();
  face_of_state_.assign(S, -1);
  face_states_.clear();
  auto trace = [&](int s0, int id, std::vector<int>* orbit) {
    int s = s0;
    do {
      if (face_of_state_[s] != -1) throw EmbeddingError("inconsistent face orbit (embedding is degenerate)");
      face_of_state_[s] = id;
      if (orbit) orbit->push_back(s);
      s = next_state(s);
    } while (s != s0);
  };
  for (int s = 0; s < S; ++s) {
    if (face_of_state_[s] != -1) continue;
    int d = s >> 1;
    if (comp_orientable_[comp_[tail_[d]]] && (s & 1)) continue;
    int id = static_cast<int>(face_states_.size());
    face_states_.emplace_back();
    trace(s, id, &face_states_.back());
    if (!comp_orientable_[comp_[tail_[d]]]) {
      int o = s & 1;
      int mirror = 2 * rev(d) + (o ^ 1 ^ sig_[edge_of(d)]);
      if (face_of_state_[mirror] == id) throw EmbeddingError("face orbit equals its own mirror");
      trace(mirror, id, nullptr);
    }
  }
  for (int d = 0; d < num_darts(); ++d)
    if (comp_orientable_[comp_[tail_[d]]]) face_of_state_[2 * d + 1] = face_of_state_[2 * rev(d)];
}

std::vector<int> EmbeddedGraph::face_darts(int f) const {
  std::vector<int> out;
  out.reserve(face_states_[f].size());
  for (int s : face_states_[f]) out.push_back(s >> 1);
  return out;
}

int EmbeddedGraph::genus() const {
  if (num_components_ != 1) throw ContractError("genus() requires a connected graph");
  long chi = euler_characteristic();
  return orientable_ ? static_cast<int>((2 - chi) / 2) : static_cast<int>(2 - chi);
}

std::vector<int> EmbeddedGraph::darts_at(int v) const {
  std::vector<int> out;
  int d = first_[v];
  do {
    out.push_back(d);
    d = next_[d];
  } while (d != first_[v]);
  return out;
}

EmbeddingInput EmbeddedGraph::to_input() const {
  EmbeddingInput in;
  in.n = n_;
  in.edges.resize(num_edges());
  for (int e = 0; e < num_edges(); ++e) {
    EdgeInput& ed = in.edges[e];
    ed.u = tail_[2 * e];
    ed.v = tail_[2 * e + 1];
    ed.w_uv = w_[2 * e];
    ed.w_vu = w_[2 * e + 1];
    ed.sig = sig_[e] != 0;
  }
  in.rotation.resize(n_);
  for (int v = 0; v < n_; ++v) in.rotation[v] = darts_at(v);
  in.keys = key_;
  return in;
}

EmbeddedGraph EmbeddedGraph::from_polygons(const PolygonInput& in) {
  const int m = static_cast<int>(in.edges.size());
  // Corner c joins the arrival slot rev(d_i) and the departure slot d_{i+1}.
  struct Corner {
    int slot[2];
  };
  std::vector<Corner> corners;
  std::vector<int> uses(m, 0);
  for (const auto& face : in.faces) {
    const int k = static_cast<int>(face.size());
    if (k == 0) throw EmbeddingError("empty face in polygon list");
    for (int i = 0; i < k; ++i) {
      int d = face[i], nd = face[(i + 1) % k];
      if (d < 0 || d >= 2 * m || nd < 0 || nd >= 2 * m) throw EmbeddingError("polygon names unknown dart");
      int hd = (d & 1) ? in.edges[d >> 1].u : in.edges[d >> 1].v;
      int tn = (nd & 1) ? in.edges[nd >> 1].v : in.edges[nd >> 1].u;
      if (hd != tn) throw EmbeddingError("polygon darts do not chain");
      corners.push_back({{rev(d), nd}});
      ++uses[d >> 1];
    }
  }
  for (int e = 0; e < m; ++e)
    if (uses[e] != 2) throw EmbeddingError("edge " + std::to_string(e) + " is not used exactly twice by faces");
  // Each slot has exactly two corner ends; ends are encoded 2*corner+side.
  std::vector<std::vector<int>> slot_ends(2 * m);
  for (int c = 0; c < static_cast<int>(corners.size()); ++c)
    for (int side = 0; side < 2; ++side) slot_ends[corners[c].slot[side]].push_back(2 * c + side);
  for (int d = 0; d < 2 * m; ++d)
    if (slot_ends[d].size() != 2) throw EmbeddingError("dart " + std::to_string(d) + " has malformed corners");
  std::vector<int> corner_dir(corners.size(), 0);
  std::vector<uint8_t> placed(2 * m, 0);
  EmbeddingInput out;
  out.n = in.n;
  out.edges = in.edges;
  out.seed = in.seed;
  out.rotation.assign(in.n, {});
  for (int start = 0; start < 2 * m; ++start) {
    if (placed[start]) continue;
    int v = (start & 1) ? in.edges[start >> 1].v : in.edges[start >> 1].u;
    if (!out.rotation[v].empty()) throw EmbeddingError("vertex " + std::to_string(v) + " is not a manifold point");
    int slot = start;
    int end = slot_ends[slot][0];
    while (true) {
      placed[slot] = 1;
      out.rotation[v].push_back(slot);
      int c = end >> 1, side = end & 1;
      // Walking from side to the other side of corner c.
      corner_dir[c] = side == 0 ? 1 : -1;
      int other_slot = corners[c].slot[side ^ 1];
      int arrive_end = 2 * c + (side ^ 1);
      const auto& ends = slot_ends[other_slot];
      int next_end = ends[0] == arrive_end ? ends[1] : ends[0];
      slot = other_slot;
      end = next_end;
      if (slot == start) break;
      if (placed[slot]) throw EmbeddingError("corner structure is not a single cycle");
    }
  }
  for (int v = 0; v < in.n; ++v)
    if (out.rotation[v].empty()) throw EmbeddingError("vertex " + std::to_string(v) + " is isolated");
  // Signature from the relative direction of the two corners flanking an edge traversal.
  std::vector<int> sig(m, -1);
  int ci = 0;
  for (const auto& face : in.faces) {
    const int k = static_cast<int>(face.size());
    for (int i = 0; i < k; ++i) {
      int here = ci + i;                  // corner after face[i] (at its head)
      int before = ci + (i + k - 1) % k;  // corner before face[i] (at its tail)
      int e = face[i] >> 1;
      int s = corner_dir[here] != corner_dir[before] ? 1 : 0;
      if (sig[e] == -1) sig[e] = s;
      else if (sig[e] != s) throw EmbeddingError("inconsistent signature for edge " + std::to_string(e));
    }
    ci += k;
  }
  for (int e = 0; e < m; ++e) out.edges[e].sig = sig[e] == 1;
  EmbeddedGraph g = build(out);
  if (g.num_faces() != static_cast<int>(in.faces.size()))
    throw EmbeddingError("polygon gluing produced " + std::to_string(g.num_faces()) + " faces, expected " +
                         std::to_string(in.faces.size()));
  return g;
}

}  // namespace mssp
