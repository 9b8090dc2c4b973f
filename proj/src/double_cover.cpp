#include "mssp/double_cover.hpp"

#include <stdexcept>
#include <string>

namespace mssp {

DoubleCover build_double_cover(const EmbeddedGraph& g) {
  if (g.num_components() != 1) throw EmbeddingError("double cover needs a connected graph");
  if (g.orientable()) throw EmbeddingError("graph is orientable; no double cover needed");
  DoubleCover c;
  c.n = g.num_vertices();
  c.m = g.num_edges();
  c.sig.resize(c.m);
  for (int e = 0; e < c.m; ++e) c.sig[e] = g.sig(e);
  EmbeddingInput in;
  in.n = 2 * c.n;
  in.edges.resize(2 * c.m);
  for (int j = 0; j < 2; ++j)
    for (int e = 0; e < c.m; ++e) {
      EdgeInput& ei = in.edges[e + j * c.m];
      ei.u = c.vertex(g.tail(2 * e), j);
      ei.v = c.vertex(g.head(2 * e), j ^ c.sig[e]);
      ei.w_uv = g.weight(2 * e);
      ei.w_vu = g.weight(2 * e + 1);
      ei.sig = c.sig[e];
    }
  in.rotation.resize(in.n);
  for (int j = 0; j < 2; ++j)
    for (int v = 0; v < c.n; ++v)
      for (int d : g.darts_at(v)) in.rotation[c.vertex(v, j)].push_back(c.lift_dart(d, j));
  in.keys.resize(4 * c.m);
  for (int d = 0; d < 4 * c.m; ++d) in.keys[d] = g.key(c.base_dart(d)) ^ (edge_of(d) >= c.m ? 0x9e3779b9u : 0u);
  c.d = EmbeddedGraph::build(in);
  if (!c.d.orientable()) throw ContractError("double cover is not orientable");
  if (c.d.num_faces() != 2 * g.num_faces()) throw ContractError("double cover face count");
  return c;
}

std::vector<int> lift_walk(const DoubleCover& c, const EmbeddedGraph& g, const std::vector<int>& walk, int j0) {
  std::vector<int> out;
  int j = j0;
  for (size_t i = 0; i < walk.size(); ++i) {
    int d = walk[i];
    if (d < 0 || d >= g.num_darts()) throw std::invalid_argument("dart " + std::to_string(d) + " out of range");
    if (i > 0 && g.tail(d) != g.head(walk[i - 1]))
      throw std::invalid_argument("darts " + std::to_string(walk[i - 1]) + " and " + std::to_string(d) + " do not chain");
    out.push_back(c.lift_dart(d, j));
    j ^= c.sig[edge_of(d)];
  }
  return out;
}

std::vector<int> project_walk(const DoubleCover& c, const std::vector<int>& cover_walk) {
  std::vector<int> out;
  out.reserve(cover_walk.size());
  for (int d : cover_walk) out.push_back(c.base_dart(d));
  return out;
}

namespace {

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  const size_t k = a.size();
  for (size_t s = 0; s < k; ++s) {
    size_t i = 0;
    while (i < k && a[(s + i) % k] == b[i]) ++i;
    if (i == k) return true;
  }
  return false;
}

}  // namespace

int lifted_face(const DoubleCover& c, const EmbeddedGraph& g, int f) {
  auto walk = g.face_darts(f);
  auto lift = lift_walk(c, g, walk, 0);
  if (c.d.head(lift.back()) != c.d.tail(lift.front())) throw ContractError("lift of a facial walk is not closed");
  int cand = c.d.face_of(lift.front(), 0);
  if (cyclic_equal(c.d.face_darts(cand), lift)) return cand;
  std::vector<int> back;
  for (auto it = lift.rbegin(); it != lift.rend(); ++it) back.push_back(rev(*it));
  cand = c.d.face_of(back.front(), 0);
  if (cyclic_equal(c.d.face_darts(cand), back)) return cand;
  throw ContractError("no face of the cover lifts face " + std::to_string(f));
}

}  // namespace mssp
