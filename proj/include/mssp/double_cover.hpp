#pragma once

#include <vector>

#include "mssp/embedded_graph.hpp"

namespace mssp {

// Orientable double cover of a non-orientable embedded graph. Vertex (v, j) of the cover is
// v + j*n; the lift (d, j) of a base dart d leaves (tail(d), j) and enters
// (head(d), j xor sig(d)). Base edge e lifts to cover edges e and e + m.
struct DoubleCover {
  EmbeddedGraph d;
  int n = 0, m = 0;
  std::vector<uint8_t> sig;  // base signature per edge

  int vertex(int v, int j) const { return v + j * n; }
  int base_vertex(int x) const { return x % n; }
  int bit(int x) const { return x / n; }

  // Cover dart leaving (tail(base), j) along base.
  int lift_dart(int base, int j) const {
    int e = edge_of(base);
    if ((base & 1) == 0) return 2 * (e + j * m);
    return 2 * (e + (j ^ sig[e]) * m) + 1;
  }
  int base_dart(int cover) const { return 2 * (edge_of(cover) % m) + (cover & 1); }
};

// Throws EmbeddingError for orientable or disconnected input.
DoubleCover build_double_cover(const EmbeddedGraph& g);

// Lift of a walk given as base darts, starting at (tail(walk[0]), j0). Throws std::invalid_argument
// when consecutive darts do not chain.
std::vector<int> lift_walk(const DoubleCover& c, const EmbeddedGraph& g, const std::vector<int>& walk, int j0);
std::vector<int> project_walk(const DoubleCover& c, const std::vector<int>& cover_walk);

// The lift of face f of g whose boundary passes through (v0, 0), v0 the first vertex of f's walk.
int lifted_face(const DoubleCover& c, const EmbeddedGraph& g, int f);

}  // namespace mssp
