#pragma once

#include <vector>

#include "mssp/embedded_graph.hpp"

namespace mssp {

// Dual graph. Dart d of G corresponds to dart d of the dual, running from the face on the
// right of d (face_of(d, 0)) to the face on its left. Vertex f of the dual is face f of G.
EmbeddedGraph dual(const EmbeddedGraph& g);

struct TreeCotree {
  std::vector<int> tree, cotree, leftover;  // edge ids
};

// tree_edges must form a spanning tree of the connected, orientable graph g.
TreeCotree tree_cotree(const EmbeddedGraph& g, const std::vector<int>& tree_edges);

// Edges of a BFS tree from root (unweighted).
std::vector<int> bfs_tree(const EmbeddedGraph& g, int root);

struct Reduction {
  EmbeddedGraph g;
  std::vector<int> orig_vertex;  // new vertex -> original vertex
  std::vector<int> orig_dart;    // new dart -> original dart, -1 for added darts
  std::vector<int> new_dart;     // original dart -> new dart
  std::vector<int> new_vertex;   // original vertex -> a representative new vertex
};

// Heavy weight used for fill darts: exceeds the length of any simple path.
Rational heavy_weight(const EmbeddedGraph& g);

// Splits every face of an orientable graph into triangles with heavy fan diagonals.
// Original darts keep their ids.
Reduction triangulate(const EmbeddedGraph& g);

// Replaces each vertex of degree > 3 by a path of degree-3 vertices joined by weight-0 edges,
// then triangulates. Degree <= 3 holds for the non-fill edges.
Reduction degree_reduce_and_triangulate(const EmbeddedGraph& g);

}  // namespace mssp
