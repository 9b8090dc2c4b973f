#pragma once

#include <vector>

#include "mssp/embedded_graph.hpp"

namespace mssp {

// A combinatorial surface: an embedding whose faces marked as holes are boundary components.
// orig_vertex / orig_dart trace every element back to the graph the surface was made from.
struct Surface {
  EmbeddedGraph g;
  std::vector<uint8_t> hole;  // per face
  std::vector<int> orig_vertex;
  std::vector<int> orig_dart;

  int num_holes() const;
  std::vector<int> holes() const;
  // Boundary cycle of a hole as a list of darts (orientation state dropped).
  std::vector<int> boundary_darts(int hole_face) const;
};

Surface make_surface(const EmbeddedGraph& g);

struct ComponentCensus {
  int vertices = 0, edges = 0, faces = 0, holes = 0;
  bool orientable = true;
  long chi = 0;     // V - E + F with holes excluded
  int genus = 0;    // orientable genus, or Euler genus when non-orientable
  bool is_disk() const { return genus == 0 && holes == 1; }
  bool is_sphere() const { return genus == 0 && holes == 0; }
};

std::vector<ComponentCensus> census(const Surface& s);

// A hole corner at vertex tail(after) is the gap between after and next_at(after).
struct Corner {
  int after = -1;
};

// Face occupying the gap after dart h at its tail.
int corner_face(const EmbeddedGraph& g, int h);

// Curve to cut along. Closed curves are cycles; open ones are arcs whose ends sit on hole
// corners. An end with corner.after == -1 and free_end set is left unsplit (a slit end).
struct Curve {
  std::vector<int> darts;
  bool closed = true;
  Corner start, end;
  bool free_start = false, free_end = false;
};

struct CutResult {
  Surface surface;
  // For each vertex occurrence along the curve (k for cycles, k+1 for arcs): the two copies,
  // left and right of the curve.
  std::vector<std::pair<int, int>> copies;
  std::vector<int> new_holes;
  // new dart -> dart of the surface that was cut
  std::vector<int> parent_dart;
  std::vector<int> parent_vertex;
};

// Cuts along a curve whose vertices are distinct (arc ends may coincide). Lasso-shaped
// walks of multiplicity 2 (a tail, a simple loop, the tail again) are decomposed.
CutResult cut_along(const Surface& s, const Curve& c);

Surface paste_disk(const Surface& s, int hole_face);

struct ContractResult {
  Surface surface;
  int apex = -1;
  // new dart -> dart of the input surface
  std::vector<int> parent_dart;
  // For apex darts: the hole corner of the input surface the dart came from.
  std::vector<int> apex_corner;
};

ContractResult contract_boundary(const Surface& s, int hole_face);

// Extracts one connected component (holes preserved).
Surface component_surface(const Surface& s, int comp, std::vector<int>* vertex_map = nullptr,
                          std::vector<int>* dart_map = nullptr);

}  // namespace mssp
