#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "mssp/surface.hpp"

namespace mssp {

// Raised when the requested kind of cycle does not exist (sphere, disk, simply connected input).
class NoCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Tri : int { kUnknown = -1, kNo = 0, kYes = 1 };

// A closed walk, or an arc whose ends sit on hole corners. Darts refer to the surface the
// path was computed on.
struct CyclePath {
  std::vector<int> darts;
  Rational length;
  int multiplicity = 0;
  bool closed = true;
  Corner start, end;  // arcs only
  Tri simple = Tri::kUnknown;
  Tri separating = Tri::kUnknown;
  Tri contractible = Tri::kUnknown;
};

// Both darts of every edge get the weight of its even dart. Faces, holes and keys are kept.
Surface symmetrize(const Surface& s);

Rational walk_length(const EmbeddedGraph& g, const std::vector<int>& darts);
int multiplicity(const std::vector<int>& darts);

// Strips a repeated tail (d ... rev d) from a closed walk; returns the inner loop.
std::vector<int> loop_core(const std::vector<int>& closed_walk);
bool is_simple_cycle(const EmbeddedGraph& g, const std::vector<int>& darts);

// Surgery tests on a simple closed walk (lassos are reduced to their core first).
bool is_separating(const Surface& s, const std::vector<int>& cycle);
bool is_contractible(const Surface& s, const std::vector<int>& cycle);
// Simple cycle that cobounds an annulus with the boundary `hole_face`.
bool is_homotopic_to_boundary(const Surface& s, const std::vector<int>& cycle, int hole_face);

// Number of times the closed walk gamma crosses the simple curve alpha, from the rotation
// system alone. Stretches where gamma runs along alpha count once if gamma changes side.
int crossing_count(const Surface& s, const Curve& alpha, const std::vector<int>& gamma);

// Shortest cycle crossing the simple curve alpha exactly once; nullopt when alpha separates.
std::optional<CyclePath> shortest_cycle_crossing_once(const Surface& s, const Curve& alpha);

// Shortest non-separating cycle of a connected surface; holes are treated as pasted.
CyclePath shortest_nonseparating(const Surface& s);

std::optional<CyclePath> shortest_noncontractible_loop_at(const Surface& s, int x);
std::optional<CyclePath> shortest_noncontractible_arc(const Surface& s, int hole_face);
CyclePath shortest_arc_between_boundaries(const Surface& s, int hole_a, int hole_b);
CyclePath shortest_cycle_homotopic_to_boundary(const Surface& s, int hole_face);

struct NonconStats {
  int iterations = 0;
  int case_a = 0, case_b = 0, case_c = 0;
  int candidates = 0;
  int max_edge_copies = 0;
};

CyclePath shortest_noncontractible(const Surface& s, NonconStats* stats = nullptr);

// Fills the tri-state flags of a closed path by surgery on s.
void certify(const Surface& s, CyclePath& c);

}  // namespace mssp
