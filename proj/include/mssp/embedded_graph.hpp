#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "mssp/numeric.hpp"

namespace mssp {

// Thrown for malformed embeddings; the message names the offending element.
class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Contract violations inside the algorithms (distinct from bad input).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define MSSP_CHECK(cond, msg)                                            \
  do {                                                                   \
    if (!(cond)) throw ::mssp::ContractError(std::string(msg) + " [" #cond "]"); \
  } while (0)

// Edge e owns darts 2e (u->v) and 2e+1 (v->u).
inline int rev(int d) { return d ^ 1; }
inline int edge_of(int d) { return d >> 1; }

struct EdgeInput {
  int u = 0, v = 0;
  Rational w_uv;
  std::optional<Rational> w_vu;  // missing reversal gets synthesized
  bool sig = false;
};

struct EmbeddingInput {
  int n = 0;
  std::vector<EdgeInput> edges;
  // rotation[v] lists the darts leaving v in cyclic order.
  std::vector<std::vector<int>> rotation;
  uint64_t seed = 0;
  // Optional explicit perturbation keys per dart (overrides seed).
  std::vector<uint32_t> keys;
};

// Polygon description used by the generators: each face is a closed list of darts.
struct PolygonInput {
  int n = 0;
  std::vector<EdgeInput> edges;
  std::vector<std::vector<int>> faces;
  uint64_t seed = 0;
};

class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;

  static EmbeddedGraph build(const EmbeddingInput& in);
  // Rotation and signature are recovered from a face list where every edge is used twice.
  static EmbeddedGraph from_polygons(const PolygonInput& in);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(tail_.size() / 2); }
  int num_darts() const { return static_cast<int>(tail_.size()); }
  int num_faces() const { return static_cast<int>(face_states_.size()); }

  int tail(int d) const { return tail_[d]; }
  int head(int d) const { return tail_[d ^ 1]; }
  int next_at(int d) const { return next_[d]; }  // pi
  int prev_at(int d) const { return prev_[d]; }  // pi^-1
  int first_dart(int v) const { return first_[v]; }
  int degree(int v) const { return degree_[v]; }
  bool sig(int e) const { return sig_[e] != 0; }

  const Rational& weight(int d) const { return w_[d]; }
  double weight_f(int d) const { return wf_[d]; }
  uint32_t key(int d) const { return key_[d]; }
  bool synthesized(int d) const { return synth_[d] != 0; }
  Rational w_hat(int e) const { return w_[2 * e] + w_[2 * e + 1]; }

  template <class Num>
  std::vector<Num> weights() const {
    std::vector<Num> out(w_.size());
    for (size_t i = 0; i < w_.size(); ++i) {
      if constexpr (std::is_same_v<Num, double>) out[i] = wf_[i];
      else out[i] = w_[i];
    }
    return out;
  }

  bool orientable() const { return orientable_; }
  bool component_orientable(int c) const { return comp_orientable_[c] != 0; }
  // True when build() reversed the rotation at v while normalizing signatures.
  bool normalization_flipped(int v) const { return flip_[v] != 0; }

  // Face of the side o of dart d. Orientable graphs are stored with all signatures 0,
  // so face_of(d) is the face traced by d -> pi(rev d) and face_of(d, 1) = face_of(rev d).
  int face_of(int d, int o = 0) const { return face_of_state_[2 * d + o]; }
  // Encoded states 2*d+o of one representative orbit.
  const std::vector<int>& face_states(int f) const { return face_states_[f]; }
  std::vector<int> face_darts(int f) const;
  int face_size(int f) const { return static_cast<int>(face_states_[f].size()); }

  // Successor of state (d,o) along its face orbit.
  int next_state(int state) const;

  int num_components() const { return num_components_; }
  int component_of(int v) const { return comp_[v]; }
  long euler_characteristic() const { return static_cast<long>(n_) - num_edges() + num_faces(); }
  // Genus of a connected graph: orientable g, or non-orientable (Euler) genus.
  int genus() const;

  std::vector<int> darts_at(int v) const;

  // Rebuilds the input description (after normalization).
  EmbeddingInput to_input() const;

 private:
  void trace_faces();
  void compute_components();
  void normalize_signatures();

  int n_ = 0;
  std::vector<int> tail_, next_, prev_, first_, degree_;
  std::vector<uint8_t> sig_, synth_;
  std::vector<Rational> w_;
  std::vector<double> wf_;
  std::vector<uint32_t> key_;
  bool orientable_ = true;
  std::vector<int> face_of_state_;
  std::vector<std::vector<int>> face_states_;
  std::vector<int> comp_;
  int num_components_ = 0;
  std::vector<uint8_t> comp_orientable_;
  std::vector<uint8_t> flip_;
};

uint32_t derive_key(uint64_t seed, int dart);

}  // namespace mssp
