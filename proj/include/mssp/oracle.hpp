#pragma once

#include <string>
#include <vector>

#include "mssp/cycles.hpp"

namespace mssp {

// Brute-force ground truth. Nothing here calls the sweep engines or the cycle finders.

struct OracleReport {
  std::string instance_hash;
  std::string check;
  bool pass = true;
  double worst = 0;            // largest discrepancy seen, in weight units
  std::string counterexample;  // empty when pass
};

// Stable 64-bit digest of the embedding and its weights, as 16 hex digits.
std::string instance_hash(const EmbeddedGraph& g);

// Row i holds exact distances from tail(face_darts(f)[i]) to every vertex.
std::vector<std::vector<Rational>> dijkstra_all_from_face(const EmbeddedGraph& g, int f);

struct EnumeratedCycle {
  std::vector<int> darts;
  Rational length;  // undirected: each edge counts with the weight of its even dart
  bool separating = false;
  bool contractible = false;
};

enum class EnumMode { kExhaustive, kSptCandidates };

// Every vertex-simple cycle (exhaustive, at most max_edges edges in the surface) or every
// distinct simple cycle closed by one edge over some shortest-path tree (SPT candidates).
// Throws std::length_error when the surface exceeds the bound.
std::vector<EnumeratedCycle> enumerate_cycles(const Surface& s, int max_edges = 12, EnumMode mode = EnumMode::kExhaustive);

// Shortest non-contractible (non-separating) cycle by the 3-path condition: all SPT loops from
// every vertex, tested by surgery in increasing length. Throws NoCycleError if none exists.
CyclePath brute_noncontractible(const Surface& s);
CyclePath brute_nonseparating(const Surface& s);

// Finite-difference check of the slack slopes while the source slides along dart uv.
// red[x] != 0 marks vertices the sweep places on u's side of the source at lambda.
// Throws std::invalid_argument when [lambda, lambda + eps] contains a change of side.
OracleReport slack_derivative_check(const EmbeddedGraph& g, int dart_uv, const Rational& lambda, const Rational& eps,
                                    const std::vector<uint8_t>& red);

}  // namespace mssp
