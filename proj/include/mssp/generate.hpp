#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "mssp/surface.hpp"

namespace mssp {

// Weight for dart d of edge e; the generators call it once per dart in dart order.
using WeightFn = std::function<Rational(int dart)>;

WeightFn unit_weights();
// Dyadic weights uniform in [1, 100] with 30 fractional bits (exact in binary64).
WeightFn random_weights(uint64_t seed);

EmbeddedGraph make_triangle(const WeightFn& w);
EmbeddedGraph make_square(const WeightFn& w);
EmbeddedGraph make_single_loop(const WeightFn& w);

// w x h torus grid; each vertex has rotation N, E, S, W (up to orientation).
EmbeddedGraph make_torus_grid(int w, int h, const WeightFn& wt, bool diagonals = false, uint64_t seed = 0);
EmbeddedGraph make_klein_grid(int w, int h, const WeightFn& wt, uint64_t seed = 0);
// Hub plus k rim vertices on the projective plane (2k triangles).
EmbeddedGraph make_projective_wheel(int k, const WeightFn& wt, uint64_t seed = 0);
// Chain of g triangulated tori joined by connected sums, about n vertices in total.
EmbeddedGraph make_genus_glued(int g, int n, const WeightFn& wt, uint64_t seed = 0);
// Planar triangulation with a large outer face of k vertices; the outer face contains dart 0.
EmbeddedGraph make_planar_triangulation(int n, int k, const WeightFn& wt, uint64_t seed);

// Cylinder grid: `around` vertices per ring, `rings` rings. Inner and outer faces are holes.
Surface make_annulus(int around, int rings, const WeightFn& wt, uint64_t seed = 0);
// Annulus with one extra quad removed: a pair of pants.
Surface make_pants(int around, int rings, const WeightFn& wt, uint64_t seed = 0);
// Moebius band grid: `len` cells along the core, `width` cells across.
Surface make_moebius(int len, int width, const WeightFn& wt, uint64_t seed = 0);

// Merges `faces_to_merge` random faces into one large face by deleting dual-tree edges.
// Returns the graph; *face_dart receives a dart on the merged face.
EmbeddedGraph merge_faces(const EmbeddedGraph& g, int faces_to_merge, uint64_t seed, int* face_dart);

// Dispatch used by the CLI: kind in {planar-delaunay-like, torus-grid, genus-g-glued, klein-grid, annulus}.
Surface generate_instance(const std::string& kind, int n, int genus, uint64_t seed);

}  // namespace mssp
