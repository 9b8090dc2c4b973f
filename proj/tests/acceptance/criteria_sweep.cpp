#include <cmath>
#include <sstream>

#include "acceptance.hpp"
#include "mssp/dijkstra.hpp"
#include "mssp/face_sweep.hpp"
#include "mssp/generate.hpp"
#include "mssp/slack_probe.hpp"

using namespace mssp;

namespace acceptance {

namespace {

using Graph = std::shared_ptr<const EmbeddedGraph>;

Graph share(EmbeddedGraph g) { return std::make_shared<const EmbeddedGraph>(std::move(g)); }

struct Instance {
  Graph g;
  int face;
};

Instance planar(int n, int k, uint64_t seed) {
  auto g = share(make_planar_triangulation(n, k, random_weights(seed), seed));
  int f = g->face_size(g->face_of(0, 0)) == k ? g->face_of(0, 0) : g->face_of(0, 1);
  return {g, f};
}

// Genus-g surface whose sweep face merges `merge` triangles.
Instance glued(int genus, int n, int merge, uint64_t seed) {
  auto base = make_genus_glued(genus, n, random_weights(seed), seed);
  int dart = 0;
  auto g = share(merge > 1 ? merge_faces(base, merge, seed, &dart) : std::move(base));
  return {g, g->face_of(dart, 0)};
}

// Compares every (face vertex, vertex) distance with exact Dijkstra. Returns the mismatch count
// and the worst relative error.
template <class Num>
long compare_with_dijkstra(const Instance& in, const FaceSweep<Num>& sw, double* worst) {
  const auto& G = *in.g;
  auto w = G.weights<Rational>();
  long bad = 0;
  std::vector<int> done;
  for (int u : sw.boundary) {
    if (std::find(done.begin(), done.end(), u) != done.end()) continue;
    done.push_back(u);
    auto want = dijkstra<Rational>(G, u, w);
    for (int v = 0; v < G.num_vertices(); ++v) {
      Num got = sw.dist(u, v);
      if constexpr (NumTraits<Num>::kExact) {
        bad += got != want[v];
      } else {
        double ref = want[v].get_d();
        double rel = std::fabs(got - ref) / std::max(1.0, std::fabs(ref));
        *worst = std::max(*worst, rel);
        bad += rel > 1e-9;
      }
    }
  }
  return bad;
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

// Full sweep with an observer at every event, using the engine sweep_face would pick.
template <class Num>
SweepStats observed_sweep(const Instance& in, SweepOptions opt, const std::function<void(const SweepView<Num>&)>& obs) {
  if (in.g->genus() == 0) {
    PlanarSweep<Num> sweep(in.g, in.face, opt);
    sweep.set_observer(obs);
    return sweep.run().stats;
  }
  auto walk = SweepCore<Num>::face_walk(*in.g, in.face);
  auto gt = share(triangulate(*in.g).g);
  GenusSweep<Num> sweep(gt, gt->face_of(walk[0], 0), opt);
  sweep.set_walk(walk);
  sweep.set_observer(obs);
  return sweep.run().stats;
}

}  // namespace

Outcome planar_distances() {
  const int sizes[] = {100, 500, 2000};
  long bad_exact = 0, bad_float = 0, pairs = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    int n = sizes[i % 3];
    int ks[] = {8, static_cast<int>(std::sqrt(n)), n / 10};
    auto in = planar(n, ks[(i / 3) % 3], 1000 + i);
    auto exact = sweep_face<Rational>(in.g, in.face);
    auto fl = sweep_face<double>(in.g, in.face);
    pivots().add(exact.stats(), 0);
    pivots().add(fl.stats(), 0);
    bad_exact += compare_with_dijkstra(in, exact, nullptr);
    bad_float += compare_with_dijkstra(in, fl, &worst);
    pairs += static_cast<long>(exact.boundary.size()) * n;
  }
  std::ostringstream os;
  os << "100 triangulations, " << pairs << " pairs; exact mismatches " << bad_exact << ", float over 1e-9 " << bad_float
     << " (worst rel " << fmt(worst) << ")";
  return {bad_exact == 0 && bad_float == 0, os.str()};
}

Outcome genus_distances() {
  const int sizes[] = {200, 500, 1000};
  long bad_exact = 0, bad_float = 0, pairs = 0;
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    int genus = 1 + i % 3, n = sizes[(i / 3) % 3];
    auto in = glued(genus, n, 4 + i % 12, 2000 + i);
    if (in.g->genus() != genus) return {false, "generator produced the wrong genus"};
    auto exact = sweep_face<Rational>(in.g, in.face);
    auto fl = sweep_face<double>(in.g, in.face);
    pivots().add(exact.stats(), genus);
    pivots().add(fl.stats(), genus);
    bad_exact += compare_with_dijkstra(in, exact, nullptr);
    bad_float += compare_with_dijkstra(in, fl, &worst);
    pairs += static_cast<long>(exact.boundary.size()) * in.g->num_vertices();
  }
  std::ostringstream os;
  os << "50 instances g=1..3, " << pairs << " pairs; exact mismatches " << bad_exact << ", float over 1e-9 " << bad_float
     << " (worst rel " << fmt(worst) << ")";
  return {bad_exact == 0 && bad_float == 0, os.str()};
}

Outcome pivot_laws() {
  const auto& p = pivots();
  if (p.sweeps == 0) return {false, "no sweeps recorded; run criteria 1, 2 or 4 first"};
  std::ostringstream os;
  os << p.sweeps << " sweeps; per-slide repeat pivots " << p.slide_violations << "; planar max pivots per dart "
     << p.planar_max << " over " << p.planar_sweeps << " sweeps; genus max per dart";
  for (auto [g, m] : p.genus_max) os << " g" << g << "=" << m;
  bool ok = p.slide_violations == 0 && p.planar_max <= 1;
  return {ok, os.str()};
}

Outcome certificates() {
  std::vector<Instance> ins;
  for (uint64_t s = 1; s <= 8; ++s) ins.push_back(planar(60 + 30 * static_cast<int>(s), 4 + 3 * static_cast<int>(s), 3000 + s));
  for (int genus = 1; genus <= 3; ++genus)
    for (uint64_t s = 1; s <= 3; ++s) ins.push_back(glued(genus, 80 * genus + 40, 6, 3100 + 10 * genus + s));
  for (uint64_t s = 1; s <= 3; ++s) {
    auto kb = make_klein_grid(5 + static_cast<int>(s), 6, random_weights(s), s);
    auto c = std::make_shared<DoubleCover>(build_double_cover(kb));
    ins.push_back({Graph(c, &c->d), lifted_face(*c, kb, kb.face_of(0, 0))});
  }
  long events = 0, violations = 0, internal = 0;
  std::string first;
  for (const auto& in : ins) {
    if (in.g->num_vertices() > 300) return {false, "instance above 300 vertices"};
    std::vector<Rational> w;
    const EmbeddedGraph* seen = nullptr;
    auto obs = [&](const SweepView<Rational>& v) {
      const auto& G = *v.g;
      if (v.dart < 0) return;
      if (seen != v.g) {
        seen = v.g;
        w = G.weights<Rational>();
      }
      ++events;
      auto fail = [&](const std::string& what) {
        if (violations++ == 0) first = what;
      };
      const int n = G.num_vertices(), sd = v.dart;
      const int u = G.tail(sd), x1 = G.head(sd);
      const Rational ds = v.dist(v.s_node);
      const Rational to_u = ds + v.lambda * w[rev(sd)], to_v = ds + (1 - v.lambda) * w[sd];
      // At lambda = 1 the tree is rerooted at the head of the slide dart.
      bool attached = false;
      for (int x = 0; x < n; ++x) {
        int p = v.parent(x), lab = v.label(x);
        if (p < 0 && v.lambda == 1 && x == x1) continue;
        if (p == v.s_node) {
          attached = true;
          if (x != u && x != x1) fail("vertex " + std::to_string(x) + " hangs from the source off the slide edge");
          else if (v.dist(x) != (x == u ? to_u : to_v)) fail("source piece to " + std::to_string(x) + " is not tight");
        } else if (p < 0 || lab < 0 || G.tail(lab) != p || G.head(lab) != x) {
          fail("vertex " + std::to_string(x) + " has a broken tree dart");
        } else if (v.dist(p) + w[lab] != v.dist(x)) {
          fail("tree dart " + std::to_string(lab) + " has nonzero slack");
        }
      }
      for (int d = 0; d < G.num_darts(); ++d) {
        if (edge_of(d) == edge_of(sd)) continue;
        if (v.dist(G.tail(d)) + w[d] < v.dist(G.head(d))) fail("dart " + std::to_string(d) + " is tense");
      }
      if (attached && (v.dist(u) > to_u || v.dist(x1) > to_v)) fail("a source piece is tense");
    };
    try {
      auto st = observed_sweep<Rational>(in, SweepOptions{true, -1}, obs);
      pivots().add(st, in.g->genus());
    } catch (const ContractError& e) {
      if (internal++ == 0 && first.empty()) first = e.what();
    }
  }
  std::ostringstream os;
  os << ins.size() << " sweeps (n<=300, debug invariants on), " << events << " events; independent violations " << violations
     << ", internal invariant failures " << internal;
  if (!first.empty()) os << "; first: " << first;
  return {violations == 0 && internal == 0 && events > 0, os.str()};
}

Outcome slack_slopes() {
  long samples = 0, failures = 0, refused = 0;
  long classes[3] = {0, 0, 0};
  std::string first;
  auto run = [&](Graph g, int face) {
    Graph swept;
    for (const auto& s : sample_slack_states(g, face, &swept)) {
      if (samples >= 1000) return;
      ++samples;
      try {
        auto rep = slack_derivative_check(*swept, s.dart, s.lambda, s.eps, s.red);
        if (!rep.pass && failures++ == 0) first = rep.counterexample;
      } catch (const std::invalid_argument& e) {
        if (refused++ == 0 && first.empty()) first = e.what();
      }
      for (int d = 0; d < swept->num_darts(); ++d) {
        if (edge_of(d) == edge_of(s.dart)) continue;
        bool a = s.red[swept->tail(d)], b = s.red[swept->head(d)];
        ++classes[!a && b ? 0 : a == b ? 1 : 2];
      }
    }
  };
  for (uint64_t seed = 1; samples < 1000 && seed <= 200; ++seed) {
    switch (seed % 3) {
      case 0: {
        auto in = planar(50 + static_cast<int>(seed % 7) * 10, 10, 4000 + seed);
        run(in.g, in.face);
        break;
      }
      case 1: {
        auto in = glued(1 + static_cast<int>(seed % 2), 60, 5, 4100 + seed);
        run(in.g, in.face);
        break;
      }
      default: {
        auto kb = make_klein_grid(4, 5, random_weights(seed), seed);
        auto c = std::make_shared<DoubleCover>(build_double_cover(kb));
        run(Graph(c, &c->d), lifted_face(*c, kb, kb.face_of(0, 0)));
      }
    }
  }
  std::ostringstream os;
  os << samples << " mid-slide states; slope mismatches " << failures << ", intervals straddling an event " << refused
     << "; darts seen blue->red " << classes[0] << ", same side " << classes[1] << ", red->blue " << classes[2];
  if (!first.empty()) os << "; first: " << first;
  return {samples >= 1000 && failures == 0 && refused == 0, os.str()};
}

Outcome double_cover() {
  struct Case {
    std::string name;
    EmbeddedGraph g;
  };
  std::vector<Case> cases;
  for (auto [w, h] : {std::pair{3, 3}, std::pair{4, 5}, std::pair{6, 4}})
    cases.push_back({"klein " + std::to_string(w) + "x" + std::to_string(h), make_klein_grid(w, h, random_weights(w * h), w)});
  for (int k : {3, 4, 6}) cases.push_back({"wheel " + std::to_string(k), make_projective_wheel(k, random_weights(k), k)});
  long count_fail = 0, bad = 0, pairs = 0, faces = 0;
  std::string first;
  for (const auto& c : cases) {
    const auto& g = c.g;
    DoubleCover dc = build_double_cover(g);
    const auto& d = dc.d;
    int euler_genus = 2 - static_cast<int>(g.euler_characteristic());
    bool ok = !g.orientable() && d.orientable() && d.num_vertices() == 2 * g.num_vertices() &&
              d.num_edges() == 2 * g.num_edges() && d.num_faces() == 2 * g.num_faces() && d.genus() == euler_genus - 1;
    if (!ok && count_fail++ == 0) first = c.name + ": counts or genus off";
    auto sg = share(g);
    for (int f = 0; f < g.num_faces(); ++f) {
      auto sw = sweep_face<Rational>(sg, f);
      long b = compare_with_dijkstra(Instance{sg, f}, sw, nullptr);
      if (b && bad == 0) first = c.name + ": distance mismatch from face " + std::to_string(f);
      bad += b;
      pairs += static_cast<long>(sw.boundary.size()) * g.num_vertices();
      ++faces;
    }
  }
  std::ostringstream os;
  os << cases.size() << " Klein-bottle and projective-plane graphs; count/genus failures " << count_fail << "; " << faces
     << " faces swept through the cover, " << pairs << " pairs, exact mismatches " << bad;
  if (!first.empty()) os << "; first: " << first;
  return {count_fail == 0 && bad == 0, os.str()};
}

}  // namespace acceptance
