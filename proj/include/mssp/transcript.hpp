#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mssp/embedded_graph.hpp"
#include "mssp/primal_tree.hpp"

namespace mssp {

enum class EventKind { kPivot, kSourcePivot, kReroot };

template <class Num>
struct PivotEvent {
  EventKind kind = EventKind::kPivot;
  int slide = 0;
  Num lambda;
  int entering = -1;  // dart x->y of the graph (the slide dart u->v stands for s->v)
  int leaving = -1;   // previous pred dart of y (rev of the slide dart stands for s->u)
};

struct SweepStats {
  long pivots = 0;
  long max_pivots_per_dart = 0;      // over the whole sweep, ordinary pivots only
  long per_slide_violations = 0;     // a dart entering twice within one slide
  long queue_ops = 0;                // genus sweep: green queue insertions and deletions
  long max_queue_ops_per_pivot = 0;
  long queue_bound_violations = 0;
  int max_paths = 0, max_branch_points = 0;
  size_t history_records = 0;
  size_t base_records = 0;
  std::vector<int> dart_pivots;      // per dart, ordinary pivots over the sweep
};

// Result of sweeping the source around one face.
template <class Num>
struct Transcript {
  int face = -1;
  std::vector<int> walk;         // darts d_0..d_{k-1}; slide i runs tail(d_i) -> head(d_i)
  std::vector<int> boundary;     // tail(d_i)
  std::vector<int> version;      // snapshot id for boundary position i
  std::vector<PivotEvent<Num>> events;
  SweepStats stats;
  std::shared_ptr<const EmbeddedGraph> graph;
  std::shared_ptr<PrimalTree<Num>> tree;

  // First boundary position whose vertex is u, or -1.
  int position_of(int u) const {
    for (size_t i = 0; i < version.size() && i < boundary.size(); ++i)
      if (boundary[i] == u) return static_cast<int>(i);
    return -1;
  }

  Num dist(int u, int v) const {
    int i = position_of(u);
    if (i < 0) throw std::invalid_argument("vertex " + std::to_string(u) + " is not on the swept face");
    return tree->query(version[i], v).dist;
  }

  // Darts from u to v along the shortest-path tree of version u.
  std::vector<int> path(int u, int v) const {
    int i = position_of(u);
    if (i < 0) throw std::invalid_argument("vertex " + std::to_string(u) + " is not on the swept face");
    std::vector<int> out;
    int x = v;
    while (x != u) {
      auto q = tree->query(version[i], x);
      if (q.label < 0) throw ContractError("broken pred chain at vertex " + std::to_string(x));
      out.push_back(q.label);
      x = graph->tail(q.label);
      if (out.size() > static_cast<size_t>(graph->num_vertices())) throw ContractError("pred cycle");
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

// Snapshot of a sweep between events, handed to observers and invariant checks.
template <class Num>
struct SweepView {
  const EmbeddedGraph* g = nullptr;
  int slide = 0;
  int dart = -1;     // current slide dart u->v
  Num lambda;
  int s_node = -1;   // virtual source node in the primal tree
  std::function<Num(int)> dist;
  std::function<int(int)> parent;   // parent node (s_node for the virtual source)
  std::function<int(int)> label;    // pred dart
};

struct SweepOptions {
  bool debug_invariants = false;
  // Slides to run (default: the whole face).
  int max_slides = -1;
};

}  // namespace mssp
