#pragma once

#include <queue>
#include <vector>

#include "mssp/embedded_graph.hpp"

namespace mssp {

// Reference Dijkstra over dart weights w. pred_dart[v] is the dart entering v (-1 at the source
// and at unreachable vertices). Ties keep the first settled predecessor.
template <class Num>
std::vector<Num> dijkstra(const EmbeddedGraph& g, int src, const std::vector<Num>& w,
                          std::vector<int>* pred_dart = nullptr, std::vector<char>* reached = nullptr) {
  const int n = g.num_vertices();
  std::vector<Num> dist(n, NumTraits<Num>::zero());
  std::vector<char> done(n, 0), seen(n, 0);
  if (pred_dart) pred_dart->assign(n, -1);
  using Item = std::pair<Num, int>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  seen[src] = 1;
  pq.push({dist[src], src});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (done[v] || dv != dist[v]) continue;
    done[v] = 1;
    int d0 = g.first_dart(v);
    if (d0 < 0) continue;
    int d = d0;
    do {
      int h = g.head(d);
      Num cand = dv + w[d];
      if (!done[h] && (!seen[h] || cand < dist[h])) {
        seen[h] = 1;
        dist[h] = cand;
        if (pred_dart) (*pred_dart)[h] = d;
        pq.push({cand, h});
      }
      d = g.next_at(d);
    } while (d != d0);
  }
  if (reached) reached->assign(seen.begin(), seen.end());
  return dist;
}

// Distances from every source in `sources`, one row per source. The parallel variant
// fans the rows out over OpenMP threads (capped by MSSP_THREADS when set).
std::vector<std::vector<double>> dijkstra_rows_serial(const EmbeddedGraph& g, const std::vector<int>& sources,
                                                      const std::vector<double>& w);
std::vector<std::vector<double>> dijkstra_rows_parallel(const EmbeddedGraph& g, const std::vector<int>& sources,
                                                        const std::vector<double>& w);
std::vector<std::vector<Rational>> dijkstra_rows_exact(const EmbeddedGraph& g, const std::vector<int>& sources);

int worker_threads();

}  // namespace mssp
