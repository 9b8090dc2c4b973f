#include "mssp/dijkstra.hpp"

#include <omp.h>

#include <cstdlib>

namespace mssp {

int worker_threads() {
  int cap = omp_get_max_threads();
  if (const char* env = std::getenv("MSSP_THREADS")) {
    int t = std::atoi(env);
    if (t > 0 && t < cap) cap = t;
  }
  return cap;
}

std::vector<std::vector<double>> dijkstra_rows_serial(const EmbeddedGraph& g, const std::vector<int>& sources,
                                                      const std::vector<double>& w) {
  std::vector<std::vector<double>> rows;
  rows.reserve(sources.size());
  for (int s : sources) rows.push_back(dijkstra(g, s, w));
  return rows;
}

std::vector<std::vector<double>> dijkstra_rows_parallel(const EmbeddedGraph& g, const std::vector<int>& sources,
                                                        const std::vector<double>& w) {
  std::vector<std::vector<double>> rows(sources.size());
  const long k = static_cast<long>(sources.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
  for (long i = 0; i < k; ++i) rows[i] = dijkstra(g, sources[i], w);
  return rows;
}

std::vector<std::vector<Rational>> dijkstra_rows_exact(const EmbeddedGraph& g, const std::vector<int>& sources) {
  std::vector<Rational> w = g.weights<Rational>();
  std::vector<std::vector<Rational>> rows(sources.size());
  const long k = static_cast<long>(sources.size());
  // mpq_class arithmetic is thread-safe for distinct objects.
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
  for (long i = 0; i < k; ++i) rows[i] = dijkstra(g, sources[i], w);
  return rows;
}

}  // namespace mssp
