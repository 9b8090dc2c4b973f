#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "cli_common.hpp"
#include "mssp/double_cover.hpp"
#include "mssp/face_sweep.hpp"
#include "mssp/generate.hpp"
#include "mssp/oracle.hpp"
#include "mssp/slack_probe.hpp"

namespace mssp::cli {

Surface load_graph(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw UsageError("--graph is required");
  return read_msgraph_file(cfg.graph, cfg.weights, cfg.seed);
}

int parse_dart(const std::string& text, const EmbeddedGraph& g) {
  size_t pos = 0;
  long id = 0;
  try {
    id = std::stol(text, &pos);
  } catch (const std::logic_error&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || id == 0) throw UsageError("bad dart id '" + text + "'");
  long e = std::labs(id) - 1;
  if (e >= g.num_edges()) throw std::invalid_argument("dart id " + text + " out of range");
  return static_cast<int>(2 * e + (id < 0 ? 1 : 0));
}

std::string dart_text(int d) { return std::string(d % 2 ? "-" : "+") + std::to_string(d / 2 + 1); }

ordered_json dart_list(const std::vector<int>& darts) {
  ordered_json j = ordered_json::array();
  for (int d : darts) j.push_back(dart_text(d));
  return j;
}

int chosen_face(const RunConfig& cfg, const EmbeddedGraph& g) {
  if (g.num_darts() == 0) throw std::invalid_argument("graph has no edges");
  int d = cfg.face.empty() ? 0 : parse_dart(cfg.face, g);
  return g.face_of(d, 0);
}

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("MSSP_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) throw UsageError(std::string("MSSP_THREADS must be a positive integer, got '") + env + "'");
    n = static_cast<int>(std::min<long>(n, cap));
  }
  return n;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

namespace {

std::string number(const Rational& q, WeightMode mode) {
  if (mode == WeightMode::kFloat) return NumTraits<double>::to_string(q.get_d());
  return rational_to_string(q);
}

template <class Num>
std::string number(const Num& x) {
  return NumTraits<Num>::to_string(x);
}

ordered_json tri(Tri t) {
  if (t == Tri::kUnknown) return nullptr;
  return t == Tri::kYes;
}

ordered_json stats_json(const SweepStats& s) {
  ordered_json j;
  j["pivots"] = s.pivots;
  j["max_pivots_per_dart"] = s.max_pivots_per_dart;
  j["per_slide_violations"] = s.per_slide_violations;
  j["queue_ops"] = s.queue_ops;
  j["max_queue_ops_per_pivot"] = s.max_queue_ops_per_pivot;
  j["history_records"] = s.history_records;
  return j;
}

ordered_json cycle_json(const Surface& s, const CyclePath& c, const std::string& kind, WeightMode mode) {
  ordered_json j;
  j["instance_hash"] = instance_hash(s.g);
  j["kind"] = kind;
  j["length"] = number(c.length, mode);
  j["edges"] = c.darts.size();
  j["multiplicity"] = c.multiplicity;
  j["simple"] = tri(c.simple);
  j["separating"] = tri(c.separating);
  j["contractible"] = tri(c.contractible);
  ordered_json verts = ordered_json::array();
  for (int d : c.darts) verts.push_back(s.g.tail(d));
  j["vertices"] = verts;
  j["darts"] = dart_list(c.darts);
  return j;
}

template <class Num>
int run_sweep(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  int face = chosen_face(cfg, s.g);
  auto g = std::make_shared<const EmbeddedGraph>(s.g);
  SweepOptions opt;
  opt.debug_invariants = cfg.debug_invariants;
  auto sw = sweep_face<Num>(g, face, opt);
  ordered_json j;
  j["instance_hash"] = instance_hash(*g);
  j["face"] = face;
  j["face_size"] = sw.walk.size();
  j["engine"] = sw.engine;
  j["weights"] = cfg.weights == WeightMode::kFloat ? "float" : "rational";
  j["boundary"] = sw.boundary;
  j["walk"] = dart_list(sw.walk);
  j["stats"] = stats_json(sw.stats());
  emit(cfg, dump(j));
  return 0;
}

std::vector<std::pair<int, int>> read_queries(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  std::vector<std::pair<int, int>> out;
  std::string line;
  for (int no = 1; std::getline(f, line); ++no) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    long u, v;
    std::string extra;
    if (!(ss >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw FormatError(path + ": line " + std::to_string(no) + ": expected 'u v'");
    }
    if (!(ss >> v) || (ss >> extra)) throw FormatError(path + ": line " + std::to_string(no) + ": expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument(path + ": line " + std::to_string(no) + ": vertex out of range");
    out.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return out;
}

template <class Num>
int run_query(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  int face = chosen_face(cfg, s.g);
  auto g = std::make_shared<const EmbeddedGraph>(s.g);
  SweepOptions opt;
  opt.debug_invariants = cfg.debug_invariants;
  std::vector<std::pair<int, int>> qs;
  if (!cfg.queries.empty()) qs = read_queries(cfg.queries, g->num_vertices());
  auto sw = sweep_face<Num>(g, face, opt);
  if (cfg.queries.empty()) {
    std::vector<int> seen;
    for (int u : sw.boundary) {
      if (std::find(seen.begin(), seen.end(), u) != seen.end()) continue;
      seen.push_back(u);
      for (int v = 0; v < g->num_vertices(); ++v) qs.push_back({u, v});
    }
  }
  for (auto [u, v] : qs)
    if (!sw.on_face(u)) throw std::invalid_argument("vertex " + std::to_string(u) + " is not on the swept face");

  std::vector<std::string> lines(qs.size());
  const long count = static_cast<long>(qs.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    auto [u, v] = qs[i];
    ordered_json j;
    j["u"] = u;
    j["v"] = v;
    j["dist"] = number(sw.dist(u, v));
    if (cfg.paths) j["path"] = dart_list(sw.path(u, v));
    lines[i] = j.dump() + "\n";
  }
  std::string text;
  for (const auto& l : lines) text += l;
  emit(cfg, text);
  return 0;
}

ordered_json report_json(const OracleReport& r, long checked) {
  ordered_json j;
  j["instance_hash"] = r.instance_hash;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["worst"] = r.worst;
  j["checked"] = checked;
  j["counterexample"] = r.counterexample;
  return j;
}

double gap(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return std::fabs(d.get_d());
}

int oracle_dist(const RunConfig& cfg, const Surface& s, OracleReport& rep) {
  int face = chosen_face(cfg, s.g);
  auto g = std::make_shared<const EmbeddedGraph>(s.g);
  SweepOptions opt;
  opt.debug_invariants = cfg.debug_invariants;
  auto sw = sweep_face<Rational>(g, face, opt);
  auto walk = g->face_darts(face);
  const int rows = static_cast<int>(walk.size()), n = g->num_vertices();
  auto w = g->weights<Rational>();
  std::vector<double> worst(rows, 0);
  std::vector<std::string> bad(rows);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (int i = 0; i < rows; ++i) {
    int u = g->tail(walk[i]);
    auto ref = dijkstra<Rational>(*g, u, w);
    for (int v = 0; v < n; ++v) {
      Rational got = sw.dist(u, v);
      if (got == ref[v]) continue;
      worst[i] = std::max(worst[i], gap(got, ref[v]));
      if (bad[i].empty())
        bad[i] = "u=" + std::to_string(u) + " v=" + std::to_string(v) + " sweep=" + rational_to_string(got) +
                 " dijkstra=" + rational_to_string(ref[v]);
    }
  }
  for (int i = 0; i < rows; ++i) {
    rep.worst = std::max(rep.worst, worst[i]);
    if (!bad[i].empty() && rep.pass) {
      rep.pass = false;
      rep.counterexample = bad[i];
    }
  }
  return rows * n;
}

// Length of a finder's result, or nullopt when it reports that no cycle exists.
template <class F>
std::optional<Rational> length_or_none(F&& f) {
  try {
    return f().length;
  } catch (const NoCycleError&) {
    return std::nullopt;
  }
}

int oracle_cycles(const Surface& s, OracleReport& rep) {
  struct Pair {
    const char* name;
    std::optional<Rational> fast, brute;
  } pairs[2] = {{"noncontractible", {}, {}}, {"nonseparating", {}, {}}};
  pairs[0].fast = length_or_none([&] { return shortest_noncontractible(s); });
  pairs[0].brute = length_or_none([&] { return brute_noncontractible(s); });
  pairs[1].fast = length_or_none([&] { return shortest_nonseparating(s); });
  pairs[1].brute = length_or_none([&] { return brute_nonseparating(s); });
  auto show = [](const std::optional<Rational>& q) { return q ? rational_to_string(*q) : std::string("none"); };
  for (const auto& p : pairs) {
    if (p.fast == p.brute) continue;
    if (p.fast && p.brute) rep.worst = std::max(rep.worst, gap(*p.fast, *p.brute));
    if (rep.pass) rep.counterexample = std::string(p.name) + " fast=" + show(p.fast) + " brute=" + show(p.brute);
    rep.pass = false;
  }
  return 2;
}

int oracle_slack(const RunConfig& cfg, const Surface& s, OracleReport& rep) {
  auto g = std::make_shared<const EmbeddedGraph>(s.g);
  int face = chosen_face(cfg, *g);
  if (!g->orientable()) {
    auto cover = std::make_shared<DoubleCover>(build_double_cover(*g));
    face = lifted_face(*cover, *g, face);
    g = std::shared_ptr<const EmbeddedGraph>(cover, &cover->d);
  }
  std::shared_ptr<const EmbeddedGraph> swept;
  auto samples = sample_slack_states(g, face, &swept);
  const int count = static_cast<int>(samples.size());
  std::vector<OracleReport> out(count);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (int i = 0; i < count; ++i) {
    const auto& sm = samples[i];
    out[i] = slack_derivative_check(*swept, sm.dart, sm.lambda, sm.eps, sm.red);
  }
  for (int i = 0; i < count; ++i) {
    rep.worst = std::max(rep.worst, out[i].worst);
    if (!out[i].pass && rep.pass) {
      rep.pass = false;
      rep.counterexample = "sample " + std::to_string(i) + ": " + out[i].counterexample;
    }
  }
  return count;
}

Surface instance_for(const RunConfig& cfg) {
  if (!cfg.graph.empty()) return load_graph(cfg);
  // Generated weights are dyadic, so both weight modes read them exactly.
  return generate_instance(cfg.kind, cfg.n, cfg.genus, cfg.seed);
}

template <class Num>
int run_bench(const RunConfig& cfg) {
  Surface s = instance_for(cfg);
  int face = chosen_face(cfg, s.g);
  auto g = std::make_shared<const EmbeddedGraph>(s.g);
  SweepOptions opt;
  opt.debug_invariants = cfg.debug_invariants;
  std::vector<double> secs;
  std::string engine;
  SweepStats stats;
  for (int r = 0; r < cfg.repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    auto sw = sweep_face<Num>(g, face, opt);
    secs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    engine = sw.engine;
    stats = sw.stats();
  }
  std::sort(secs.begin(), secs.end());
  ordered_json j;
  j["instance_hash"] = instance_hash(*g);
  j["vertices"] = g->num_vertices();
  j["edges"] = g->num_edges();
  j["genus"] = g->genus();
  j["orientable"] = g->orientable();
  j["face_size"] = g->face_size(face);
  j["engine"] = engine;
  j["weights"] = cfg.weights == WeightMode::kFloat ? "float" : "rational";
  j["repeat"] = cfg.repeat;
  j["seconds_min"] = secs.front();
  j["seconds_median"] = secs[secs.size() / 2];
  j["stats"] = stats_json(stats);
  emit(cfg, dump(j));
  return 0;
}

}  // namespace

int cmd_validate(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  const auto& g = s.g;
  ordered_json j;
  j["instance_hash"] = instance_hash(g);
  j["orientable"] = g.orientable();
  j["vertices"] = g.num_vertices();
  j["edges"] = g.num_edges();
  j["faces"] = g.num_faces();
  j["holes"] = s.num_holes();
  j["euler_characteristic"] = g.euler_characteristic();
  j["genus"] = g.genus();
  ordered_json comps = ordered_json::array();
  for (const auto& c : census(s)) {
    ordered_json k;
    k["vertices"] = c.vertices;
    k["edges"] = c.edges;
    k["faces"] = c.faces;
    k["holes"] = c.holes;
    k["orientable"] = c.orientable;
    k["chi"] = c.chi;
    k["genus"] = c.genus;
    comps.push_back(k);
  }
  j["components"] = comps;
  emit(cfg, dump(j));
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  return cfg.weights == WeightMode::kFloat ? run_sweep<double>(cfg) : run_sweep<Rational>(cfg);
}

int cmd_query(const RunConfig& cfg) {
  return cfg.weights == WeightMode::kFloat ? run_query<double>(cfg) : run_query<Rational>(cfg);
}

int cmd_cover(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  DoubleCover c = build_double_cover(s.g);
  write_msgraph_file(cfg.out, make_surface(c.d));
  ordered_json j;
  j["base_instance_hash"] = instance_hash(s.g);
  j["cover_instance_hash"] = instance_hash(c.d);
  j["base_vertices"] = c.n;
  j["base_edges"] = c.m;
  ordered_json verts = ordered_json::array(), edges = ordered_json::array();
  for (int x = 0; x < c.d.num_vertices(); ++x) verts.push_back({c.base_vertex(x), c.bit(x)});
  // Cover edge k is the lift of base edge k mod m that leaves sheet k / m from its first endpoint.
  for (int k = 0; k < c.d.num_edges(); ++k) edges.push_back({k % c.m + 1, k / c.m});
  j["vertex"] = verts;
  j["edge"] = edges;
  ordered_json faces = ordered_json::array();
  for (int f = 0; f < s.g.num_faces(); ++f) faces.push_back(lifted_face(c, s.g, f));
  j["lifted_face"] = faces;
  std::ofstream side(cfg.out + ".map.json", std::ios::binary);
  if (!side) throw UsageError("cannot write " + cfg.out + ".map.json");
  side << dump(j);
  return 0;
}

int cmd_nonsep(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  CyclePath c = shortest_nonseparating(s);
  if (cfg.debug_invariants) certify(s, c);
  emit(cfg, dump(cycle_json(s, c, "nonseparating", cfg.weights)));
  return 0;
}

int cmd_noncon(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  NonconStats st;
  CyclePath c = shortest_noncontractible(s, &st);
  if (cfg.debug_invariants) certify(s, c);
  auto j = cycle_json(s, c, "noncontractible", cfg.weights);
  ordered_json k;
  k["iterations"] = st.iterations;
  k["case_a"] = st.case_a;
  k["case_b"] = st.case_b;
  k["case_c"] = st.case_c;
  k["candidates"] = st.candidates;
  k["max_edge_copies"] = st.max_edge_copies;
  j["stats"] = k;
  emit(cfg, dump(j));
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  Surface s = load_graph(cfg);
  OracleReport rep;
  rep.instance_hash = instance_hash(s.g);
  rep.check = cfg.check;
  long checked = 0;
  if (cfg.check == "dist") checked = oracle_dist(cfg, s, rep);
  else if (cfg.check == "cycles") checked = oracle_cycles(s, rep);
  else checked = oracle_slack(cfg, s, rep);
  emit(cfg, dump(report_json(rep, checked)));
  return rep.pass ? 0 : 1;
}

int cmd_gen(const RunConfig& cfg) {
  Surface s = generate_instance(cfg.kind, cfg.n, cfg.genus, cfg.seed);
  std::ostringstream out;
  write_msgraph(out, s);
  emit(cfg, out.str());
  return 0;
}

int cmd_bench(const RunConfig& cfg) {
  return cfg.weights == WeightMode::kFloat ? run_bench<double>(cfg) : run_bench<Rational>(cfg);
}

}  // namespace mssp::cli
