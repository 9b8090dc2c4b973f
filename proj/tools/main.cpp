#include <CLI11.hpp>

#include <iostream>

#include "cli_common.hpp"
#include "mssp/cycles.hpp"

using namespace mssp;
using namespace mssp::cli;

namespace {

// Exit codes: 0 ok, 1 the input or a check failed validation, 2 a contract or usage violation.
int report(const std::string& kind, const std::string& message, int code) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
  return code;
}

void add_graph(CLI::App* sub, RunConfig& cfg, bool required = true) {
  auto* opt = sub->add_option("--graph", cfg.graph, "msgraph input file");
  if (required) opt->required();
  sub->add_option_function<std::string>(
         "--weights", [&cfg](const std::string& m) { cfg.weights = m == "float" ? WeightMode::kFloat : WeightMode::kRational; },
         "number type for weights and distances: rational (default) or float")
      ->check(CLI::IsMember({"rational", "float"}));
  sub->add_option("--seed", cfg.seed, "seed for perturbation keys and generators");
  sub->add_option("--out", cfg.out, "write the result here instead of stdout");
  sub->add_flag("--debug-invariants", cfg.debug_invariants, "check structural invariants while running");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-source shortest paths on embedded graphs", "mssp"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* validate = app.add_subcommand("validate", "parse a graph and print its census");
  add_graph(validate, cfg);

  auto* sweep = app.add_subcommand("sweep", "sweep one face and print the run summary");
  add_graph(sweep, cfg);
  sweep->add_option("--face", cfg.face, "dart id on the face (+id or -id)");

  auto* query = app.add_subcommand("query", "distances from vertices of the swept face, as JSON Lines");
  add_graph(query, cfg);
  query->add_option("--face", cfg.face, "dart id on the face (+id or -id)");
  query->add_option("--queries", cfg.queries, "file of 'u v' lines; default all face vertices to all vertices");
  query->add_flag("--paths", cfg.paths, "include the shortest path darts");

  auto* cover = app.add_subcommand("cover", "write the orientable double cover and a mapping sidecar");
  add_graph(cover, cfg);
  cover->get_option("--out")->required();

  auto* nonsep = app.add_subcommand("nonsep", "shortest non-separating cycle");
  add_graph(nonsep, cfg);
  auto* noncon = app.add_subcommand("noncon", "shortest non-contractible cycle");
  add_graph(noncon, cfg);

  auto* oracle = app.add_subcommand("oracle", "compare fast results against brute force");
  add_graph(oracle, cfg);
  oracle->add_option("--check", cfg.check, "which comparison")->required()->check(CLI::IsMember({"dist", "cycles", "slack"}));
  oracle->add_option("--face", cfg.face, "dart id on the face for dist and slack");

  auto* gen = app.add_subcommand("gen", "write a random instance");
  gen->add_option("--seed", cfg.seed, "generator seed");
  gen->add_option("--out", cfg.out, "write the instance here instead of stdout");
  gen->add_option("--kind", cfg.kind, "instance family")
      ->check(CLI::IsMember({"planar-delaunay-like", "torus-grid", "genus-g-glued", "klein-grid", "annulus"}));
  gen->add_option("--n", cfg.n, "approximate vertex count")->check(CLI::PositiveNumber);
  gen->add_option("--genus", cfg.genus, "genus for genus-g-glued")->check(CLI::NonNegativeNumber);

  auto* bench = app.add_subcommand("bench", "time sweeps on a file or a generated instance");
  add_graph(bench, cfg, false);
  bench->add_option("--face", cfg.face, "dart id on the face (+id or -id)");
  bench->add_option("--kind", cfg.kind, "instance family when --graph is absent")
      ->check(CLI::IsMember({"planar-delaunay-like", "torus-grid", "genus-g-glued", "klein-grid", "annulus"}));
  bench->add_option("--n", cfg.n, "approximate vertex count")->check(CLI::PositiveNumber);
  bench->add_option("--genus", cfg.genus, "genus for genus-g-glued")->check(CLI::NonNegativeNumber);
  bench->add_option("--repeat", cfg.repeat, "runs to time")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*query) return cmd_query(cfg);
    if (*cover) return cmd_cover(cfg);
    if (*nonsep) return cmd_nonsep(cfg);
    if (*noncon) return cmd_noncon(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*bench) return cmd_bench(cfg);
  } catch (const FormatError& e) {
    return report("format", e.what(), 1);
  } catch (const EmbeddingError& e) {
    return report("embedding", e.what(), 1);
  } catch (const UsageError& e) {
    return report("usage", e.what(), 2);
  } catch (const NoCycleError& e) {
    return report("no-cycle", e.what(), 2);
  } catch (const ContractError& e) {
    return report("contract", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return report("contract", e.what(), 2);
  } catch (const std::exception& e) {
    return report("internal", e.what(), 2);
  }
  return 2;
}
