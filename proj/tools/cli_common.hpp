#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mssp/msgraph.hpp"

namespace mssp::cli {

using nlohmann::ordered_json;

// Usage problems detected after flag parsing; reported like unknown flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string graph, out, queries, face;
  uint64_t seed = 0;
  WeightMode weights = WeightMode::kRational;
  bool debug_invariants = false;
  bool paths = false;

  // gen / bench
  std::string kind = "torus-grid";
  int n = 9, genus = 1;
  int repeat = 1;

  std::string check;  // oracle
};

Surface load_graph(const RunConfig& cfg);

// "+3" / "3" is the even dart of edge 3 (1-based); "-3" its reversal.
int parse_dart(const std::string& text, const EmbeddedGraph& g);
std::string dart_text(int d);
ordered_json dart_list(const std::vector<int>& darts);

// Face named by --face, or the face on side 0 of the first dart.
int chosen_face(const RunConfig& cfg, const EmbeddedGraph& g);

// Worker count: hardware threads capped by MSSP_THREADS.
int worker_count();

// Writes text to --out if set, otherwise stdout.
void emit(const RunConfig& cfg, const std::string& text);
std::string dump(const ordered_json& j);

int cmd_validate(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_query(const RunConfig& cfg);
int cmd_cover(const RunConfig& cfg);
int cmd_nonsep(const RunConfig& cfg);
int cmd_noncon(const RunConfig& cfg);
int cmd_oracle(const RunConfig& cfg);
int cmd_gen(const RunConfig& cfg);
int cmd_bench(const RunConfig& cfg);

}  // namespace mssp::cli
