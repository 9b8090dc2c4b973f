#pragma once

#include <string>

#include "mssp/embedded_graph.hpp"

namespace mssp {

enum class ForestErrc { kSameTree, kAbsentEdge, kDifferentTrees, kStaleNode, kBadNode };

inline const char* forest_errc_name(ForestErrc c) {
  switch (c) {
    case ForestErrc::kSameTree: return "same-tree link";
    case ForestErrc::kAbsentEdge: return "absent edge";
    case ForestErrc::kDifferentTrees: return "nodes in different trees";
    case ForestErrc::kStaleNode: return "node newer than version";
    case ForestErrc::kBadNode: return "node out of range";
  }
  return "?";
}

class ForestError : public ContractError {
 public:
  ForestError(ForestErrc c, const std::string& what)
      : ContractError(std::string(forest_errc_name(c)) + ": " + what), code_(c) {}
  ForestErrc code() const { return code_; }

 private:
  ForestErrc code_;
};

}  // namespace mssp
