#pragma once

#include <iosfwd>
#include <string>

#include "mssp/surface.hpp"

namespace mssp {

// Syntax problems in a msgraph file; the message starts with "line N:".
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// msgraph v1 reader. Edge ids in the file are 1-based; "+id" is the dart from the edge's first
// endpoint, "-id" its reversal. A "-" in place of w_vu leaves the reversal to be synthesized.
// Optional trailing "hole <+-id>" lines mark the face on side 0 of that dart as a boundary.
Surface read_msgraph(std::istream& in, WeightMode mode = WeightMode::kRational, uint64_t seed = 0);
Surface read_msgraph_file(const std::string& path, WeightMode mode = WeightMode::kRational, uint64_t seed = 0);

void write_msgraph(std::ostream& out, const Surface& s);
void write_msgraph_file(const std::string& path, const Surface& s);

}  // namespace mssp
