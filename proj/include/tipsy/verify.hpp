#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tipsy/output.hpp"

namespace tipsy {

enum class Suite { Complete, Bipartite, Cycle, C5, Friendship, All };

// Throws std::invalid_argument for unknown names.
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite s);

// One comparison of two computations over a grid point. Gating cells compare
// exact methods and decide the exit status; the rest are informational
// (alternate forms, friendship consistency diagnostics).
struct VerifyCell {
  std::string suite;
  std::string graph;
  double theta = 0.0;
  std::string start;
  std::string check;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool gating = true;
};

struct VerifyReport {
  std::vector<VerifyCell> cells;

  bool passed() const;
  std::size_t gating_failures() const;
};

inline const std::vector<double> kThetaGrid{0.0, 0.25, 0.5, 0.75, 1.0};

VerifyReport run_suite(Suite suite);

Table report_table(const VerifyReport& report, Suite suite);

}  // namespace tipsy
