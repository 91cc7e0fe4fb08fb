#pragma once

#include <cstdint>
#include <vector>

#include "tipsy/graph.hpp"
#include "tipsy/types.hpp"

namespace tipsy {

struct SimConfig {
  Graph graph;
  double theta = 0.0;
  GameState start{};
  Mover first_mover = Mover::Robber;
  std::uint64_t trials = 1;
  std::uint32_t max_moves = 1;
  std::uint64_t seed = 0;
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint32_t max_moves = 0;
  // capture_histogram[m] counts trials captured on move m; index 0 is always 0.
  std::vector<std::uint64_t> capture_histogram;
  std::uint64_t censored = 0;
  // Estimated P_m, m = 0..max_moves, with binomial standard errors.
  std::vector<double> survival;
  std::vector<double> standard_error;

  // Moves, or rounds n = 0..max_moves/2 read off at move 2n.
  SurvivalCurve survival_curve(Unit unit) const;
  bool operator==(const SimResult&) const = default;
};

// Trials run independently on substreams derived from (seed, trial index);
// the result does not depend on `threads`.
SimResult simulate(const SimConfig& cfg, unsigned threads = 1);

struct ExpectedTimeEstimate {
  ExpectedTime time;
  double standard_error = 0.0;
  std::uint64_t censored = 0;
  double censored_fraction = 0.0;
};

// Censored trials enter the mean at max_moves (or its round count); throws
// CensoringError when they make up 1e-3 of the trials or more.
ExpectedTimeEstimate estimate_expected_time(const SimResult& result, Unit unit);
ExpectedTimeEstimate estimate_expected_time(const SimConfig& cfg, Unit unit, unsigned threads = 1);

inline constexpr double kMaxCensoredFraction = 1e-3;

}  // namespace tipsy
