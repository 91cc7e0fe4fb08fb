#include "tipsy/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "tipsy/errors.hpp"
#include "tipsy/rng.hpp"

namespace tipsy {

namespace {

// Neighbors of the cop minimizing distance to the robber, for every ordered
// (cop, robber) pair, in CSR layout.
struct StrategicTable {
  std::size_t n = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<Vertex> moves;

  std::span<const Vertex> at(Vertex cop, Vertex robber) const {
    const std::size_t k = cop * n + robber;
    return {moves.data() + offsets[k], moves.data() + offsets[k + 1]};
  }
};

StrategicTable build_strategic_table(const Graph& g) {
  const auto dist = all_pairs_distances(g);
  StrategicTable t;
  t.n = g.vertex_count();
  t.offsets.assign(t.n * t.n + 1, 0);
  for (Vertex c = 0; c < t.n; ++c) {
    for (Vertex r = 0; r < t.n; ++r) {
      std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
      for (Vertex x : g.neighbors(c)) best = std::min(best, dist(x, r));
      for (Vertex x : g.neighbors(c)) {
        if (dist(x, r) == best) t.moves.push_back(x);
      }
      t.offsets[c * t.n + r + 1] = static_cast<std::uint32_t>(t.moves.size());
    }
  }
  return t;
}

// Move on which trial ends, or 0 when it survives max_moves.
std::uint32_t run_trial(const SimConfig& cfg, const StrategicTable& strategic, std::uint64_t trial) {
  Xoshiro256 rng(stream_seed(cfg.seed, trial));
  const Graph& g = cfg.graph;
  Vertex cop = cfg.start.cop;
  Vertex robber = cfg.start.robber;
  Mover mover = cfg.first_mover;
  for (std::uint32_t m = 1; m <= cfg.max_moves; ++m) {
    if (mover == Mover::Robber) {
      auto nbrs = g.neighbors(robber);
      robber = nbrs[uniform_below(rng, nbrs.size())];
    } else {
      const bool random = uniform_unit(rng) < cfg.theta;
      auto choices = random ? g.neighbors(cop) : strategic.at(cop, robber);
      cop = choices[uniform_below(rng, choices.size())];
    }
    if (cop == robber) return m;
    mover = other(mover);
  }
  return 0;
}

void validate(const SimConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.max_moves < 1) throw std::invalid_argument("max_moves must be >= 1");
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
  const auto n = cfg.graph.vertex_count();
  if (cfg.start.cop >= n || cfg.start.robber >= n) {
    throw InvalidStartError("start state references a vertex outside the graph");
  }
  if (!cfg.start.live()) {
    throw InvalidStartError("start state is not live: cop and robber share vertex " +
                            std::to_string(cfg.start.cop));
  }
  if (cfg.start.mover != cfg.first_mover) throw InvalidStartError("start mover must equal first_mover");
}

}  // namespace

SurvivalCurve SimResult::survival_curve(Unit unit) const {
  SurvivalCurve curve{unit, {}};
  if (unit == Unit::Moves) {
    curve.values = survival;
  } else {
    for (std::size_t m = 0; m < survival.size(); m += 2) curve.values.push_back(survival[m]);
  }
  return curve;
}

SimResult simulate(const SimConfig& cfg, unsigned threads) {
  validate(cfg);
  const StrategicTable strategic = build_strategic_table(cfg.graph);
  const std::size_t bins = static_cast<std::size_t>(cfg.max_moves) + 1;

  threads = std::max(1u, threads);
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(bins, 0));
  auto work = [&](unsigned w) {
    const std::uint64_t begin = cfg.trials * w / threads;
    const std::uint64_t end = cfg.trials * (w + 1) / threads;
    auto& hist = partial[w];
    for (std::uint64_t t = begin; t < end; ++t) ++hist[run_trial(cfg, strategic, t)];
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  // Bin 0 collects survivors until merged into `censored`.
  std::vector<std::uint64_t> hist(bins, 0);
  for (const auto& p : partial) {
    for (std::size_t m = 0; m < bins; ++m) hist[m] += p[m];
  }

  SimResult out;
  out.trials = cfg.trials;
  out.max_moves = cfg.max_moves;
  out.censored = hist[0];
  hist[0] = 0;
  out.capture_histogram = std::move(hist);

  const double n = static_cast<double>(cfg.trials);
  std::uint64_t alive = cfg.trials;
  out.survival.reserve(bins);
  out.standard_error.reserve(bins);
  for (std::size_t m = 0; m < bins; ++m) {
    alive -= out.capture_histogram[m];
    const double p = static_cast<double>(alive) / n;
    out.survival.push_back(p);
    out.standard_error.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  return out;
}

ExpectedTimeEstimate estimate_expected_time(const SimResult& result, Unit unit) {
  ExpectedTimeEstimate est;
  est.time.unit = unit;
  est.censored = result.censored;
  est.censored_fraction = static_cast<double>(result.censored) / static_cast<double>(result.trials);
  if (est.censored_fraction >= kMaxCensoredFraction) {
    throw CensoringError("censored fraction " + std::to_string(est.censored_fraction) +
                             " is not below " + std::to_string(kMaxCensoredFraction) + "; raise max_moves",
                         est.censored_fraction);
  }

  auto in_unit = [unit](std::uint64_t moves) -> std::uint64_t {
    return unit == Unit::Moves ? moves : (moves + 1) / 2;
  };
  // Integer accumulation keeps the estimate independent of summation order.
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::size_t m = 1; m < result.capture_histogram.size(); ++m) {
    const std::uint64_t x = in_unit(m);
    sum += static_cast<unsigned __int128>(result.capture_histogram[m]) * x;
    sum_sq += static_cast<unsigned __int128>(result.capture_histogram[m]) * x * x;
  }
  const std::uint64_t cx = in_unit(result.max_moves);
  sum += static_cast<unsigned __int128>(result.censored) * cx;
  sum_sq += static_cast<unsigned __int128>(result.censored) * cx * cx;

  const double n = static_cast<double>(result.trials);
  const double mean = static_cast<double>(sum) / n;
  est.time.value = mean;
  if (result.trials > 1) {
    const double var = (static_cast<double>(sum_sq) - n * mean * mean) / (n - 1.0);
    est.standard_error = std::sqrt(std::max(0.0, var) / n);
  }
  return est;
}

ExpectedTimeEstimate estimate_expected_time(const SimConfig& cfg, Unit unit, unsigned threads) {
  return estimate_expected_time(simulate(cfg, threads), unit);
}

}  // namespace tipsy
