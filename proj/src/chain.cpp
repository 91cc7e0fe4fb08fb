#include "tipsy/chain.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <deque>

namespace tipsy {

namespace {

constexpr double kSeriesTolerance = 1e-9;
constexpr double kRoundingSlack = 1e-12;

template <class T>
std::vector<std::size_t> reachable_from(const BasicTransitionSystem<T>& ts, std::size_t start) {
  std::vector<char> seen(ts.size(), 0);
  std::vector<std::size_t> order{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& tr : ts.successors(order[head])) {
      if (!seen[tr.target]) {
        seen[tr.target] = 1;
        order.push_back(tr.target);
      }
    }
  }
  return order;
}

// Every state in `states` must have a path to a state with positive
// absorption; otherwise part of the mass circulates forever.
template <class T>
void require_absorbing(const BasicTransitionSystem<T>& ts, const std::vector<std::size_t>& states) {
  std::vector<std::vector<std::uint32_t>> reverse(ts.size());
  for (std::size_t s : states) {
    for (const auto& tr : ts.successors(s)) reverse[tr.target].push_back(static_cast<std::uint32_t>(s));
  }
  std::vector<char> leaks(ts.size(), 0);
  std::deque<std::size_t> frontier;
  for (std::size_t s : states) {
    if (ts.absorption(s) > T(0)) {
      leaks[s] = 1;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    auto s = frontier.front();
    frontier.pop_front();
    for (auto p : reverse[s]) {
      if (!leaks[p]) {
        leaks[p] = 1;
        frontier.push_back(p);
      }
    }
  }
  for (std::size_t s : states) {
    if (!leaks[s]) {
      const auto& st = ts.state(s);
      throw DivergenceError("chain is not absorbing: capture is unreachable from state (cop=" +
                            std::to_string(st.cop) + ", robber=" + std::to_string(st.robber) + ")");
    }
  }
}

std::vector<double> apply_transient(const TransitionSystem& ts, const std::vector<double>& h) {
  std::vector<double> out(ts.size(), 0.0);
  for (std::size_t s = 0; s < ts.size(); ++s) {
    double acc = 0.0;
    for (const auto& tr : ts.successors(s)) acc += tr.probability * h[tr.target];
    out[s] = acc;
  }
  return out;
}

}  // namespace

ExpectedCapture expected_capture(const TransitionSystem& ts, const GameState& start, Unit unit) {
  const std::size_t idx = detail::require_start(ts, start);
  const auto reachable = reachable_from(ts, idx);
  require_absorbing(ts, reachable);

  ExpectedCapture out;
  out.time.unit = unit;

  // Contraction: smallest L with max_s P(survive L moves | s) <= 1/2.
  const std::size_t max_block = std::max<std::size_t>(20000, 50 * ts.size());
  std::vector<double> h(ts.size(), 1.0);
  double q = 1.0;
  std::size_t block = 0;
  while (q > 0.5) {
    if (block >= max_block) {
      throw DivergenceError("transient block does not contract within " + std::to_string(max_block) +
                            " moves");
    }
    h = apply_transient(ts, h);
    ++block;
    q = 0.0;
    for (std::size_t s : reachable) q = std::max(q, h[s]);
  }
  out.contraction = q;
  out.block_moves = block;

  // Linear solve.
  const auto n = static_cast<Eigen::Index>(ts.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(ts.transition_count() + ts.size());
  Eigen::VectorXd rhs(n);
  for (std::size_t s = 0; s < ts.size(); ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    triplets.emplace_back(row, row, 1.0);
    for (const auto& tr : ts.successors(s)) {
      triplets.emplace_back(row, static_cast<Eigen::Index>(tr.target), -tr.probability);
    }
    rhs(row) = (unit == Unit::Moves || ts.state(s).mover == ts.first_mover()) ? 1.0 : 0.0;
  }
  // States that cannot reach absorption would make I - Q singular; they are
  // unreachable from start here, so pin them to zero.
  std::vector<char> in_reach(ts.size(), 0);
  for (std::size_t s : reachable) in_reach[s] = 1;
  Eigen::SparseMatrix<double> a(n, n);
  std::erase_if(triplets, [&](const Eigen::Triplet<double>& t) {
    return !in_reach[static_cast<std::size_t>(t.row())] && t.row() != t.col();
  });
  for (std::size_t s = 0; s < ts.size(); ++s) {
    if (!in_reach[s]) rhs(static_cast<Eigen::Index>(s)) = 0.0;
  }
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw DivergenceError("I - Q is singular");
  Eigen::VectorXd t = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw DivergenceError("linear solve failed");
  out.time.value = t(static_cast<Eigen::Index>(idx));

  // Telescoping series with a geometric tail bound. In the chosen unit,
  // P_{j+B} <= q P_j where B is the block length in that unit, so the tail
  // after index N is at most B * P_{N+1} / (1 - q).
  const std::size_t unit_block = unit == Unit::Moves ? block : (block + 1) / 2;
  const std::size_t max_horizon =
      unit_block * static_cast<std::size_t>(std::ceil(std::log(kSeriesTolerance * (1 - q) / unit_block) /
                                                      std::log(q)) +
                                            2);
  std::vector<double> mass(ts.size(), 0.0);
  mass[idx] = 1.0;
  double series = 1.0;
  std::size_t horizon = 0;
  for (;;) {
    mass = step_mass(ts, mass);
    if (unit == Unit::Rounds) mass = step_mass(ts, mass);
    const double next = total_mass(mass);
    const double bound = static_cast<double>(unit_block) * next / (1.0 - q);
    if (bound <= kSeriesTolerance) {
      out.tail_bound = bound;
      break;
    }
    if (horizon > max_horizon) {
      throw DivergenceError("residual survival " + std::to_string(next) + " after " +
                            std::to_string(horizon) + " " + std::string(to_string(unit)) +
                            " exceeds the contraction-derived horizon");
    }
    series += next;
    ++horizon;
  }
  out.series = series;
  out.horizon = horizon;

  const double slack = kRoundingSlack * std::max(1.0, out.time.value);
  if (out.series > out.time.value + slack || out.time.value - out.series > out.tail_bound + slack) {
    throw DivergenceError("linear solve " + std::to_string(out.time.value) +
                          " disagrees with the telescoping series " + std::to_string(out.series));
  }
  return out;
}

Rational expected_capture_exact(const ExactTransitionSystem& ts, const GameState& start, Unit unit) {
  const std::size_t idx = detail::require_start(ts, start);
  const auto reachable = reachable_from(ts, idx);
  require_absorbing(ts, reachable);
  const std::size_t n = reachable.size();
  if (n > kExactSolveLimit) {
    throw std::invalid_argument("exact expected-time solve limited to " + std::to_string(kExactSolveLimit) +
                                " reachable states, got " + std::to_string(n));
  }

  std::vector<std::size_t> local(ts.size(), n);
  for (std::size_t i = 0; i < n; ++i) local[reachable[i]] = i;

  // Augmented system [I - Q | r].
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = reachable[i];
    a[i][i] = 1;
    for (const auto& tr : ts.successors(s)) a[i][local[tr.target]] -= tr.probability;
    a[i][n] = (unit == Unit::Moves || ts.state(s).mover == ts.first_mover()) ? 1 : 0;
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DivergenceError("I - Q is singular");
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j <= n; ++j) a[col][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = col; j <= n; ++j) {
        if (a[col][j] != 0) a[i][j] -= f * a[col][j];
      }
    }
  }
  return a[0][n];
}

}  // namespace tipsy
