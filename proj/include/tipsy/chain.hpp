#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tipsy/errors.hpp"
#include "tipsy/exact.hpp"
#include "tipsy/graph.hpp"
#include "tipsy/types.hpp"

namespace tipsy {

template <class T>
struct Transition {
  std::uint32_t target;
  T probability;
};

// Absorbing Markov chain of the game over all live (cop, robber, mover)
// states. Each state carries its sparse successor list and the probability of
// capture on the next move; the two always sum to one.
template <class T>
class BasicTransitionSystem {
 public:
  std::size_t size() const { return states_.size(); }
  std::size_t vertex_count() const { return n_; }
  Mover first_mover() const { return first_mover_; }
  const T& theta() const { return theta_; }

  const GameState& state(std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> index_of(const GameState& s) const {
    if (s.cop >= n_ || s.robber >= n_ || !s.live()) return std::nullopt;
    return index_unchecked(s);
  }

  std::span<const Transition<T>> successors(std::size_t i) const {
    return {transitions_.data() + offsets_[i], transitions_.data() + offsets_[i + 1]};
  }

  const T& absorption(std::size_t i) const { return absorption_[i]; }

  std::size_t transition_count() const { return transitions_.size(); }

 private:
  template <class U>
  friend BasicTransitionSystem<U> build_chain(const Graph& g, const U& theta, Mover first_mover);

  std::size_t index_unchecked(const GameState& s) const {
    std::size_t pair = s.cop * (n_ - 1) + (s.robber < s.cop ? s.robber : s.robber - 1);
    return 2 * pair + (s.mover == Mover::Robber ? 0 : 1);
  }

  std::size_t n_ = 0;
  Mover first_mover_ = Mover::Robber;
  T theta_{};
  std::vector<GameState> states_;
  std::vector<std::size_t> offsets_;
  std::vector<Transition<T>> transitions_;
  std::vector<T> absorption_;
};

using TransitionSystem = BasicTransitionSystem<double>;
using ExactTransitionSystem = BasicTransitionSystem<Rational>;

// Robber: uniform over the neighbors of his vertex; stepping onto the cop is
// capture. Cop: with probability theta uniform over her neighbors, otherwise
// uniform over the neighbors minimizing hop distance to the robber; landing
// on the robber is capture. Nobody stays put and the mover alternates.
template <class T>
BasicTransitionSystem<T> build_chain(const Graph& g, const T& theta_in, Mover first_mover) {
  const T theta = canonical(theta_in);
  if (theta < T(0) || theta > T(1)) throw std::invalid_argument("theta must lie in [0, 1]");
  const std::size_t n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("game needs at least two vertices");
  const DistanceTable dist = all_pairs_distances(g);

  BasicTransitionSystem<T> ts;
  ts.n_ = n;
  ts.first_mover_ = first_mover;
  ts.theta_ = theta;
  const std::size_t count = 2 * n * (n - 1);
  ts.states_.resize(count);
  ts.absorption_.assign(count, T(0));
  ts.offsets_.assign(count + 1, 0);

  std::vector<std::vector<Transition<T>>> rows(count);
  for (Vertex c = 0; c < n; ++c) {
    for (Vertex r = 0; r < n; ++r) {
      if (c == r) continue;
      for (Mover mover : {Mover::Robber, Mover::Cop}) {
        const GameState s{c, r, mover};
        const std::size_t i = ts.index_unchecked(s);
        ts.states_[i] = s;
        auto& row = rows[i];
        T& absorb = ts.absorption_[i];

        if (mover == Mover::Robber) {
          const T p = T(1) / T(g.degree(r));
          for (Vertex y : g.neighbors(r)) {
            if (y == c) {
              absorb += p;
            } else {
              row.push_back({static_cast<std::uint32_t>(ts.index_unchecked({c, y, Mover::Cop})), p});
            }
          }
          continue;
        }

        std::uint32_t closest = dist(g.neighbors(c).front(), r);
        for (Vertex x : g.neighbors(c)) closest = std::min(closest, dist(x, r));
        const auto strategic = static_cast<std::size_t>(std::count_if(
            g.neighbors(c).begin(), g.neighbors(c).end(), [&](Vertex x) { return dist(x, r) == closest; }));
        const T random_p = theta / T(g.degree(c));
        const T strategic_p = (T(1) - theta) / T(strategic);
        for (Vertex x : g.neighbors(c)) {
          T p = random_p;
          if (dist(x, r) == closest) p += strategic_p;
          if (p == T(0)) continue;
          if (x == r) {
            absorb += p;
          } else {
            row.push_back({static_cast<std::uint32_t>(ts.index_unchecked({x, r, Mover::Robber})), p});
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i < count; ++i) ts.offsets_[i + 1] = ts.offsets_[i] + rows[i].size();
  ts.transitions_.reserve(ts.offsets_.back());
  for (auto& row : rows) {
    for (auto& t : row) ts.transitions_.push_back(std::move(t));
  }
  return ts;
}

namespace detail {

template <class T>
std::size_t require_start(const BasicTransitionSystem<T>& ts, const GameState& start) {
  if (!start.live()) {
    throw InvalidStartError("start state is not live: cop and robber share vertex " +
                            std::to_string(start.cop));
  }
  auto idx = ts.index_of(start);
  if (!idx) throw InvalidStartError("start state references a vertex outside the graph");
  if (start.mover != ts.first_mover()) {
    throw InvalidStartError("start mover must equal the chain's first mover (" +
                            std::string(to_string(ts.first_mover())) + ")");
  }
  return *idx;
}

}  // namespace detail

// One move of the chain applied to an unnormalized mass vector; absorbed mass
// disappears.
template <class T>
std::vector<T> step_mass(const BasicTransitionSystem<T>& ts, const std::vector<T>& mass) {
  std::vector<T> next(ts.size(), T(0));
  for (std::size_t s = 0; s < ts.size(); ++s) {
    if (mass[s] == T(0)) continue;
    for (const auto& tr : ts.successors(s)) next[tr.target] += mass[s] * tr.probability;
  }
  return next;
}

template <class T>
T total_mass(const std::vector<T>& mass) {
  T sum(0);
  for (const auto& m : mass) sum += m;
  return sum;
}

template <class T>
BasicSurvivalCurve<T> survival_curve(const BasicTransitionSystem<T>& ts, const GameState& start,
                                     std::size_t horizon, Unit unit) {
  const std::size_t idx = detail::require_start(ts, start);
  const std::size_t moves = unit == Unit::Moves ? horizon : 2 * horizon;

  BasicSurvivalCurve<T> curve;
  curve.unit = unit;
  curve.values.reserve(horizon + 1);
  curve.values.push_back(T(1));

  std::vector<T> mass(ts.size(), T(0));
  mass[idx] = T(1);
  for (std::size_t m = 1; m <= moves; ++m) {
    mass = step_mass(ts, mass);
    if (unit == Unit::Moves || m % 2 == 0) curve.values.push_back(total_mass(mass));
  }
  return curve;
}

// Unabsorbed mass per position class over time. mass[c][m] belongs to
// classes[c]; total[m] is the survival mass summed over states directly.
template <class T>
struct BasicClassCurveSet {
  std::vector<int> classes;
  std::vector<std::vector<T>> mass;
  std::vector<T> total;

  const std::vector<T>& of(int cls) const {
    auto it = std::find(classes.begin(), classes.end(), cls);
    if (it == classes.end()) throw std::out_of_range("unknown class " + std::to_string(cls));
    return mass[static_cast<std::size_t>(it - classes.begin())];
  }
};

using ClassCurveSet = BasicClassCurveSet<double>;
using StateClassifier = std::function<std::optional<int>(const GameState&)>;

template <class T>
BasicClassCurveSet<T> class_mass_curve(const BasicTransitionSystem<T>& ts,
                                       const std::vector<std::pair<GameState, T>>& start_distribution,
                                       const StateClassifier& classifier, std::size_t horizon) {
  std::vector<int> state_class(ts.size());
  std::map<int, std::size_t> slot;
  for (std::size_t s = 0; s < ts.size(); ++s) {
    auto cls = classifier(ts.state(s));
    if (!cls) {
      const auto& st = ts.state(s);
      throw ClassificationError("classifier has no class for state (cop=" + std::to_string(st.cop) +
                                ", robber=" + std::to_string(st.robber) + ", mover=" +
                                std::string(to_string(st.mover)) + ")");
    }
    state_class[s] = *cls;
    slot.emplace(*cls, 0);
  }

  BasicClassCurveSet<T> out;
  for (auto& [cls, pos] : slot) {
    pos = out.classes.size();
    out.classes.push_back(cls);
  }
  out.mass.assign(out.classes.size(), std::vector<T>(horizon + 1, T(0)));
  out.total.assign(horizon + 1, T(0));

  std::vector<T> mass(ts.size(), T(0));
  T sum(0);
  for (const auto& [state, p_in] : start_distribution) {
    const T p = canonical(p_in);
    auto idx = ts.index_of(state);
    if (!idx) throw InvalidStartError("start distribution contains a non-live state");
    if (p < T(0)) throw InvalidStartError("start distribution has a negative entry");
    mass[*idx] += p;
    sum += p;
  }
  const T err = sum > T(1) ? T(sum - T(1)) : T(T(1) - sum);
  if (!(err <= T(1e-12))) throw InvalidStartError("start distribution does not sum to 1");

  for (std::size_t m = 0; m <= horizon; ++m) {
    if (m > 0) mass = step_mass(ts, mass);
    for (std::size_t s = 0; s < ts.size(); ++s) {
      if (mass[s] == T(0)) continue;
      out.mass[slot[state_class[s]]][m] += mass[s];
    }
    out.total[m] = total_mass(mass);
  }
  return out;
}

struct ExpectedCapture {
  ExpectedTime time;
  // Truncated telescoping sum of the survival curve in the same unit, and a
  // bound on the omitted tail; |time.value - series| <= tail_bound.
  double series = 0.0;
  double tail_bound = 0.0;
  std::size_t horizon = 0;
  // max over states of L-move survival, L = block_moves; bounds the
  // spectral radius of the transient block by contraction^(1/L).
  double contraction = 0.0;
  std::size_t block_moves = 0;
};

// Solves (I - Q) t = r by sparse LU, where r is all ones for moves and the
// indicator of first-mover states for rounds. Throws DivergenceError when
// some reachable state can never be absorbed.
ExpectedCapture expected_capture(const TransitionSystem& ts, const GameState& start, Unit unit);

// Exact counterpart by dense rational elimination over the states reachable
// from start. Intended for small chains (see kExactSolveLimit).
inline constexpr std::size_t kExactSolveLimit = 800;
Rational expected_capture_exact(const ExactTransitionSystem& ts, const GameState& start, Unit unit);

}  // namespace tipsy
