#include "tipsy/closed_forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tipsy/errors.hpp"

namespace tipsy {

namespace {

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
}

double ipow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

void require_cycle_distance(int v, int i) {
  if (i < 1 || i > v / 2) {
    throw InvalidPositionError("cycle distance " + std::to_string(i) + " outside 1.." + std::to_string(v / 2));
  }
}

enum class RoundVariant { Derived, Alternate };

SurvivalCurve cycle_rounds(int v, double theta, int start, int rounds, RoundVariant variant) {
  require_theta(theta);
  if (v < 10) {
    throw OutOfRegimeError("round recursion needs v >= 10 (got " + std::to_string(v) +
                           "); use cycle_turn_recursion for smaller cycles");
  }
  require_cycle_distance(v, start);
  if (rounds < 0) throw std::invalid_argument("negative horizon");

  const int h = v / 2;
  const double psi = 0.5 - theta / 4.0;
  const double q = theta / 4.0;
  const bool even = v % 2 == 0;

  std::vector<double> prev(static_cast<std::size_t>(h + 1), 1.0);
  std::vector<double> next(prev.size());
  SurvivalCurve curve{Unit::Rounds, {1.0}};
  auto P = [&](int i) { return prev[static_cast<std::size_t>(i)]; };

  for (int n = 1; n <= rounds; ++n) {
    for (int i = 1; i <= h; ++i) {
      double value = 0.0;
      if (i == 1) {
        value = psi * P(1) + q * P(3);
      } else if (i == 2) {
        value = 0.5 * P(2) + q * P(4);
      } else if (i == h) {
        value = even ? 2.0 * psi * P(h - 2) + 0.5 * theta * P(h)
                     : psi * P(h - 2) + psi * P(h - 1) + 0.5 * theta * P(h);
      } else if (i == h - 1) {
        if (!even) {
          value = psi * P(h - 3) + 0.5 * P(h - 1) + q * P(h);
        } else if (variant == RoundVariant::Derived) {
          // From distance h-1 the distance after a round is h-3 or h-1 only.
          value = psi * P(h - 3) + (0.5 + q) * P(h - 1);
        } else {
          value = psi * P(h - 2) + 0.5 * P(h - 1) + q * P(h);
        }
      } else {
        value = psi * P(i - 2) + 0.5 * P(i) + q * P(i + 2);
      }
      next[static_cast<std::size_t>(i)] = value;
    }
    std::swap(prev, next);
    curve.values.push_back(P(start));
  }
  return curve;
}

}  // namespace

double p_complete(int v, double theta, int m) {
  if (v < 2) throw InvalidFamilyError("complete graph needs v >= 2");
  require_theta(theta);
  if (m < 0) throw std::invalid_argument("negative move index");
  const double miss = static_cast<double>(v - 2) / static_cast<double>(v - 1);
  return ipow(theta, m / 2) * ipow(miss, m);
}

ExpectedTime e_complete(int v, double theta, Unit unit) {
  if (v < 2) throw InvalidFamilyError("complete graph needs v >= 2");
  require_theta(theta);
  const double a = static_cast<double>(v - 1);
  const double b = static_cast<double>(v - 2);
  const double denom = a * a - theta * b * b;
  if (unit == Unit::Moves) return {(2.0 * v - 3.0) * a / denom, Unit::Moves};
  return {a * a / denom, Unit::Rounds};
}

BipartitePosition bipartite_position(int v, int w, int index) {
  if (v < 1 || w < 1) throw InvalidFamilyError("complete bipartite graph needs v >= 1 and w >= 1");
  if (index < 1 || index > 4) {
    throw InvalidPositionError("bipartite position must be 1..4, got " + std::to_string(index));
  }
  if (index == 2 && v < 2) throw InvalidPositionError("position 2 needs two vertices in V (v >= 2)");
  if (index == 4 && w < 2) throw InvalidPositionError("position 4 needs two vertices in W (w >= 2)");
  return static_cast<BipartitePosition>(index);
}

double p_bipartite(int v, int w, double theta, BipartitePosition pos, int m) {
  bipartite_position(v, w, static_cast<int>(pos));
  require_theta(theta);
  if (m < 0) throw std::invalid_argument("negative move index");
  const double x = static_cast<double>(v - 1) / v;
  const double y = static_cast<double>(w - 1) / w;
  switch (pos) {
    case BipartitePosition::CopVRobberW:
      return ipow(x, (m + 3) / 4) * ipow(y, (m + 1) / 4);
    case BipartitePosition::BothInV:
      return ipow(theta, m / 2) * ipow(x, m / 4) * ipow(y, (m + 2) / 4);
    case BipartitePosition::CopWRobberV:
      return ipow(x, (m + 1) / 4) * ipow(y, (m + 3) / 4);
    case BipartitePosition::BothInW:
      return ipow(theta, m / 2) * ipow(x, (m + 2) / 4) * ipow(y, m / 4);
  }
  throw InvalidPositionError("unknown bipartite position");
}

ExpectedTime e_bipartite(int v, int w, double theta, BipartitePosition pos) {
  bipartite_position(v, w, static_cast<int>(pos));
  require_theta(theta);
  const double dv = v;
  const double dw = w;
  const double same_part_denom = dv * dw - theta * theta * (dv - 1) * (dw - 1);
  double value = 0.0;
  switch (pos) {
    case BipartitePosition::CopVRobberW:
      value = (4 * dv * dw - 3 * dw - dv + 1) / (dv + dw - 1);
      break;
    case BipartitePosition::BothInV:
      value = 2 * (dv * dw + theta * dv * (dw - 1)) / same_part_denom;
      break;
    case BipartitePosition::CopWRobberV:
      value = (4 * dv * dw - 3 * dv - dw + 1) / (dv + dw - 1);
      break;
    case BipartitePosition::BothInW:
      value = 2 * (dv * dw + theta * dw * (dv - 1)) / same_part_denom;
      break;
  }
  return {value, Unit::Moves};
}

double e_bipartite_alternate_sign(int v, int w, double theta, BipartitePosition pos) {
  bipartite_position(v, w, static_cast<int>(pos));
  require_theta(theta);
  const double dv = v;
  const double dw = w;
  const double same_part_denom = dv * dw - theta * theta * (dv - 1) * (dw - 1);
  switch (pos) {
    case BipartitePosition::BothInV:
      return 2 * (dv * dw - theta * dv * (dw - 1)) / same_part_denom;
    case BipartitePosition::BothInW:
      return 2 * (dv * dw - theta * dw * (dv - 1)) / same_part_denom;
    default:
      return e_bipartite(v, w, theta, pos).value;
  }
}

TurnProbabilityTable cycle_turn_recursion(int v, double theta, int horizon) {
  if (v < 3) throw InvalidFamilyError("cycle graph needs v >= 3");
  require_theta(theta);
  if (horizon < 0) throw std::invalid_argument("negative horizon");

  const int h = v / 2;
  const bool even = v % 2 == 0;
  const auto rows = static_cast<std::size_t>(h + 1);
  const auto cols = static_cast<std::size_t>(horizon + 1);

  TurnProbabilityTable table;
  table.v = v;
  // Row 0 is the captured state and stays 0.
  table.robber_first.assign(rows, std::vector<double>(cols, 0.0));
  table.cop_first.assign(rows, std::vector<double>(cols, 0.0));
  for (std::size_t i = 1; i < rows; ++i) table.robber_first[i][0] = table.cop_first[i][0] = 1.0;

  auto& R = table.robber_first;
  auto& C = table.cop_first;
  const double away = theta / 2.0;
  const double closer = 1.0 - theta / 2.0;

  for (std::size_t m = 1; m < cols; ++m) {
    for (int i = 1; i <= h; ++i) {
      const auto at = static_cast<std::size_t>(i);
      const std::size_t below = at - 1;
      double r = 0.0;
      double c = 0.0;
      // The far-side cases come first: on C3 the distance-1 state is also
      // the far side, and its "further" neighbour wraps back to distance 1.
      if (i == h && even) {
        r = C[below][m - 1];
        c = R[below][m - 1];
      } else if (i == h) {
        r = 0.5 * C[below][m - 1] + 0.5 * C[at][m - 1];
        c = closer * R[below][m - 1] + away * R[at][m - 1];
      } else if (i == 1) {
        r = 0.5 * C[2][m - 1];
        c = away * R[2][m - 1];
      } else {
        r = 0.5 * C[below][m - 1] + 0.5 * C[at + 1][m - 1];
        c = closer * R[below][m - 1] + away * R[at + 1][m - 1];
      }
      R[at][m] = r;
      C[at][m] = c;
    }
  }
  return table;
}

SurvivalCurve cycle_round_recursion(int v, double theta, int i, int rounds) {
  return cycle_rounds(v, theta, i, rounds, RoundVariant::Derived);
}

SurvivalCurve cycle_round_recursion_alternate(int v, double theta, int i, int rounds) {
  return cycle_rounds(v, theta, i, rounds, RoundVariant::Alternate);
}

SurvivalCurve c5_rounds(double theta, int i, int rounds) {
  require_theta(theta);
  if (i != 1 && i != 2) throw InvalidPositionError("C5 start distance must be 1 or 2");
  if (rounds < 0) throw std::invalid_argument("negative horizon");
  const double psi = 0.5 - theta / 4.0;
  double p1 = 1.0;
  double p2 = 1.0;
  SurvivalCurve curve{Unit::Rounds, {1.0}};
  for (int n = 1; n <= rounds; ++n) {
    const double n1 = psi * p1 + theta / 4.0 * p2;
    const double n2 = psi * p1 + theta / 2.0 * p2;
    p1 = n1;
    p2 = n2;
    curve.values.push_back(i == 1 ? p1 : p2);
  }
  return curve;
}

double c5_generating_function(double theta, int i, double t) {
  require_theta(theta);
  if (i != 1 && i != 2) throw InvalidPositionError("C5 start distance must be 1 or 2");
  const double psi = 0.5 - theta / 4.0;
  const double a = 1.0 - theta * t / 4.0;
  const double denom = a * (2.0 - psi * t) - 1.0;
  return (i == 1 ? a : 1.0) / denom;
}

ExpectedTime c5_expected(double theta, int i) { return {c5_generating_function(theta, i, 1.0), Unit::Rounds}; }

}  // namespace tipsy
