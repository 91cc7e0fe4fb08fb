#include "tipsy/friendship.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tipsy/errors.hpp"

namespace tipsy {

namespace {

constexpr double kRecurrenceTolerance = 1e-12;

void require_params(int k, double theta) {
  if (k < 1) throw InvalidFamilyError("friendship graph needs k >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
}

FriendshipCurves evolve(const Eigen::Matrix4d& odd, const Eigen::Matrix4d& even, int horizon) {
  FriendshipCurves out;
  Eigen::Vector4d p = Eigen::Vector4d::Ones();
  for (int m = 0; m <= horizon; ++m) {
    if (m > 0) p = (m % 2 == 1 ? odd : even) * p;
    for (std::size_t i = 0; i < 4; ++i) out.values[i].push_back(p(static_cast<Eigen::Index>(i)));
  }
  return out;
}

FriendshipCurves single_powers(const Eigen::Matrix4d& odd, const Eigen::Matrix4d& even, int horizon) {
  FriendshipCurves out;
  Eigen::Vector4d by_odd = Eigen::Vector4d::Ones();
  Eigen::Vector4d by_even = Eigen::Vector4d::Ones();
  for (int m = 0; m <= horizon; ++m) {
    if (m > 0) {
      by_odd = odd * by_odd;
      by_even = even * by_even;
    }
    const Eigen::Vector4d& p = m % 2 == 1 ? by_odd : by_even;
    for (std::size_t i = 0; i < 4; ++i) out.values[i].push_back(p(static_cast<Eigen::Index>(i)));
  }
  return out;
}

std::vector<double> pairwise_deviation(const FriendshipCurves& a, const FriendshipCurves& b) {
  std::vector<double> out(a.values[0].size(), 0.0);
  for (std::size_t m = 0; m < out.size(); ++m) {
    for (std::size_t i = 0; i < 4; ++i) out[m] = std::max(out[m], std::abs(a.values[i][m] - b.values[i][m]));
  }
  return out;
}

RecurrenceCheck check(const std::string& sequence, const std::string& polynomial, const FriendshipCurves& curves,
                      const Quartic& coeff, std::size_t offset, std::size_t stride) {
  RecurrenceCheck rc{sequence, polynomial, offset, stride, 0.0, false};
  for (const auto& seq : curves.values) {
    rc.max_residual = std::max(rc.max_residual, recurrence_residual(seq, coeff, offset, stride));
  }
  rc.satisfied = rc.max_residual <= kRecurrenceTolerance;
  return rc;
}

}  // namespace

FriendshipPosition friendship_position(int k, int index) {
  if (k < 1) throw InvalidFamilyError("friendship graph needs k >= 1");
  if (index < 1 || index > 4) {
    throw InvalidPositionError("friendship position must be 1..4, got " + std::to_string(index));
  }
  if (index == 2 && k < 2) throw InvalidPositionError("position 2 needs two triangles (k >= 2)");
  return static_cast<FriendshipPosition>(index);
}

FriendshipCurves friendship_recursion(int k, double theta, int horizon, Class3EvenCoefficient coefficient) {
  require_params(k, theta);
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  const double kk = k;
  const double c3 = coefficient == Class3EvenCoefficient::Matrix ? 0.25 : 0.5;

  FriendshipCurves out;
  double p1 = 1.0, p2 = 1.0, p3 = 1.0, p4 = 1.0;
  auto record = [&] {
    out.values[0].push_back(p1);
    out.values[1].push_back(p2);
    out.values[2].push_back(p3);
    out.values[3].push_back(p4);
  };
  record();
  for (int m = 1; m <= horizon; ++m) {
    double n1, n2, n3, n4;
    if (m % 2 == 1) {
      n1 = (1.0 / (2.0 * kk)) * theta * p4;
      n2 = 0.5 * theta * p2 + ((2.0 * kk - 2.0) / (2.0 * kk)) * theta * p4;
      n3 = 0.5 * theta * p3;
      n4 = 0.5 * theta * p1 + (1.0 - 0.5 * theta) * p2;
    } else {
      n1 = (1.0 / (2.0 * kk)) * p3;
      n2 = 0.5 * p2 + ((2.0 * kk - 2.0) / (2.0 * kk)) * p3;
      n3 = 0.5 * p1 + c3 * p2;
      n4 = 0.5 * p4;
    }
    p1 = n1;
    p2 = n2;
    p3 = n3;
    p4 = n4;
    record();
  }
  return out;
}

ClassTransitionMatrices friendship_matrices(int k, double theta) {
  require_params(k, theta);
  const double kk = k;
  ClassTransitionMatrices m;
  m.odd << 0, 0, 0, theta / (2 * kk),
           0, theta / 2, 0, (2 * kk - 2) / (2 * kk) * theta,
           0, 0, theta / 2, 0,
           theta / 2, 1 - theta / 2, 0, 0;
  m.even << 0, 0, 1 / (2 * kk), 0,
            0, 0.5, (2 * kk - 2) / (2 * kk), 0,
            0.5, 0.25, 0, 0,
            0, 0, 0, 0.5;
  return m;
}

Quartic friendship_recurrence_coefficients(int k, double theta, Parity parity) {
  require_params(k, theta);
  const double kk = k;
  if (parity == Parity::Even) {
    return {1.0, -1.0, 0.0, (kk + 1) / (8 * kk), -1.0 / (16 * kk)};
  }
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  const double t4 = t3 * theta;
  return {
      1.0,
      -theta,
      -((kk - 1) * theta / kk - 1.5 * t2),
      -(((2 - 2 * kk) * t2 - (kk - 2) * t3) / (4 * kk)),
      t4 / (16 * kk),
  };
}

Quartic characteristic_polynomial(const Eigen::Matrix4d& a) {
  Quartic c{};
  c[0] = 1.0;
  Eigen::Matrix4d mk = Eigen::Matrix4d::Zero();
  for (int step = 1; step <= 4; ++step) {
    mk = a * mk + c[static_cast<std::size_t>(step - 1)] * Eigen::Matrix4d::Identity();
    c[static_cast<std::size_t>(step)] = -(a * mk).trace() / step;
  }
  return c;
}

double recurrence_residual(const std::vector<double>& seq, const Quartic& coeff, std::size_t offset,
                           std::size_t stride) {
  double worst = 0.0;
  for (std::size_t j = offset; j + 4 * stride < seq.size(); j += stride) {
    double acc = 0.0;
    for (std::size_t l = 0; l < 5; ++l) acc += coeff[l] * seq[j + (4 - l) * stride];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

FriendshipConsistencyReport friendship_consistency_report(int k, double theta, int horizon) {
  require_params(k, theta);
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  const auto mats = friendship_matrices(k, theta);

  FriendshipConsistencyReport r;
  r.k = k;
  r.theta = theta;
  r.horizon = horizon;
  r.derived = friendship_recursion(k, theta, horizon, Class3EvenCoefficient::Derived);
  r.alternating = evolve(mats.odd, mats.even, horizon);
  r.powers = single_powers(mats.odd, mats.even, horizon);
  r.derived_vs_alternating = pairwise_deviation(r.derived, r.alternating);
  r.derived_vs_powers = pairwise_deviation(r.derived, r.powers);
  r.alternating_vs_powers = pairwise_deviation(r.alternating, r.powers);

  r.class3_even_gap.assign(static_cast<std::size_t>(horizon + 1), 0.0);
  for (int m = 2; m <= horizon; m += 2) {
    const double prior = r.alternating.values[1][static_cast<std::size_t>(m - 1)];
    r.class3_even_gap[static_cast<std::size_t>(m)] =
        std::abs((r.class3_coefficient_text - r.class3_coefficient_matrix) * prior);
  }

  const Quartic quartic_odd = friendship_recurrence_coefficients(k, theta, Parity::Odd);
  const Quartic quartic_even = friendship_recurrence_coefficients(k, theta, Parity::Even);
  const Quartic char_odd = characteristic_polynomial(mats.odd);
  const Quartic char_even = characteristic_polynomial(mats.even);
  const Quartic char_odd_even = characteristic_polynomial(mats.odd * mats.even);
  const Quartic char_even_odd = characteristic_polynomial(mats.even * mats.odd);

  for (const auto* variant : {&r.alternating, &r.derived}) {
    const std::string name = variant == &r.alternating ? "alternating" : "derived";
    r.recurrences.push_back(check(name, "quartic_odd", *variant, quartic_odd, 1, 2));
    r.recurrences.push_back(check(name, "quartic_even", *variant, quartic_even, 0, 2));
  }
  r.recurrences.push_back(check("alternating", "charpoly(M_odd*M_even)", r.alternating, char_odd_even, 1, 2));
  r.recurrences.push_back(check("alternating", "charpoly(M_even*M_odd)", r.alternating, char_even_odd, 0, 2));

  // Single-matrix sequences over all consecutive indices.
  const auto odd_only = evolve(mats.odd, mats.odd, horizon);
  const auto even_only = evolve(mats.even, mats.even, horizon);
  r.recurrences.push_back(check("M_odd^m", "quartic_odd", odd_only, quartic_odd, 0, 1));
  r.recurrences.push_back(check("M_odd^m", "charpoly(M_odd)", odd_only, char_odd, 0, 1));
  r.recurrences.push_back(check("M_even^m", "quartic_even", even_only, quartic_even, 0, 1));
  r.recurrences.push_back(check("M_even^m", "charpoly(M_even)", even_only, char_even, 0, 1));
  return r;
}

}  // namespace tipsy
