#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace tipsy {

// Placements on the friendship graph F_k up to isomorphism:
//   1  cop and robber on the outer vertices of one triangle
//   2  outer vertices of different triangles
//   3  robber at the center
//   4  cop at the center
enum class FriendshipPosition : int {
  SameTriangle = 1,
  DifferentTriangles = 2,
  RobberAtCenter = 3,
  CopAtCenter = 4,
};

// Throws InvalidPositionError for indices outside 1..4 and for position 2 on F_1.
FriendshipPosition friendship_position(int k, int index);

// Per-position sequences Ptilde^i_m, i = 1..4, m = 0..M.
struct FriendshipCurves {
  std::array<std::vector<double>, 4> values;

  const std::vector<double>& position(int i) const { return values[static_cast<std::size_t>(i - 1)]; }
  std::size_t horizon() const { return values[0].empty() ? 0 : values[0].size() - 1; }
  Eigen::Vector4d at(std::size_t m) const {
    return {values[0][m], values[1][m], values[2][m], values[3][m]};
  }
};

// The even-step class-3 update appears in two forms: the matrix row gives
// 1/2 P^1 + 1/4 P^2, the case-by-case derivation gives 1/2 P^1 + 1/2 P^2.
enum class Class3EvenCoefficient { Matrix, Derived };

// Iterates the odd-step (theta-bearing) and even-step updates from
// Ptilde^i_0 = 1.
FriendshipCurves friendship_recursion(int k, double theta, int horizon,
                                      Class3EvenCoefficient coefficient = Class3EvenCoefficient::Matrix);

struct ClassTransitionMatrices {
  Eigen::Matrix4d odd;
  Eigen::Matrix4d even;
};

ClassTransitionMatrices friendship_matrices(int k, double theta);

enum class Parity { Odd, Even };

// Coefficients (1, c3, c2, c1, c0) of the closed-form quartics
// x^4 + c3 x^3 + c2 x^2 + c1 x + c0 attached to M_odd / M_even. The even one
// is det(xI - M_even); the odd one differs from det(xI - M_odd) for theta > 0.
using Quartic = std::array<double, 5>;
Quartic friendship_recurrence_coefficients(int k, double theta, Parity parity);

// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier, same layout.
Quartic characteristic_polynomial(const Eigen::Matrix4d& m);

// max_j |sum_l coeff[l] * seq[j + (4 - l) * stride]| over the subsequence
// starting at `offset` with the given stride.
double recurrence_residual(const std::vector<double>& seq, const Quartic& coeff, std::size_t offset,
                           std::size_t stride);

struct RecurrenceCheck {
  std::string sequence;    // which variant / matrix power sequence
  std::string polynomial;  // quartic_odd, quartic_even, charpoly_odd, ...
  std::size_t offset = 0;
  std::size_t stride = 1;
  double max_residual = 0.0;
  bool satisfied = false;  // max_residual <= 1e-12
};

// Three computations of the class curves:
//   (a) derived   the case-by-case recursion with the derived class-3 update
//   (b) alternating  M_odd, M_even applied in alternation (equals
//                    friendship_recursion with the matrix coefficient)
//   (c) powers    M_odd^m 1 for odd m, M_even^m 1 for even m
struct FriendshipConsistencyReport {
  int k = 0;
  double theta = 0.0;
  int horizon = 0;
  FriendshipCurves derived;
  FriendshipCurves alternating;
  FriendshipCurves powers;
  // Max over classes of pairwise absolute deviation, per time step.
  std::vector<double> derived_vs_alternating;
  std::vector<double> derived_vs_powers;
  std::vector<double> alternating_vs_powers;
  // Class-3 gap between the two even-step forms: (1/2 - 1/4) Ptilde^2_{m-1}
  // evaluated on the alternating sequence at even m (zero at odd m).
  std::vector<double> class3_even_gap;
  double class3_coefficient_text = 0.5;
  double class3_coefficient_matrix = 0.25;
  std::vector<RecurrenceCheck> recurrences;
};

FriendshipConsistencyReport friendship_consistency_report(int k, double theta, int horizon);

}  // namespace tipsy
