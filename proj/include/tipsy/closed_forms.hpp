#pragma once

#include <vector>

#include "tipsy/types.hpp"

// Explicit formulas and recursions for the symmetric families. Everything here
// is independent of the chain engine so the two can be checked against each
// other. Every result carries its unit: the complete- and bipartite-graph
// survival formulas count moves, the C5 generating-function results count
// rounds.
namespace tipsy {

// theta^floor(m/2) * ((v-2)/(v-1))^m, with 0^0 = 1.
double p_complete(int v, double theta, int m);

// Moves: (2v-3)(v-1) / ((v-1)^2 - theta (v-2)^2)
// Rounds: (v-1)^2 / ((v-1)^2 - theta (v-2)^2)
ExpectedTime e_complete(int v, double theta, Unit unit);

// Placements on K_{v,w} up to isomorphism; V holds v vertices, W holds w.
enum class BipartitePosition : int {
  CopVRobberW = 1,
  BothInV = 2,
  CopWRobberV = 3,
  BothInW = 4,
};

// Throws InvalidPositionError for indices outside 1..4 or placements that need
// two distinct vertices in a part of size one.
BipartitePosition bipartite_position(int v, int w, int index);

double p_bipartite(int v, int w, double theta, BipartitePosition pos, int m);

// Expected capture time in moves. Same-part starts use
// 2(vw + theta v(w-1)) / (vw - theta^2 (v-1)(w-1)) (v and w swapped for
// position 4), which is the closed form of the move-indexed series.
ExpectedTime e_bipartite(int v, int w, double theta, BipartitePosition pos);

// Same-part expectations with "- theta v(w-1)" in the numerator instead.
// Kept for the verification report only; disagrees with the series whenever
// theta > 0.
double e_bipartite_alternate_sign(int v, int w, double theta, BipartitePosition pos);

// R[i][m] / C[i][m]: probability the game lasts at least m moves on C_v when
// the robber / cop moves first from distance i (1 <= i <= floor(v/2)).
struct TurnProbabilityTable {
  int v = 0;
  std::vector<std::vector<double>> robber_first;  // [i][m], row 0 unused
  std::vector<std::vector<double>> cop_first;

  int max_distance() const { return v / 2; }
  int horizon() const { return robber_first.empty() ? 0 : static_cast<int>(robber_first[1].size()) - 1; }
  double R(int i, int m) const { return robber_first[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]; }
  double C(int i, int m) const { return cop_first[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]; }
};

TurnProbabilityTable cycle_turn_recursion(int v, double theta, int horizon);

// Round-indexed survival on C_v, v >= 10 (OutOfRegimeError otherwise), from
// start distance i. Uses psi = 1/2 - theta/4.
SurvivalCurve cycle_round_recursion(int v, double theta, int i, int rounds);

// Differs from cycle_round_recursion only in the even-cycle case
// i = v/2 - 1, written here as psi P^{v/2-2} + 1/2 P^{v/2-1} + theta/4 P^{v/2}.
// Parity rules out the outer two terms; kept for the verification report.
SurvivalCurve cycle_round_recursion_alternate(int v, double theta, int i, int rounds);

// C5 round recursion from distance i in {1, 2}.
SurvivalCurve c5_rounds(double theta, int i, int rounds);

// Generating functions P_1(t), P_2(t) of c5_rounds evaluated at t.
double c5_generating_function(double theta, int i, double t);

// Expected rounds on C5: the generating functions at t = 1.
ExpectedTime c5_expected(double theta, int i);

}  // namespace tipsy
