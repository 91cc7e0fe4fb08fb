#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "tipsy/chain.hpp"
#include "tipsy/closed_forms.hpp"
#include "tipsy/errors.hpp"
#include "tipsy/placement.hpp"

using namespace tipsy;

namespace {

double ref_survival(const oracle::Adjacency& adj, const oracle::Q& theta, int cop, int robber, int m,
                    bool robber_first = true) {
  return oracle::Game(adj, theta).survival(cop, robber, robber_first, m)[static_cast<std::size_t>(m)].get_d();
}

double ref_expected(const oracle::Adjacency& adj, const oracle::Q& theta, int cop, int robber, bool rounds) {
  return oracle::Game(adj, theta).expected(cop, robber, true, rounds).get_d();
}

constexpr double kTight = 1e-12;

}  // namespace

TEST_CASE("p_complete") {
  CHECK(p_complete(3, 1.0, 2) == doctest::Approx(ref_survival(oracle::complete(3), 1, 0, 1, 2)).epsilon(kTight));
  CHECK(p_complete(3, 1.0, 2) == doctest::Approx(0.25).epsilon(kTight));
  CHECK(p_complete(4, 0.5, 3) ==
        doctest::Approx(ref_survival(oracle::complete(4), oracle::Q(1, 2), 0, 1, 3)).epsilon(kTight));
  CHECK(p_complete(4, 0.5, 3) == doctest::Approx(4.0 / 27).epsilon(kTight));
  for (int v = 2; v <= 6; ++v)
    for (double theta : {0.0, 0.5, 1.0}) CHECK(p_complete(v, theta, 0) == 1.0);
  CHECK(p_complete(2, 0.0, 1) == 0.0);
}

TEST_CASE("e_complete") {
  for (double theta : {0.0, 0.5, 1.0}) CHECK(e_complete(2, theta, Unit::Moves).value == 1.0);
  CHECK(e_complete(3, 0.0, Unit::Moves).value ==
        doctest::Approx(ref_expected(oracle::complete(3), 0, 0, 1, false)).epsilon(kTight));
  CHECK(e_complete(3, 0.0, Unit::Moves).value == doctest::Approx(1.5).epsilon(kTight));
  CHECK(e_complete(3, 1.0, Unit::Rounds).value ==
        doctest::Approx(ref_expected(oracle::complete(3), 1, 0, 1, true)).epsilon(kTight));
  CHECK(e_complete(3, 1.0, Unit::Rounds).unit == Unit::Rounds);
  for (int v = 2; v <= 6; ++v)
    for (const oracle::Q& theta : {oracle::Q(0), oracle::Q(1, 4), oracle::Q(1)}) {
      CHECK(e_complete(v, theta.get_d(), Unit::Moves).value ==
            doctest::Approx(ref_expected(oracle::complete(v), theta, 0, 1, false)).epsilon(kTight));
      CHECK(e_complete(v, theta.get_d(), Unit::Rounds).value ==
            doctest::Approx(ref_expected(oracle::complete(v), theta, 0, 1, true)).epsilon(kTight));
    }
}

TEST_CASE("bipartite positions") {
  CHECK(bipartite_position(3, 2, 1) == BipartitePosition::CopVRobberW);
  CHECK_THROWS_AS(bipartite_position(1, 3, 2), InvalidPositionError);
  CHECK_THROWS_AS(bipartite_position(3, 1, 4), InvalidPositionError);
  CHECK_THROWS_AS(bipartite_position(3, 3, 5), InvalidPositionError);
  CHECK_THROWS_AS(bipartite_position(3, 3, 0), InvalidPositionError);
  for (int pos = 1; pos <= 4; ++pos) {
    const auto p = bipartite_placement(3, 2, static_cast<BipartitePosition>(pos));
    CHECK(bipartite_class(3, p.cop, p.robber) == pos);
  }
}

TEST_CASE("p_bipartite") {
  const auto adj = oracle::bipartite(3, 2);
  CHECK(p_bipartite(3, 2, 0.3, BipartitePosition::CopVRobberW, 1) ==
        doctest::Approx(ref_survival(adj, oracle::Q(3, 10), 0, 3, 1)).epsilon(kTight));
  CHECK(p_bipartite(3, 2, 0.3, BipartitePosition::CopVRobberW, 1) == doctest::Approx(2.0 / 3).epsilon(kTight));
  CHECK(p_bipartite(3, 2, 0.5, BipartitePosition::BothInV, 2) ==
        doctest::Approx(ref_survival(adj, oracle::Q(1, 2), 0, 1, 2)).epsilon(kTight));
  CHECK(p_bipartite(3, 2, 0.5, BipartitePosition::BothInV, 2) == doctest::Approx(0.25).epsilon(kTight));

  for (int v = 1; v <= 3; ++v)
    for (int w = 1; w <= 3; ++w)
      for (int pos = 1; pos <= 4; ++pos) {
        if ((pos == 2 && v < 2) || (pos == 4 && w < 2)) continue;
        const auto place = bipartite_placement(v, w, static_cast<BipartitePosition>(pos));
        for (const oracle::Q& theta : {oracle::Q(0), oracle::Q(2, 5), oracle::Q(1)}) {
          const auto ref = oracle::Game(oracle::bipartite(v, w), theta)
                               .survival(static_cast<int>(place.cop), static_cast<int>(place.robber), true, 10);
          for (int m = 0; m <= 10; ++m) {
            CAPTURE(v);
            CAPTURE(w);
            CAPTURE(pos);
            CAPTURE(m);
            CHECK(std::abs(p_bipartite(v, w, theta.get_d(), static_cast<BipartitePosition>(pos), m) -
                           ref[static_cast<std::size_t>(m)].get_d()) <= kTight);
          }
        }
      }
}

TEST_CASE("e_bipartite") {
  const auto adj = oracle::bipartite(3, 2);
  for (const oracle::Q& theta : {oracle::Q(0), oracle::Q(1, 2), oracle::Q(1)}) {
    const double t = theta.get_d();
    CHECK(e_bipartite(3, 2, t, BipartitePosition::CopVRobberW).value ==
          doctest::Approx(ref_expected(adj, theta, 0, 3, false)).epsilon(kTight));
    CHECK(e_bipartite(3, 2, t, BipartitePosition::CopVRobberW).value == doctest::Approx(4.0).epsilon(kTight));
    CHECK(e_bipartite(3, 2, t, BipartitePosition::CopWRobberV).value ==
          doctest::Approx(ref_expected(adj, theta, 3, 0, false)).epsilon(kTight));
    CHECK(e_bipartite(3, 2, t, BipartitePosition::CopWRobberV).value == doctest::Approx(3.5).epsilon(kTight));
    CHECK(e_bipartite(3, 2, t, BipartitePosition::BothInV).value ==
          doctest::Approx(ref_expected(adj, theta, 0, 1, false)).epsilon(kTight));
  }
  CHECK(e_bipartite(3, 2, 0.0, BipartitePosition::BothInV).value == doctest::Approx(2.0).epsilon(kTight));

  // Same-part starts on a few more shapes, against exact expectations.
  for (int v = 2; v <= 4; ++v)
    for (int w = 2; w <= 4; ++w)
      for (const oracle::Q& theta : {oracle::Q(1, 3), oracle::Q(1)}) {
        const auto adj2 = oracle::bipartite(v, w);
        CHECK(e_bipartite(v, w, theta.get_d(), BipartitePosition::BothInV).value ==
              doctest::Approx(ref_expected(adj2, theta, 0, 1, false)).epsilon(kTight));
        CHECK(e_bipartite(v, w, theta.get_d(), BipartitePosition::BothInW).value ==
              doctest::Approx(ref_expected(adj2, theta, v, v + 1, false)).epsilon(kTight));
      }
}

TEST_CASE("alternate-sign same-part expectation differs once theta is positive") {
  CHECK(e_bipartite_alternate_sign(2, 2, 0.0, BipartitePosition::BothInV) ==
        doctest::Approx(e_bipartite(2, 2, 0.0, BipartitePosition::BothInV).value));
  CHECK(e_bipartite_alternate_sign(2, 2, 1.0, BipartitePosition::BothInV) == doctest::Approx(4.0 / 3));
  CHECK(e_bipartite(2, 2, 1.0, BipartitePosition::BothInV).value == doctest::Approx(4.0));
}

TEST_CASE("cycle turn recursion") {
  const auto t = cycle_turn_recursion(5, 0.6, 6);
  CHECK(t.R(1, 0) == 1.0);
  CHECK(t.R(1, 1) == doctest::Approx(0.5 * t.C(2, 0)));
  CHECK(t.R(1, 1) == doctest::Approx(ref_survival(oracle::cycle(5), oracle::Q(3, 5), 0, 1, 1)).epsilon(kTight));
  CHECK(t.C(1, 1) == doctest::Approx(0.3));
  CHECK(t.C(1, 1) ==
        doctest::Approx(ref_survival(oracle::cycle(5), oracle::Q(3, 5), 0, 1, 1, false)).epsilon(kTight));
  for (int v = 3; v <= 8; ++v) {
    const auto table = cycle_turn_recursion(v, 0.5, 3);
    for (int i = 1; i <= v / 2; ++i) CHECK(table.R(i, 0) == 1.0);
  }

  for (int v = 3; v <= 9; ++v)
    for (const oracle::Q& theta : {oracle::Q(0), oracle::Q(1, 2), oracle::Q(1)}) {
      const auto table = cycle_turn_recursion(v, theta.get_d(), 12);
      const oracle::Game game(oracle::cycle(v), theta);
      for (int i = 1; i <= v / 2; ++i) {
        const auto rf = game.survival(0, i, true, 12);
        const auto cf = game.survival(0, i, false, 12);
        for (int m = 0; m <= 12; ++m) {
          CAPTURE(v);
          CAPTURE(i);
          CAPTURE(m);
          CHECK(std::abs(table.R(i, m) - rf[static_cast<std::size_t>(m)].get_d()) <= kTight);
          CHECK(std::abs(table.C(i, m) - cf[static_cast<std::size_t>(m)].get_d()) <= kTight);
        }
      }
    }
}

TEST_CASE("cycle round recursion") {
  CHECK(cycle_round_recursion(10, 1.0, 2, 1)[1] == doctest::Approx(0.75).epsilon(kTight));
  CHECK(cycle_round_recursion(10, 1.0, 2, 1)[1] ==
        doctest::Approx(ref_survival(oracle::cycle(10), 1, 0, 2, 2)).epsilon(kTight));
  CHECK(cycle_round_recursion(11, 0.0, 1, 1)[1] == doctest::Approx(0.5).epsilon(kTight));
  CHECK(cycle_round_recursion(11, 0.0, 1, 1)[1] ==
        doctest::Approx(ref_survival(oracle::cycle(11), 0, 0, 1, 2)).epsilon(kTight));
  CHECK(cycle_round_recursion(12, 0.3, 4, 0)[0] == 1.0);
  CHECK_THROWS_AS(cycle_round_recursion(9, 0.5, 1, 3), OutOfRegimeError);
  CHECK_THROWS_AS(cycle_round_recursion(10, 0.5, 6, 3), InvalidPositionError);

  for (int v = 10; v <= 13; ++v)
    for (const oracle::Q& theta : {oracle::Q(0), oracle::Q(1, 2), oracle::Q(1)})
      for (int i = 1; i <= v / 2; ++i) {
        const auto curve = cycle_round_recursion(v, theta.get_d(), i, 6);
        const auto ref = oracle::Game(oracle::cycle(v), theta).survival(0, i, true, 12);
        for (int n = 0; n <= 6; ++n) {
          CAPTURE(v);
          CAPTURE(i);
          CAPTURE(n);
          CHECK(std::abs(curve[static_cast<std::size_t>(n)] - ref[static_cast<std::size_t>(2 * n)].get_d()) <=
                kTight);
        }
      }
}

TEST_CASE("alternate round recursion differs only next to the far side of even cycles") {
  for (int v : {10, 11, 12}) {
    for (int i = 1; i <= v / 2; ++i) {
      const auto a = cycle_round_recursion(v, 0.5, i, 8);
      const auto b = cycle_round_recursion_alternate(v, 0.5, i, 8);
      if (v % 2 == 1) CHECK(a.values == b.values);
    }
  }
  CHECK(cycle_round_recursion(12, 0.5, 5, 8).values != cycle_round_recursion_alternate(12, 0.5, 5, 8).values);
}

TEST_CASE("C5 rounds and generating functions") {
  CHECK(c5_rounds(1.0, 1, 1)[0] == 1.0);
  CHECK(c5_rounds(1.0, 1, 1)[1] == doctest::Approx(0.5).epsilon(kTight));
  CHECK(c5_rounds(1.0, 1, 1)[1] == doctest::Approx(ref_survival(oracle::cycle(5), 1, 0, 1, 2)).epsilon(kTight));
  CHECK(c5_rounds(0.0, 2, 1)[1] == doctest::Approx(0.5).epsilon(kTight));
  CHECK(c5_rounds(0.0, 2, 1)[1] == doctest::Approx(ref_survival(oracle::cycle(5), 0, 0, 2, 2)).epsilon(kTight));

  for (const oracle::Q& theta : {oracle::Q(0), oracle::Q(1, 4), oracle::Q(1)})
    for (int i : {1, 2}) {
      const auto curve = c5_rounds(theta.get_d(), i, 10);
      const auto ref = oracle::Game(oracle::cycle(5), theta).survival(0, i, true, 20);
      for (int n = 0; n <= 10; ++n)
        CHECK(std::abs(curve[static_cast<std::size_t>(n)] - ref[static_cast<std::size_t>(2 * n)].get_d()) <= kTight);
      CHECK(c5_expected(theta.get_d(), i).value ==
            doctest::Approx(ref_expected(oracle::cycle(5), theta, 0, i, true)).epsilon(kTight));
    }
  CHECK(c5_expected(0.0, 1).value == doctest::Approx(2.0).epsilon(kTight));
  CHECK(c5_expected(0.0, 2).value == doctest::Approx(2.0).epsilon(kTight));
  CHECK(c5_expected(1.0, 1).value == doctest::Approx(2.4).epsilon(kTight));
  CHECK(c5_expected(1.0, 2).value == doctest::Approx(3.2).epsilon(kTight));
  CHECK(c5_expected(1.0, 2).unit == Unit::Rounds);

  // The generating function at t reproduces the power series of c5_rounds.
  const auto curve = c5_rounds(0.7, 1, 400);
  double series = 0.0;
  double tp = 1.0;
  for (double p : curve.values) {
    series += p * tp;
    tp *= 0.9;
  }
  CHECK(c5_generating_function(0.7, 1, 0.9) == doctest::Approx(series).epsilon(1e-12));
}
