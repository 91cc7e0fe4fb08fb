#include "tipsy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tipsy/chain.hpp"
#include "tipsy/closed_forms.hpp"
#include "tipsy/friendship.hpp"
#include "tipsy/placement.hpp"

namespace tipsy {

namespace {

constexpr double kCurveTolerance = 1e-12;
constexpr double kExpectationTolerance = 1e-9;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  if (a.size() != b.size()) worst = INFINITY;
  return worst;
}

std::string placement_label(const Placement& p, Mover first) {
  return "cop=" + std::to_string(p.cop) + ",robber=" + std::to_string(p.robber) + ",first=" +
         std::string(to_string(first));
}

struct Recorder {
  VerifyReport& report;
  std::string suite;

  void add(const std::string& graph, double theta, const std::string& start, const std::string& check, double err,
           double tol, bool gating = true) {
    report.cells.push_back({suite, graph, theta, start, check, err, tol, err <= tol, gating});
  }
};

void complete_suite(VerifyReport& report) {
  Recorder rec{report, "complete"};
  for (int v = 2; v <= 8; ++v) {
    const GraphFamily family = CompleteFamily{v};
    const Graph g = generate(family);
    const auto place = complete_placement(v);
    const auto start = place.state(Mover::Robber);
    const std::string label = placement_label(place, Mover::Robber);
    for (double theta : kThetaGrid) {
      const auto ts = build_chain(g, theta, Mover::Robber);
      const auto curve = survival_curve(ts, start, 50, Unit::Moves);
      std::vector<double> formula;
      for (int m = 0; m <= 50; ++m) formula.push_back(p_complete(v, theta, m));
      rec.add(describe(family), theta, label, "survival_moves[0..50] chain vs p_complete",
              max_abs_diff(curve.values, formula), kCurveTolerance);
      for (Unit unit : {Unit::Moves, Unit::Rounds}) {
        const double chain = expected_capture(ts, start, unit).time.value;
        rec.add(describe(family), theta, label,
                "expected_" + std::string(to_string(unit)) + " chain vs e_complete",
                std::abs(chain - e_complete(v, theta, unit).value), kExpectationTolerance);
      }
      if (v == 2) {
        rec.add(describe(family), theta, label, "expected_moves == 1",
                std::abs(expected_capture(ts, start, Unit::Moves).time.value - 1.0), kExpectationTolerance);
      }
    }
  }
}

void bipartite_suite(VerifyReport& report) {
  Recorder rec{report, "bipartite"};
  for (int v = 1; v <= 6; ++v) {
    for (int w = 1; w <= 6; ++w) {
      const GraphFamily family = CompleteBipartiteFamily{v, w};
      const Graph g = generate(family);
      for (double theta : kThetaGrid) {
        const auto ts = build_chain(g, theta, Mover::Robber);
        for (int index = 1; index <= 4; ++index) {
          if ((index == 2 && v < 2) || (index == 4 && w < 2)) continue;
          const auto pos = static_cast<BipartitePosition>(index);
          const auto place = bipartite_placement(v, w, pos);
          const auto start = place.state(Mover::Robber);
          const std::string label = "position=" + std::to_string(index) + "," + placement_label(place, Mover::Robber);
          const auto curve = survival_curve(ts, start, 60, Unit::Moves);
          std::vector<double> formula;
          for (int m = 0; m <= 60; ++m) formula.push_back(p_bipartite(v, w, theta, pos, m));
          rec.add(describe(family), theta, label, "survival_moves[0..60] chain vs p_bipartite",
                  max_abs_diff(curve.values, formula), kCurveTolerance);

          const double chain = expected_capture(ts, start, Unit::Moves).time.value;
          const double closed = e_bipartite(v, w, theta, pos).value;
          rec.add(describe(family), theta, label, "expected_moves chain vs e_bipartite", std::abs(chain - closed),
                  kExpectationTolerance);
          if (index == 2 || index == 4) {
            rec.add(describe(family), theta, label, "expected_moves chain vs alternate-sign same-part form",
                    std::abs(chain - e_bipartite_alternate_sign(v, w, theta, pos)), kExpectationTolerance, false);
          }
          if (v == 3 && w == 2 && (index == 1 || index == 3)) {
            const double target = index == 1 ? 4.0 : 3.5;
            rec.add(describe(family), theta, label, "e_bipartite == " + format_double(target, 3),
                    std::abs(closed - target), kCurveTolerance);
            rec.add(describe(family), theta, label, "expected_moves chain == " + format_double(target, 3),
                    std::abs(chain - target), kExpectationTolerance);
          }
        }
      }
    }
  }
}

void cycle_suite(VerifyReport& report) {
  Recorder rec{report, "cycle"};
  for (int v = 3; v <= 16; ++v) {
    const GraphFamily family = CycleFamily{v};
    const Graph g = generate(family);
    for (double theta : kThetaGrid) {
      const auto robber_first = build_chain(g, theta, Mover::Robber);
      const auto cop_first = build_chain(g, theta, Mover::Cop);
      const auto table = cycle_turn_recursion(v, theta, 80);
      for (int i = 1; i <= v / 2; ++i) {
        const auto place = cycle_placement(v, i);
        const std::string dist = "distance=" + std::to_string(i) + ",";
        for (Mover first : {Mover::Robber, Mover::Cop}) {
          const auto& ts = first == Mover::Robber ? robber_first : cop_first;
          const auto curve = survival_curve(ts, place.state(first), 80, Unit::Moves);
          const auto& row = first == Mover::Robber ? table.robber_first[static_cast<std::size_t>(i)]
                                                   : table.cop_first[static_cast<std::size_t>(i)];
          rec.add(describe(family), theta, dist + placement_label(place, first),
                  std::string("survival_moves[0..80] chain vs turn recursion ") + (first == Mover::Robber ? "R" : "C"),
                  max_abs_diff(curve.values, row), kCurveTolerance);
        }
        if (v >= 10) {
          const auto curve = survival_curve(robber_first, place.state(Mover::Robber), 40, Unit::Rounds);
          const std::string label = dist + placement_label(place, Mover::Robber);
          rec.add(describe(family), theta, label, "survival_rounds[0..40] chain vs round recursion",
                  max_abs_diff(curve.values, cycle_round_recursion(v, theta, i, 40).values), kCurveTolerance);
          if (v % 2 == 0) {
            rec.add(describe(family), theta, label, "survival_rounds[0..40] chain vs alternate round recursion",
                    max_abs_diff(curve.values, cycle_round_recursion_alternate(v, theta, i, 40).values),
                    kCurveTolerance, false);
          }
        }
      }
    }
  }
}

void c5_suite(VerifyReport& report) {
  Recorder rec{report, "c5"};
  const GraphFamily family = CycleFamily{5};
  const Graph g = generate(family);
  for (double theta : kThetaGrid) {
    const auto ts = build_chain(g, theta, Mover::Robber);
    for (int i : {1, 2}) {
      const auto place = cycle_placement(5, i);
      const auto start = place.state(Mover::Robber);
      const std::string label = "distance=" + std::to_string(i) + "," + placement_label(place, Mover::Robber);
      const auto curve = survival_curve(ts, start, 40, Unit::Rounds);
      rec.add(describe(family), theta, label, "survival_rounds[0..40] chain vs c5_rounds",
              max_abs_diff(curve.values, c5_rounds(theta, i, 40).values), kCurveTolerance);
      const double chain = expected_capture(ts, start, Unit::Rounds).time.value;
      rec.add(describe(family), theta, label, "expected_rounds chain vs c5_expected",
              std::abs(chain - c5_expected(theta, i).value), kExpectationTolerance);
    }
  }
  const std::pair<double, std::pair<double, double>> anchors[] = {{0.0, {2.0, 2.0}}, {1.0, {2.4, 3.2}}};
  for (const auto& [theta, values] : anchors) {
    rec.add(describe(family), theta, "distance=1", "c5_expected == " + format_double(values.first, 3),
            std::abs(c5_expected(theta, 1).value - values.first), kExpectationTolerance);
    rec.add(describe(family), theta, "distance=2", "c5_expected == " + format_double(values.second, 3),
            std::abs(c5_expected(theta, 2).value - values.second), kExpectationTolerance);
  }
}

void friendship_suite(VerifyReport& report) {
  Recorder rec{report, "friendship"};
  for (int k = 1; k <= 5; ++k) {
    const std::string graph = describe(FriendshipFamily{k});
    for (double theta : kThetaGrid) {
      const auto r = friendship_consistency_report(k, theta, 40);
      auto worst = [](const std::vector<double>& xs) { return *std::max_element(xs.begin(), xs.end()); };
      rec.add(graph, theta, "all classes", "max deviation derived vs alternating", worst(r.derived_vs_alternating),
              kCurveTolerance, false);
      rec.add(graph, theta, "all classes", "max deviation derived vs powers", worst(r.derived_vs_powers),
              kCurveTolerance, false);
      rec.add(graph, theta, "all classes", "max deviation alternating vs powers", worst(r.alternating_vs_powers),
              kCurveTolerance, false);
      // Reported as a magnitude: "pass" here means the gap is visible.
      const double gap = worst(r.class3_even_gap);
      report.cells.push_back({"friendship", graph, theta, "class 3",
                              "class-3 even-step gap (1/2 vs 1/4) max over even m", gap, 0.0, gap > 0.0, false});
      for (const auto& rc : r.recurrences) {
        rec.add(graph, theta, "offset=" + std::to_string(rc.offset) + ",stride=" + std::to_string(rc.stride),
                rc.sequence + " satisfies " + rc.polynomial, rc.max_residual, kCurveTolerance, false);
      }
    }
  }
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "complete") return Suite::Complete;
  if (name == "bipartite") return Suite::Bipartite;
  if (name == "cycle") return Suite::Cycle;
  if (name == "c5") return Suite::C5;
  if (name == "friendship") return Suite::Friendship;
  if (name == "all") return Suite::All;
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Complete: return "complete";
    case Suite::Bipartite: return "bipartite";
    case Suite::Cycle: return "cycle";
    case Suite::C5: return "c5";
    case Suite::Friendship: return "friendship";
    case Suite::All: return "all";
  }
  return "?";
}

bool VerifyReport::passed() const { return gating_failures() == 0; }

std::size_t VerifyReport::gating_failures() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const VerifyCell& c) { return c.gating && !c.pass; }));
}

VerifyReport run_suite(Suite suite) {
  VerifyReport report;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Complete) complete_suite(report);
  if (all || suite == Suite::Bipartite) bipartite_suite(report);
  if (all || suite == Suite::Cycle) cycle_suite(report);
  if (all || suite == Suite::C5) c5_suite(report);
  if (all || suite == Suite::Friendship) friendship_suite(report);
  return report;
}

Table report_table(const VerifyReport& report, Suite suite) {
  Table t;
  t.meta["command"] = "verify";
  t.meta["suite"] = std::string(to_string(suite));
  t.meta["cells"] = report.cells.size();
  t.meta["gating_failures"] = report.gating_failures();
  t.meta["passed"] = report.passed();
  t.columns = {"suite", "graph", "theta", "start", "check", "max_error", "tolerance", "status", "gating"};
  for (const auto& c : report.cells) {
    std::string status = c.pass ? "pass" : "fail";
    if (!c.gating) status = c.pass ? "info:holds" : "info:differs";
    t.rows.push_back({c.suite, c.graph, c.theta, c.start, c.check, c.max_error, c.tolerance, status, c.gating});
  }
  return t;
}

}  // namespace tipsy
