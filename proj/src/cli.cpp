#include "tipsy/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tipsy/chain.hpp"
#include "tipsy/closed_forms.hpp"
#include "tipsy/errors.hpp"
#include "tipsy/exact.hpp"
#include "tipsy/monte_carlo.hpp"
#include "tipsy/output.hpp"
#include "tipsy/placement.hpp"
#include "tipsy/verify.hpp"

namespace tipsy {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph_file;
  std::string family;
  int v = 0;
  int w = 0;
  int k = 0;
  std::string theta = "0";
  std::optional<std::int64_t> cop;
  std::optional<std::int64_t> robber;
  std::optional<int> position;
  std::optional<int> distance;
  std::string first_mover = "robber";
  std::optional<int> moves;
  std::optional<int> rounds;
  std::string unit = "moves";
  std::string method = "chain";
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  std::optional<std::uint32_t> max_moves;
  unsigned threads = 1;
  bool exact = false;
  std::string suite = "all";
};

// The graph, where it came from, and the family when it is one of the
// recognized symmetric families.
struct Source {
  Graph graph;
  std::string descriptor;
  std::optional<GraphFamily> family;
};

struct Theta {
  std::string text;
  double value = 0.0;
  Rational exact;
};

struct Start {
  Placement placement;
  Mover first = Mover::Robber;
  std::string position_label;

  GameState state() const { return placement.state(first); }
};

GraphFamily family_from(const Options& o) {
  if (o.family == "complete") return CompleteFamily{o.v};
  if (o.family == "bipartite" || o.family == "complete-bipartite") return CompleteBipartiteFamily{o.v, o.w};
  if (o.family == "cycle") return CycleFamily{o.v};
  if (o.family == "friendship") return FriendshipFamily{o.k};
  throw UsageError("unknown family '" + o.family + "' (complete, bipartite, cycle, friendship)");
}

Source load_source(const Options& o) {
  if (!o.graph_file.empty() && !o.family.empty()) throw UsageError("give either --graph or --family, not both");
  if (!o.graph_file.empty()) {
    std::ifstream in(o.graph_file);
    if (!in) throw UsageError("cannot open graph file " + o.graph_file);
    Graph g = parse_edge_list(in);
    return {std::move(g), "edge-list(" + o.graph_file + ")", std::nullopt};
  }
  if (o.family.empty()) throw UsageError("a graph is required: --graph FILE or --family NAME");
  const GraphFamily f = family_from(o);
  return {generate(f), describe(f), f};
}

Theta parse_theta(const std::string& text) {
  Theta t{text, 0.0, 0};
  try {
    t.exact = parse_rational(text);
    if (auto slash = text.find('/'); slash != std::string::npos) {
      t.value = std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    } else {
      t.value = std::stod(text);
    }
  } catch (const std::exception&) {
    throw UsageError("--theta expects a number or fraction, got '" + text + "'");
  }
  if (t.exact < 0 || t.exact > 1) throw std::invalid_argument("theta must lie in [0, 1], got " + text);
  return t;
}

Mover parse_mover(const std::string& s) {
  if (s == "robber") return Mover::Robber;
  if (s == "cop") return Mover::Cop;
  throw UsageError("--first-mover must be robber or cop");
}

Start resolve_start(const Options& o, const Source& src) {
  Start s;
  s.first = parse_mover(o.first_mover);
  const auto n = static_cast<std::int64_t>(src.graph.vertex_count());
  if (o.cop || o.robber) {
    if (!o.cop || !o.robber) throw UsageError("--cop and --robber must be given together");
    if (o.position || o.distance) throw UsageError("give vertex ids or a named position, not both");
    if (*o.cop < 0 || *o.cop >= n || *o.robber < 0 || *o.robber >= n) {
      throw InvalidStartError("vertex ids must lie in 0.." + std::to_string(n - 1));
    }
    if (*o.cop == *o.robber) {
      throw InvalidStartError("start state is not live: cop and robber share vertex " + std::to_string(*o.cop));
    }
    s.placement = {static_cast<Vertex>(*o.cop), static_cast<Vertex>(*o.robber)};
    return s;
  }
  if (!src.family) throw UsageError("graphs read from a file need --cop and --robber");
  const GraphFamily& f = *src.family;
  if (o.position) {
    if (auto* b = std::get_if<CompleteBipartiteFamily>(&f)) {
      s.placement = bipartite_placement(b->v, b->w, bipartite_position(b->v, b->w, *o.position));
    } else if (auto* fr = std::get_if<FriendshipFamily>(&f)) {
      s.placement = friendship_placement(fr->k, friendship_position(fr->k, *o.position));
    } else {
      throw UsageError("--position applies to bipartite and friendship families");
    }
    s.position_label = "position=" + std::to_string(*o.position);
    return s;
  }
  if (o.distance) {
    auto* c = std::get_if<CycleFamily>(&f);
    if (!c) throw UsageError("--distance applies to the cycle family");
    s.placement = cycle_placement(c->v, *o.distance);
    s.position_label = "distance=" + std::to_string(*o.distance);
    return s;
  }
  if (auto* c = std::get_if<CompleteFamily>(&f)) {
    s.placement = complete_placement(c->v);
    return s;
  }
  throw UsageError("a start is required: --cop/--robber, --position or --distance");
}

Unit parse_unit(const std::string& s) {
  if (s == "moves") return Unit::Moves;
  if (s == "rounds") return Unit::Rounds;
  throw UsageError("--unit must be moves or rounds");
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw UsageError("--format must be csv or json");
}

std::vector<std::string> methods_of(const std::string& m) {
  if (m == "chain" || m == "closed-form" || m == "monte-carlo") return {m};
  if (m == "all") return {"chain", "closed-form", "monte-carlo"};
  throw UsageError("--method must be chain, closed-form, monte-carlo or all");
}

nlohmann::ordered_json start_json(const Start& s) {
  nlohmann::ordered_json j;
  j["cop"] = s.placement.cop;
  j["robber"] = s.placement.robber;
  j["first_mover"] = std::string(to_string(s.first));
  if (!s.position_label.empty()) j["position"] = s.position_label;
  return j;
}

void common_meta(Table& t, const std::string& command, const Source& src, const Theta& theta, const Start& start) {
  t.meta["command"] = command;
  t.meta["graph"] = src.descriptor;
  t.meta["vertices"] = src.graph.vertex_count();
  t.meta["edges"] = src.graph.edge_count();
  t.meta["theta"] = theta.value;
  t.meta["theta_text"] = theta.text;
  t.meta["start"] = start_json(start);
}

// Closed-form survival in the requested unit, or UnsupportedMethodError.
std::vector<double> closed_form_survival(const Source& src, const Start& start, double theta, int horizon,
                                         Unit unit) {
  auto unsupported = [&](const std::string& why) {
    return UnsupportedMethodError("no closed-form survival for " + src.descriptor + ": " + why);
  };
  if (!src.family) throw unsupported("graph was not generated from a recognized family");
  const int moves = unit == Unit::Moves ? horizon : 2 * horizon;
  const int step = unit == Unit::Moves ? 1 : 2;
  const auto& place = start.placement;
  std::vector<double> out;

  if (auto* c = std::get_if<CompleteFamily>(&*src.family)) {
    if (start.first != Mover::Robber) throw unsupported("formula assumes the robber moves first");
    for (int m = 0; m <= moves; m += step) out.push_back(p_complete(c->v, theta, m));
    return out;
  }
  if (auto* b = std::get_if<CompleteBipartiteFamily>(&*src.family)) {
    if (start.first != Mover::Robber) throw unsupported("formulas assume the robber moves first");
    const auto pos = static_cast<BipartitePosition>(bipartite_class(b->v, place.cop, place.robber));
    for (int m = 0; m <= moves; m += step) out.push_back(p_bipartite(b->v, b->w, theta, pos, m));
    return out;
  }
  if (auto* c = std::get_if<CycleFamily>(&*src.family)) {
    const int i = cycle_distance(c->v, place.cop, place.robber);
    if (unit == Unit::Rounds && start.first == Mover::Robber) {
      if (c->v == 5) return c5_rounds(theta, i, horizon).values;
      if (c->v >= 10) return cycle_round_recursion(c->v, theta, i, horizon).values;
    }
    const auto table = cycle_turn_recursion(c->v, theta, moves);
    for (int m = 0; m <= moves; m += step) out.push_back(start.first == Mover::Robber ? table.R(i, m) : table.C(i, m));
    return out;
  }
  throw unsupported("the friendship recursions are not survival probabilities of a fixed start");
}

double closed_form_expected(const Source& src, const Start& start, double theta, Unit unit) {
  auto unsupported = [&](const std::string& why) {
    return UnsupportedMethodError("no closed-form expectation for " + src.descriptor + ": " + why);
  };
  if (!src.family) throw unsupported("graph was not generated from a recognized family");
  if (start.first != Mover::Robber) throw unsupported("formulas assume the robber moves first");
  const auto& place = start.placement;
  if (auto* c = std::get_if<CompleteFamily>(&*src.family)) return e_complete(c->v, theta, unit).value;
  if (auto* b = std::get_if<CompleteBipartiteFamily>(&*src.family)) {
    if (unit != Unit::Moves) throw unsupported("bipartite expectations are in moves");
    const auto pos = static_cast<BipartitePosition>(bipartite_class(b->v, place.cop, place.robber));
    return e_bipartite(b->v, b->w, theta, pos).value;
  }
  if (auto* c = std::get_if<CycleFamily>(&*src.family)) {
    if (c->v != 5) throw unsupported("expectations are known for C5 only");
    if (unit != Unit::Rounds) throw unsupported("C5 expectations are in rounds");
    return c5_expected(theta, cycle_distance(5, place.cop, place.robber)).value;
  }
  throw unsupported("no expectation formula for this family");
}

SimConfig sim_config(const Options& o, const Source& src, const Theta& theta, const Start& start,
                     std::uint32_t default_max_moves) {
  SimConfig cfg{src.graph};
  cfg.theta = theta.value;
  cfg.start = start.state();
  cfg.first_mover = start.first;
  cfg.trials = o.trials;
  cfg.max_moves = o.max_moves.value_or(default_max_moves);
  cfg.seed = o.seed;
  return cfg;
}

void add_sim_meta(Table& t, const SimConfig& cfg) {
  t.meta["seed"] = cfg.seed;
  t.meta["trials"] = cfg.trials;
  t.meta["max_moves"] = cfg.max_moves;
}

Table cmd_survive(const Options& o) {
  if (o.moves.has_value() == o.rounds.has_value()) throw UsageError("give exactly one of --moves or --rounds");
  const Unit unit = o.moves ? Unit::Moves : Unit::Rounds;
  const int horizon = o.moves ? *o.moves : *o.rounds;
  if (horizon < 0) throw UsageError("horizon must be nonnegative");
  const Source src = load_source(o);
  const Theta theta = parse_theta(o.theta);
  const Start start = resolve_start(o, src);
  const auto methods = methods_of(o.method);
  const bool all = o.method == "all";

  Table t;
  common_meta(t, "survive", src, theta, start);
  t.meta["unit"] = std::string(to_string(unit));
  t.meta["horizon"] = horizon;
  t.meta["method"] = o.method;

  std::vector<std::string> columns{unit == Unit::Moves ? "m" : "n"};
  std::vector<std::vector<Cell>> cols;
  std::vector<std::size_t> exact_columns;

  for (const auto& method : methods) {
    if (method == "chain") {
      exact_columns.push_back(columns.size());
      columns.push_back("chain");
      if (o.exact) {
        const auto ts = build_chain<Rational>(src.graph, theta.exact, start.first);
        const auto curve = survival_curve(ts, start.state(), static_cast<std::size_t>(horizon), unit);
        std::vector<Cell> dbl, txt;
        for (const auto& q : curve.values) {
          dbl.emplace_back(to_double(q));
          txt.emplace_back(to_string(q));
        }
        cols.push_back(std::move(dbl));
        columns.push_back("chain_exact");
        cols.push_back(std::move(txt));
      } else {
        const auto ts = build_chain<double>(src.graph, theta.value, start.first);
        const auto curve = survival_curve(ts, start.state(), static_cast<std::size_t>(horizon), unit);
        cols.emplace_back(curve.values.begin(), curve.values.end());
      }
    } else if (method == "closed-form") {
      std::vector<double> values;
      try {
        values = closed_form_survival(src, start, theta.value, horizon, unit);
      } catch (const UnsupportedMethodError& e) {
        if (!all) throw;
        t.meta["closed_form_skipped"] = e.what();
        continue;
      }
      exact_columns.push_back(columns.size());
      columns.push_back("closed_form");
      cols.emplace_back(values.begin(), values.end());
    } else {
      const std::uint32_t moves = static_cast<std::uint32_t>(unit == Unit::Moves ? horizon : 2 * horizon);
      const SimConfig cfg = sim_config(o, src, theta, start, std::max<std::uint32_t>(moves, 1));
      if (cfg.max_moves < moves) throw std::invalid_argument("--max-moves is below the requested horizon");
      const SimResult r = simulate(cfg, o.threads);
      add_sim_meta(t, cfg);
      std::vector<Cell> est, se;
      const std::size_t step = unit == Unit::Moves ? 1 : 2;
      for (int i = 0; i <= horizon; ++i) {
        est.emplace_back(r.survival[static_cast<std::size_t>(i) * step]);
        se.emplace_back(r.standard_error[static_cast<std::size_t>(i) * step]);
      }
      columns.push_back("monte_carlo");
      cols.push_back(std::move(est));
      columns.push_back("monte_carlo_se");
      cols.push_back(std::move(se));
    }
  }

  const bool deviation = exact_columns.size() >= 2;
  if (deviation) columns.push_back("max_deviation");
  t.columns = columns;
  for (int i = 0; i <= horizon; ++i) {
    const auto row_index = static_cast<std::size_t>(i);
    std::vector<Cell> row{static_cast<std::int64_t>(i)};
    for (const auto& c : cols) row.push_back(c[row_index]);
    if (deviation) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t c : exact_columns) {
        const double x = std::get<double>(cols[c - 1][row_index]);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      row.emplace_back(hi - lo);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_expect(const Options& o) {
  const Unit unit = parse_unit(o.unit);
  const Source src = load_source(o);
  const Theta theta = parse_theta(o.theta);
  const Start start = resolve_start(o, src);
  const auto methods = methods_of(o.method);
  const bool all = o.method == "all";

  Table t;
  common_meta(t, "expect", src, theta, start);
  t.meta["unit"] = std::string(to_string(unit));
  t.meta["method"] = o.method;
  t.columns = {"method", "value", "standard_error", "tail_bound", "exact"};

  std::vector<double> exact_values;
  for (const auto& method : methods) {
    if (method == "chain") {
      const auto ts = build_chain<double>(src.graph, theta.value, start.first);
      const auto e = expected_capture(ts, start.state(), unit);
      Cell exact;
      if (o.exact) {
        const auto qts = build_chain<Rational>(src.graph, theta.exact, start.first);
        exact = to_string(expected_capture_exact(qts, start.state(), unit));
      }
      t.rows.push_back({"chain", e.time.value, std::monostate{}, e.tail_bound, exact});
      exact_values.push_back(e.time.value);
    } else if (method == "closed-form") {
      double value = 0.0;
      try {
        value = closed_form_expected(src, start, theta.value, unit);
      } catch (const UnsupportedMethodError& e) {
        if (!all) throw;
        t.meta["closed_form_skipped"] = e.what();
        continue;
      }
      t.rows.push_back({"closed-form", value, std::monostate{}, std::monostate{}, std::monostate{}});
      exact_values.push_back(value);
    } else {
      const SimConfig cfg = sim_config(o, src, theta, start, 10000);
      add_sim_meta(t, cfg);
      const auto est = estimate_expected_time(cfg, unit, o.threads);
      t.meta["censored"] = est.censored;
      t.rows.push_back({"monte-carlo", est.time.value, est.standard_error, std::monostate{}, std::monostate{}});
    }
  }
  if (exact_values.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(exact_values.begin(), exact_values.end());
    t.meta["max_deviation"] = *hi - *lo;
  }
  return t;
}

Table cmd_simulate(const Options& o) {
  const Source src = load_source(o);
  const Theta theta = parse_theta(o.theta);
  const Start start = resolve_start(o, src);
  const SimConfig cfg = sim_config(o, src, theta, start, 1000);
  const SimResult r = simulate(cfg, o.threads);

  Table t;
  common_meta(t, "simulate", src, theta, start);
  t.meta["unit"] = "moves";
  t.meta["method"] = "monte-carlo";
  add_sim_meta(t, cfg);
  t.meta["censored"] = r.censored;
  try {
    const auto e = estimate_expected_time(r, Unit::Moves);
    t.meta["expected_moves"] = e.time.value;
    t.meta["expected_moves_se"] = e.standard_error;
  } catch (const CensoringError& e) {
    t.meta["expected_moves"] = nullptr;
    t.meta["censored_fraction"] = e.censored_fraction();
  }
  t.columns = {"m", "captures", "survival", "standard_error"};
  for (std::size_t m = 0; m < r.survival.size(); ++m) {
    t.rows.push_back({static_cast<std::int64_t>(m), static_cast<std::int64_t>(r.capture_histogram[m]), r.survival[m],
                      r.standard_error[m]});
  }
  return t;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw UsageError("cannot write " + o.output);
  file << text;
}

void add_graph_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph_file, "Edge-list file (one \"u v\" pair per line)");
  cmd->add_option("--family", o.family, "complete, bipartite, cycle or friendship");
  cmd->add_option("--v", o.v, "Vertex count (complete, cycle) or size of part V (bipartite)");
  cmd->add_option("--w", o.w, "Size of part W (bipartite)");
  cmd->add_option("--k", o.k, "Number of triangles (friendship)");
}

void add_game_options(CLI::App* cmd, Options& o) {
  add_graph_options(cmd, o);
  cmd->add_option("--theta", o.theta, "Probability that a cop move is random, in [0, 1]");
  cmd->add_option("--cop", o.cop, "Cop start vertex");
  cmd->add_option("--robber", o.robber, "Robber start vertex");
  cmd->add_option("--position", o.position, "Named placement 1..4 (bipartite, friendship)");
  cmd->add_option("--distance", o.distance, "Start distance (cycle)");
  cmd->add_option("--first-mover", o.first_mover, "robber (default) or cop");
  cmd->add_option("--format", o.format, "json (default) or csv");
  cmd->add_option("--output", o.output, "Output file (default stdout)");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials");
  cmd->add_option("--max-moves", o.max_moves, "Monte Carlo censoring horizon in moves");
  cmd->add_option("--threads", o.threads, "Monte Carlo worker threads (does not change results)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Tipsy cop and drunken robber: survival curves, expected capture times, simulation"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write the canonical edge list of a graph family");
  add_graph_options(gen, o);
  gen->add_option("--output", o.output, "Output file (default stdout)");

  auto* survive = app.add_subcommand("survive", "Survival probabilities P_0..P_M");
  add_game_options(survive, o);
  survive->add_option("--moves", o.moves, "Horizon in moves");
  survive->add_option("--rounds", o.rounds, "Horizon in rounds");
  survive->add_option("--method", o.method, "chain (default), closed-form, monte-carlo or all");
  survive->add_flag("--exact", o.exact, "Chain in exact rational arithmetic");

  auto* expect = app.add_subcommand("expect", "Expected capture time");
  add_game_options(expect, o);
  expect->add_option("--unit", o.unit, "moves (default) or rounds");
  expect->add_option("--method", o.method, "chain (default), closed-form, monte-carlo or all");
  expect->add_flag("--exact", o.exact, "Also solve the chain in exact rational arithmetic");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo capture-time histogram");
  add_game_options(sim, o);

  auto* verify = app.add_subcommand("verify", "Cross-check chain, closed forms and recursions");
  verify->add_option("--suite", o.suite, "complete, bipartite, cycle, c5, friendship or all");
  verify->add_option("--format", o.format, "json (default) or csv");
  verify->add_option("--output", o.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (o.family.empty()) throw UsageError("gen needs --family");
      emit(o, serialize_edge_list(generate(family_from(o))), out);
      return kExitOk;
    }
    const Format format = parse_format(o.format);
    Table table;
    int code = kExitOk;
    if (survive->parsed()) {
      table = cmd_survive(o);
    } else if (expect->parsed()) {
      table = cmd_expect(o);
    } else if (sim->parsed()) {
      table = cmd_simulate(o);
    } else {
      Suite suite;
      try {
        suite = parse_suite(o.suite);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const VerifyReport report = run_suite(suite);
      table = report_table(report, suite);
      if (!report.passed()) code = kExitVerification;
    }
    std::ostringstream text;
    write_table(table, format, text);
    emit(o, text.str(), out);
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidFamilyError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace tipsy
