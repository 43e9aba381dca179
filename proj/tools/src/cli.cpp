#include "sepkit_cli/cli.hpp"

#include "commands.hpp"

#include "sepkit/dataset.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace sepkit::cli {

namespace {

const char* error_tag(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::Invariant: return "invariant_error";
    case ErrorKind::UnknownId: return "unknown_id";
    case ErrorKind::DuplicateCoordinate: return "duplicate_coordinate";
    case ErrorKind::GeneralPosition: return "general_position";
    case ErrorKind::ScheduleViolation: return "schedule_violation";
    case ErrorKind::EmptyInput: return "empty_input";
    case ErrorKind::EmptyColor: return "empty_color";
    case ErrorKind::NonPositiveEps: return "non_positive_eps";
    case ErrorKind::CapExceeded: return "cap_exceeded";
  }
  return "error";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownId:
    case ErrorKind::ScheduleViolation: return kSchedule;
    case ErrorKind::Invariant: return kInvariant;
    default: return kUsage;
  }
}

void check_config(const RunConfig& cfg) {
  const bool approx = cfg.problem == "kmm-approx";
  const bool budget = cfg.problem == "kmm" || approx;
  if (cfg.k && *cfg.k < 0) throw UsageError("--k must be non-negative");
  if (cfg.mode == "plot") {
    if (!cfg.k) throw UsageError("plot needs --k");
    return;
  }
  // bench also times the approximation next to the exact solver
  if (approx && !cfg.eps) throw UsageError("--eps is required for kmm-approx");
  if (cfg.eps && !approx && !(cfg.mode == "bench" && cfg.problem == "kmm"))
    throw UsageError("--eps only applies to kmm-approx");
  if (budget && !cfg.k) throw UsageError("--k is required for " + cfg.problem);
  if (cfg.dim == 1 && (approx || cfg.problem == "maxstrip"))
    throw UsageError(cfg.problem + " is a planar problem");
  if (cfg.tol <= 0) throw UsageError("--tol must be positive");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string eps_text, tol_text, perturb_text;

  CLI::App app{"Linear separators of red and blue points with an outlier budget", "sepkit"};
  app.require_subcommand(1);
  const std::vector<std::string> problems{"maxstrip", "minmax", "minmis", "kmm", "kmm-approx"};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--problem", cfg.problem, "maxstrip, minmax, minmis, kmm or kmm-approx")
        ->check(CLI::IsMember(problems));
    sub->add_option("--dim", cfg.dim, "1 or 2")->check(CLI::IsMember({1, 2}));
    sub->add_option("--k", cfg.k, "misclassification budget");
    sub->add_option("--eps", eps_text, "approximation factor, kmm-approx only");
    sub->add_option("--tol", tol_text, "relative tolerance of the error search");
    sub->add_option("--seed", cfg.seed, "random seed; SEPKIT_SEED overrides");
    sub->add_option("--perturb", perturb_text, "shift point i by (i*eta, i*i*eta)");
    sub->add_option("-o,--out", cfg.output, "report file (default stdout)");
  };
  auto* solve = app.add_subcommand("solve", "solve one dataset");
  auto* oracle = app.add_subcommand("oracle", "solve one dataset by brute force");
  auto* simulate = app.add_subcommand("simulate", "replay an update stream");
  auto* bench = app.add_subcommand("bench", "time the solvers on random instances");
  auto* plot = app.add_subcommand("plot", "draw a dataset and its dual as SVG");
  for (auto* sub : {solve, oracle, simulate, bench, plot}) common(sub);
  for (auto* sub : {solve, oracle, plot}) sub->add_option("input", cfg.input, "dataset (.csv or .json, - for stdin)")->required();
  simulate->add_option("stream", cfg.input, "update stream, one JSON object per line")->required();
  simulate->add_flag("--verify", cfg.verify, "re-solve statically after every update");
  bench->add_option("--n", cfg.sizes, "instance sizes")->delimiter(',');
  bench->add_option("--reps", cfg.reps, "runs per size")->check(CLI::PositiveNumber);
  plot->add_option("--svg", cfg.svg, "SVG file (default: the report stream)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  for (auto* sub : {solve, oracle, simulate, bench, plot})
    if (sub->parsed()) cfg.mode = sub->get_name();
  if (simulate->parsed() && simulate->count("--problem") == 0) cfg.problem = "minmis";

  std::ofstream file;
  std::ostream* report = &out;
  try {
    if (const char* env = std::getenv("SEPKIT_SEED")) cfg.seed = std::stoull(env);
    if (!eps_text.empty()) cfg.eps = parse_rat(eps_text);
    if (!tol_text.empty()) cfg.tol = parse_rat(tol_text);
    if (!perturb_text.empty()) cfg.perturb = parse_rat(perturb_text);
    check_config(cfg);
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw ParseError("cannot write " + cfg.output);
      report = &file;
    }
    if (cfg.mode == "solve") return cmd_solve(cfg, *report);
    if (cfg.mode == "oracle") return cmd_oracle(cfg, *report);
    if (cfg.mode == "simulate") return cmd_simulate(cfg, *report);
    if (cfg.mode == "bench") return cmd_bench(cfg, *report);
    return cmd_plot(cfg, *report);
  } catch (const UsageError& e) {
    err << "sepkit: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "sepkit: " << e.what() << '\n';
    *report << Json{{"status", "error"}, {"error", error_tag(e.kind())}, {"message", e.what()}}.dump() << '\n';
    return exit_code(e.kind());
  } catch (const std::invalid_argument& e) {
    err << "sepkit: bad number: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "sepkit: internal error: " << e.what() << '\n';
    return kInvariant;
  }
}

namespace {

int solve_1d(const RunConfig& cfg, std::ostream& out, bool brute) {
  const auto pts = to_1d(load_points(cfg, false));
  if (pts.empty()) throw EmptyInput("no points");
  const int n = static_cast<int>(pts.size());
  Tree1D tree(cfg.seed);
  for (const auto& p : pts) tree.insert(p);
  int k_min = tree.min_mis();
  if (brute) {
    k_min = 0;
    while (!oracle_1d(pts, k_min).separator_x) ++k_min;
  }
  const int k = cfg.problem == "minmis" ? k_min : cfg.problem == "minmax" ? n : std::min(*cfg.k, n);
  const Result1D r = brute ? oracle_1d(pts, k) : tree.query(k);
  out << result1d_json(r, cfg.problem, k, k_min).dump() << '\n';
  return r.separator_x ? kOk : kInfeasible;
}

int min_violations(const std::vector<LabeledPoint>& pts) {
  return fewest_violations(
      {dual_constraints(pts, Orientation::BlueAbove), dual_constraints(pts, Orientation::RedAbove)});
}

void require_both_colors(const std::vector<LabeledPoint>& pts) {
  if (pts.empty()) throw EmptyInput("no points");
  bool red = false, blue = false;
  for (const auto& p : pts) (p.color == Color::Red ? red : blue) = true;
  if (!red || !blue) throw EmptyColor("both colors are needed");
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dim == 1) return solve_1d(cfg, out, false);
  if (cfg.problem == "maxstrip") {
    const auto pts = load_points(cfg, false);
    if (pts.empty()) throw EmptyInput("no points");
    const StripResult r = max_margin_static(pts);
    out << strip_json(r).dump() << '\n';
    if (r.status == StripStatus::EmptySide) return kUsage;
    return r.status == StripStatus::Separable ? kOk : kInfeasible;
  }
  const auto pts = load_points(cfg, true);
  require_both_colors(pts);
  const int n = static_cast<int>(pts.size());
  if (cfg.problem == "kmm-approx") {
    const int k = std::min(*cfg.k, n);
    const ApproxReport r = solve_approx(pts, k, *cfg.eps, cfg.tol);
    out << approx_json(r, pts, k).dump() << '\n';
    return r.separator ? kOk : kInfeasible;
  }
  const int k = cfg.problem == "minmax" ? n : cfg.problem == "minmis" ? min_violations(pts) : std::min(*cfg.k, n);
  const ExactSolveReport r = solve_exact(pts, k);
  out << exact_json(r, pts, cfg.problem, k).dump() << '\n';
  return r.best ? kOk : kInfeasible;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dim == 1) return solve_1d(cfg, out, true);
  if (cfg.problem == "maxstrip" || cfg.problem == "kmm-approx")
    throw UsageError("no brute-force solver for " + cfg.problem);
  const auto pts = load_points(cfg, true);
  require_both_colors(pts);
  const int n = static_cast<int>(pts.size());
  const int k_min = oracle_minmis(pts);
  const int k = cfg.problem == "minmax" ? n : cfg.problem == "minmis" ? k_min : std::min(*cfg.k, n);
  const OracleReport r = oracle_kmm(pts, k);
  Json j = oracle_json(r, pts, cfg.problem, k);
  j["k_min"] = k_min;
  out << j.dump() << '\n';
  return r.feasible ? kOk : kInfeasible;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  const auto pts = load_points(cfg, true);
  require_both_colors(pts);
  const ExactSolveReport r = solve_exact(pts, *cfg.k);
  PlotInput in;
  in.points = pts;
  in.k = *cfg.k;
  in.orientation = r.best ? r.orientation : Orientation::BlueAbove;
  in.separator = r.best;
  if (r.best) in.dual = r.dual;
  const std::string svg = plot_svg(in);
  if (cfg.svg.empty()) {
    out << svg;
    return kOk;
  }
  std::ofstream f(cfg.svg);
  if (!f) throw ParseError("cannot write " + cfg.svg);
  f << svg;
  long regions = 0;
  for (std::size_t at = svg.find("class=\"valid-region\""); at != std::string::npos;
       at = svg.find("class=\"valid-region\"", at + 1))
    ++regions;
  Json j{{"status", "ok"}, {"svg", cfg.svg}, {"k", *cfg.k}, {"orientation", orientation_name(in.orientation)},
         {"valid_regions", regions}};
  if (r.best) j["line"] = line_json(r.best->line);
  out << j.dump() << '\n';
  return kOk;
}

}  // namespace sepkit::cli
