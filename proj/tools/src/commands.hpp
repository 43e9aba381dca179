#pragma once

#include "sepkit/approx.hpp"
#include "sepkit/exact.hpp"
#include "sepkit/geom.hpp"
#include "sepkit/hull.hpp"
#include "sepkit/lpviol.hpp"
#include "sepkit/oracle.hpp"
#include "sepkit/sep1d.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sepkit::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string mode;
  std::string problem = "kmm";
  int dim = 2;
  std::optional<int> k;
  std::optional<Rat> eps;
  Rat tol = default_tol();
  std::uint64_t seed = 1;
  std::optional<Rat> perturb;
  std::string input;
  std::string output;
  std::string svg;
  bool verify = false;
  // bench only
  std::vector<int> sizes{100, 200, 400};
  int reps = 1;
};

// Raised for flag combinations the parser cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<LabeledPoint> load_points(const RunConfig& cfg, bool general_position);
std::vector<Point1D> to_1d(const std::vector<LabeledPoint>& pts);

Json line_json(const LineR2& l);
Json exact_json(const ExactSolveReport& r, const std::vector<LabeledPoint>& pts, const std::string& problem, int k);
Json approx_json(const ApproxReport& r, const std::vector<LabeledPoint>& pts, int k);
Json strip_json(const StripResult& r);
Json result1d_json(const Result1D& r, const std::string& problem, int k, int k_min);
Json lp_json(const LPResult& r);
Json oracle_json(const OracleReport& r, const std::vector<LabeledPoint>& pts, const std::string& problem, int k);

// Each returns the exit code.  Reports are written to `out`.
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_bench(const RunConfig& cfg, std::ostream& out);
int cmd_plot(const RunConfig& cfg, std::ostream& out);

}  // namespace sepkit::cli
