#include "commands.hpp"

#include "sepkit/dataset.hpp"
#include "sepkit/errors.hpp"

#include <iostream>

namespace sepkit::cli {

std::vector<LabeledPoint> load_points(const RunConfig& cfg, bool general_position) {
  Dataset ds = cfg.input == "-" ? read_csv(std::cin) : read_dataset_file(cfg.input);
  IngestOptions opt;
  opt.perturb_eta = cfg.perturb;
  opt.allow_collinear = !general_position;
  return validate(ds, opt).points;
}

// One dimension reads the x column; y is ignored.
std::vector<Point1D> to_1d(const std::vector<LabeledPoint>& pts) {
  std::vector<Point1D> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(Point1D{p.point.x, p.color, p.id});
  return out;
}

Json line_json(const LineR2& l) { return Json{{"m", rat_str(l.m)}, {"c", rat_str(l.c)}}; }

namespace {

void put_value(Json& j, const Rat& max_sq) {
  j["max_sq"] = rat_str(max_sq);
  j["max"] = sqrt_decimal_str(max_sq);
}

void put_separator(Json& j, const Separator& s, const std::vector<LabeledPoint>& pts) {
  const MisReport m = classify_mis(s, pts);
  j["mis"] = m.mis;
  put_value(j, m.max_sq);
  j["line"] = line_json(s.line);
  j["orientation"] = orientation_name(s.orientation);
  j["misclassified_ids"] = m.misclassified_ids;
}

}  // namespace

Json exact_json(const ExactSolveReport& r, const std::vector<LabeledPoint>& pts, const std::string& problem, int k) {
  Json j;
  j["status"] = r.best ? "ok" : "infeasible";
  j["problem"] = problem;
  j["n"] = pts.size();
  j["k"] = k;
  j["k_min"] = r.k_min;
  if (r.best) {
    put_separator(j, *r.best, pts);
    j["kind"] = kind_name(r.kind);
  }
  j["counts"] = Json{{"a", r.counts[0]}, {"b", r.counts[1]}, {"c", r.counts[2]}, {"d", r.counts[3]}};
  j["valid_faces"] = r.valid_faces;
  j["separable"] = r.separable;
  j["tail_better"] = r.tail_better;
  if (r.tail_sq) j["tail_sq"] = rat_str(*r.tail_sq);
  return j;
}

Json approx_json(const ApproxReport& r, const std::vector<LabeledPoint>& pts, int k) {
  Json j;
  j["status"] = r.separator ? "ok" : "infeasible";
  j["problem"] = "kmm-approx";
  j["n"] = pts.size();
  j["k"] = k;
  j["k_min"] = r.k_min;
  if (r.separator) {
    put_separator(j, *r.separator, pts);
    j["approx_err"] = rat_str(r.approx_err);
    j["approx"] = decimal_str(r.approx_err);
    j["wedge"] = r.wedge;
  }
  j["eps"] = rat_str(r.eps);
  j["tol"] = rat_str(r.tol);
  j["t"] = r.t;
  j["decisions"] = r.decisions;
  j["wedges_pruned"] = r.wedges_pruned;
  return j;
}

Json strip_json(const StripResult& r) {
  Json j;
  j["problem"] = "maxstrip";
  j["status"] = r.status == StripStatus::Separable ? "ok" : r.status == StripStatus::NotSeparable ? "not_separable" : "empty_side";
  if (r.status != StripStatus::Separable) return j;
  j["width_sq"] = rat_str(r.width_sq);
  j["width"] = sqrt_decimal_str(r.width_sq);
  if (r.separator) {
    j["line"] = line_json(r.separator->line);
    j["orientation"] = orientation_name(r.separator->orientation);
  } else {
    j["line"] = nullptr;
  }
  j["middle"] = Json{{"a", rat_str(r.middle.a)}, {"b", rat_str(r.middle.b)}, {"c", rat_str(r.middle.c)}};
  j["red_ids"] = r.red_ids;
  j["blue_ids"] = r.blue_ids;
  return j;
}

Json result1d_json(const Result1D& r, const std::string& problem, int k, int k_min) {
  Json j;
  j["status"] = r.separator_x ? "ok" : "infeasible";
  j["problem"] = problem;
  j["dim"] = 1;
  j["k"] = k;
  j["k_min"] = k_min;
  if (r.separator_x) {
    j["mis"] = r.mis;
    j["separator_x"] = rat_str(*r.separator_x);
    j["max_dist"] = rat_str(r.max_dist);
    j["orientation"] = orientation_name(r.orientation);
  }
  return j;
}

Json lp_json(const LPResult& r) {
  Json j;
  j["lp_status"] = status_name(r.status);
  if (r.status == LPStatus::Feasible) {
    j["x"] = rat_str(r.point.x);
    j["y"] = rat_str(r.point.y);
    j["violations"] = r.violations;
  } else if (r.status == LPStatus::Unbounded) {
    j["reason"] = reason_name(r.reason);
  }
  return j;
}

Json oracle_json(const OracleReport& r, const std::vector<LabeledPoint>& pts, const std::string& problem, int k) {
  Json j;
  j["status"] = r.feasible && r.witness ? "ok" : "infeasible";
  j["problem"] = problem;
  j["n"] = pts.size();
  j["k"] = k;
  if (r.feasible && r.witness) put_separator(j, *r.witness, pts);
  j["candidates"] = r.candidates;
  j["skipped"] = r.skipped;
  return j;
}

}  // namespace sepkit::cli
