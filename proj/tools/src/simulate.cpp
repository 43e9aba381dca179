#include "commands.hpp"

#include "sepkit_cli/cli.hpp"

#include "sepkit/errors.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>

namespace sepkit::cli {

namespace {

struct StreamOp {
  std::string op;
  Color color = Color::Red;
  std::optional<LineR2> line;
  std::optional<PointR2> point;
  std::optional<int> id;
  std::optional<long> delete_at;
  std::optional<int> k;
};

Rat rat_field(const Json& j, const char* key) {
  const Json& v = j.at(key);
  return v.is_string() ? parse_rat(v.get<std::string>()) : parse_rat(v.dump());
}

StreamOp parse_op(const std::string& text, long line_no) {
  const std::string where = "stream line " + std::to_string(line_no) + ": ";
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + e.what());
  }
  try {
    StreamOp op;
    op.op = j.at("op").get<std::string>();
    if (j.contains("id")) op.id = j.at("id").get<int>();
    if (op.op == "insert") {
      const std::string c = j.at("color").get<std::string>();
      if (c != "R" && c != "B") throw ParseError(where + "color must be R or B");
      op.color = c == "R" ? Color::Red : Color::Blue;
      if (j.contains("m")) op.line = LineR2{rat_field(j, "m"), rat_field(j, "c")};
      if (j.contains("x")) op.point = PointR2{rat_field(j, "x"), rat_field(j, "y")};
      if (op.line.has_value() == op.point.has_value()) throw ParseError(where + "insert needs m,c or x,y");
      if (j.contains("delete_at") && !j.at("delete_at").is_null()) op.delete_at = j.at("delete_at").get<long>();
    } else if (op.op == "delete") {
      if (!op.id) throw ParseError(where + "delete needs an id");
    } else if (op.op == "query") {
      if (j.contains("k")) op.k = j.at("k").get<int>();
    } else {
      throw ParseError(where + "unknown op " + op.op);
    }
    return op;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + e.what());
  }
}

// One maintained structure.  The driver checks ids and the deletion
// schedule before any update reaches it.
class Simulation {
 public:
  virtual ~Simulation() = default;
  virtual void insert(const StreamOp& op, int id) = 0;
  virtual void erase(int id) = 0;
  virtual Json result(std::optional<int> k) = 0;
  // Empty when the static solver agrees.
  virtual std::optional<std::string> verify(std::optional<int> k) = 0;
};

PointR2 need_point(const StreamOp& op) {
  if (!op.point) throw ParseError("this problem takes points (x, y)");
  return *op.point;
}

bool both_colors(const std::vector<LabeledPoint>& pts) {
  bool red = false, blue = false;
  for (const auto& p : pts) (p.color == Color::Red ? red : blue) = true;
  return red && blue;
}

// Dual constraints; points are taken in the BlueAbove orientation.
class LineSim : public Simulation {
 public:
  explicit LineSim(std::optional<int> k) : k_(k) {
    DynOptions opt;
    opt.k = k.value_or(0);
    opt.track_kmin = !k;
    lp_ = std::make_unique<DynLP>(std::vector<DynLine>{}, opt);
  }
  void insert(const StreamOp& op, int id) override {
    const LineR2 l = op.line ? *op.line : dualize_point(*op.point);
    lp_->insert(DynLine{l, op.color, id, op.delete_at});
  }
  void erase(int id) override { lp_->erase(id); }
  Json result(std::optional<int> k) override {
    if (!k) k = k_;
    if (k) {
      if (k_ && *k > *k_) throw ParseError("query budget exceeds --k");
      Json j = lp_json(lp_->query(*k));
      j["k"] = *k;
      return j;
    }
    const auto [kmin, r] = lp_->query_kmin();
    Json j = lp_json(r);
    j["k_min"] = kmin;
    return j;
  }
  std::optional<std::string> verify(std::optional<int> k) override {
    if (!k) k = k_;
    const ConstraintSet cs = lp_->live_set();
    if (k) {
      if (lp_->query(*k) == static_leftmost_valid(cs, *k)) return std::nullopt;
      return "leftmost valid point differs";
    }
    const auto dyn = lp_->query_kmin();
    const auto fix = static_min_violations(cs);
    if (dyn.first == fix.first && dyn.second == fix.second) return std::nullopt;
    return "k_min differs";
  }

 private:
  std::optional<int> k_;
  std::unique_ptr<DynLP> lp_;
};

class ApproxSim : public Simulation {
 public:
  ApproxSim(int k, const Rat& eps, const Rat& tol) : k_(k), eps_(eps), tol_(tol), dyn_({}, k, eps, tol) {}
  void insert(const StreamOp& op, int id) override {
    dyn_.insert(DynPoint{LabeledPoint{need_point(op), op.color, id}, op.delete_at});
  }
  void erase(int id) override { dyn_.erase(id); }
  Json result(std::optional<int>) override {
    const auto live = dyn_.live();
    Json j = approx_json(dyn_.report(), live, std::min<int>(k_, static_cast<int>(live.size())));
    if (!both_colors(live)) j["status"] = "empty_side";
    return j;
  }
  std::optional<std::string> verify(std::optional<int>) override {
    const auto live = dyn_.live();
    const ApproxReport& d = dyn_.report();
    if (!both_colors(live)) {
      if (d.separator) return "separator reported without both colors";
      return std::nullopt;
    }
    const ApproxReport s = solve_approx(live, k_, eps_, tol_);
    if (d.separator.has_value() != s.separator.has_value()) return "feasibility differs";
    if (!s.separator) return std::nullopt;
    if (d.approx_err != s.approx_err) return "approximate error differs";
    if (d.separator->line != s.separator->line || d.separator->orientation != s.separator->orientation)
      return "separator differs";
    return std::nullopt;
  }

 private:
  int k_;
  Rat eps_, tol_;
  DynApprox dyn_;
};

class StripSim : public Simulation {
 public:
  void insert(const StreamOp& op, int id) override {
    const LabeledPoint p{need_point(op), op.color, id};
    dyn_.insert(p);
    live_[id] = p;
  }
  void erase(int id) override {
    dyn_.erase(id);
    live_.erase(id);
  }
  Json result(std::optional<int>) override { return strip_json(dyn_.result()); }
  std::optional<std::string> verify(std::optional<int>) override {
    std::vector<LabeledPoint> pts;
    for (const auto& [id, p] : live_) pts.push_back(p);
    if (dyn_.result().same_value(max_margin_static(pts))) return std::nullopt;
    return "strip differs";
  }

 private:
  DynMargin dyn_;
  std::map<int, LabeledPoint> live_;
};

class LineSim1D : public Simulation {
 public:
  LineSim1D(const std::string& problem, std::optional<int> k, std::uint64_t seed)
      : problem_(problem), k_(k), tree_(seed) {}
  void insert(const StreamOp& op, int id) override {
    const Point1D p{need_point(op).x, op.color, id};
    tree_.insert(p);
    live_[id] = p;
  }
  void erase(int id) override {
    tree_.erase(id);
    live_.erase(id);
  }
  Json result(std::optional<int> k) override {
    const int b = budget(k);
    return result1d_json(tree_.query(b), problem_, b, tree_.min_mis());
  }
  std::optional<std::string> verify(std::optional<int> k) override {
    std::vector<Point1D> pts;
    for (const auto& [id, p] : live_) pts.push_back(p);
    if (tree_.query(budget(k)) == oracle_1d(pts, budget(k))) return std::nullopt;
    return "1d optimum differs";
  }

 private:
  std::string problem_;
  std::optional<int> k_;
  Tree1D tree_;
  std::map<int, Point1D> live_;

  int budget(std::optional<int> k) const {
    if (k) return *k;
    if (problem_ == "minmax") return static_cast<int>(live_.size());
    if (problem_ == "minmis" || !k_) return tree_.min_mis();
    return *k_;
  }
};

std::unique_ptr<Simulation> make_simulation(const RunConfig& cfg) {
  if (cfg.dim == 1) return std::make_unique<LineSim1D>(cfg.problem, cfg.k, cfg.seed);
  if (cfg.problem == "minmis") return std::make_unique<LineSim>(cfg.k);
  if (cfg.problem == "kmm-approx") return std::make_unique<ApproxSim>(*cfg.k, *cfg.eps, cfg.tol);
  if (cfg.problem == "maxstrip") return std::make_unique<StripSim>();
  throw UsageError("no dynamic solver for " + cfg.problem + " in the plane; use minmis, kmm-approx or maxstrip");
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (cfg.input != "-") {
    file.open(cfg.input);
    if (!file) throw ParseError("cannot open " + cfg.input);
    in = &file;
  }
  auto sim = make_simulation(cfg);

  long u = 0;  // updates so far
  int next_id = 0;
  std::map<int, std::optional<long>> live;  // id -> promised deletion
  std::set<long> promised;
  std::string text;
  long line_no = 0;
  while (std::getline(*in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const StreamOp op = parse_op(text, line_no);
    Json row;
    std::optional<int> k;
    if (op.op == "query") {
      k = op.k;
      row["op"] = "query";
      if (k) row["k"] = *k;
    } else if (op.op == "insert") {
      const int id = op.id.value_or(next_id);
      if (live.count(id)) throw ScheduleViolation("id " + std::to_string(id) + " is already live");
      if (op.delete_at) {
        if (*op.delete_at <= u + 1) throw ScheduleViolation("deletion must come after the insertion");
        if (!promised.insert(*op.delete_at).second)
          throw ScheduleViolation("two deletions promised for update " + std::to_string(*op.delete_at));
      }
      sim->insert(op, id);
      live[id] = op.delete_at;
      next_id = std::max(next_id, id + 1);
      row["u"] = ++u;
      row["op"] = "insert";
      row["id"] = id;
    } else {
      const auto it = live.find(*op.id);
      if (it == live.end()) throw UnknownId("no live id " + std::to_string(*op.id));
      if (it->second && u + 1 < *it->second)
        throw ScheduleViolation("id " + std::to_string(*op.id) + " deleted at update " + std::to_string(u + 1) +
                                ", promised " + std::to_string(*it->second));
      sim->erase(*op.id);
      if (it->second) promised.erase(*it->second);
      live.erase(it);
      row["u"] = ++u;
      row["op"] = "delete";
      row["id"] = *op.id;
    }
    row.update(sim->result(k));
    if (cfg.verify) {
      if (auto bad = sim->verify(k)) {
        out << Json{{"status", "verify_failed"}, {"u", u}, {"detail", *bad}}.dump() << '\n';
        return kInvariant;
      }
      row["verified"] = true;
    }
    out << row.dump() << '\n';
  }
  return kOk;
}

}  // namespace sepkit::cli
