#include "sepkit/dataset.hpp"

#include "sepkit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sepkit {

std::vector<LabeledPoint> Dataset::of_color(Color c) const {
  std::vector<LabeledPoint> out;
  for (const auto& p : points)
    if (p.color == c) out.push_back(p);
  return out;
}

std::size_t Dataset::count(Color c) const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [c](const LabeledPoint& p) { return p.color == c; }));
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Color parse_color(const std::string& s, int line) {
  std::string t = trim(s);
  if (t == "R" || t == "r" || t == "red") return Color::Red;
  if (t == "B" || t == "b" || t == "blue") return Color::Blue;
  throw ParseError("line " + std::to_string(line) + ": bad color '" + t + "'");
}

}  // namespace

Dataset read_csv(std::istream& in) {
  Dataset ds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (cells.size() != 3) throw ParseError("line " + std::to_string(lineno) + ": expected x,y,color");
    if (ds.points.empty() && cells[0] == "x" && cells[1] == "y") continue;
    LabeledPoint p;
    if (!try_parse_rat(cells[0], p.point.x) || !try_parse_rat(cells[1], p.point.y))
      throw ParseError("line " + std::to_string(lineno) + ": bad coordinate");
    p.color = parse_color(cells[2], lineno);
    p.id = static_cast<int>(ds.points.size());
    ds.points.push_back(p);
  }
  return ds;
}

Dataset read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw ParseError("json: expected {\"points\": [...]}");
  Dataset ds;
  int idx = 0;
  for (const auto& e : j["points"]) {
    ++idx;
    auto coord = [&](const char* key) {
      if (!e.contains(key)) throw ParseError("json point " + std::to_string(idx) + ": missing " + key);
      const auto& v = e[key];
      std::string s = v.is_string() ? v.get<std::string>() : v.dump();
      Rat r;
      if (!try_parse_rat(s, r)) throw ParseError("json point " + std::to_string(idx) + ": bad " + key);
      return r;
    };
    LabeledPoint p;
    p.point.x = coord("x");
    p.point.y = coord("y");
    if (!e.contains("c") || !e["c"].is_string()) throw ParseError("json point " + std::to_string(idx) + ": missing c");
    p.color = parse_color(e["c"].get<std::string>(), idx);
    p.id = e.contains("id") && e["id"].is_number_integer() ? e["id"].get<int>() : static_cast<int>(ds.points.size());
    ds.points.push_back(p);
  }
  return ds;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return read_json(in);
  return read_csv(in);
}

void write_csv(std::ostream& out, const Dataset& ds) {
  out << "x,y,color\n";
  for (const auto& p : ds.points) out << rat_str(p.point.x) << ',' << rat_str(p.point.y) << ',' << color_name(p.color) << '\n';
}

void write_json(std::ostream& out, const Dataset& ds) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : ds.points)
    arr.push_back({{"x", rat_str(p.point.x)}, {"y", rat_str(p.point.y)}, {"c", color_name(p.color)}, {"id", p.id}});
  out << nlohmann::json{{"points", arr}}.dump() << '\n';
}

bool has_collinear_triple(const std::vector<PointR2>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    // direction classes from pts[i]; slope, with vertical as its own class
    std::set<Rat> slopes;
    int vertical = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Rat dx = pts[j].x - pts[i].x;
      if (dx == 0) {
        if (++vertical > 1) return true;
        continue;
      }
      if (!slopes.insert(Rat((pts[j].y - pts[i].y) / dx)).second) return true;
    }
  }
  return false;
}

Dataset validate(const Dataset& ds, const IngestOptions& opt) {
  Dataset out = ds;
  std::set<int> ids;
  for (auto& p : out.points) {
    if (!ids.insert(p.id).second) throw ParseError("duplicate id " + std::to_string(p.id));
    if (opt.perturb_eta) {
      Rat i(p.id);
      p.point.x += i * *opt.perturb_eta;
      p.point.y += i * i * *opt.perturb_eta;
    }
  }
  std::map<std::pair<Rat, Rat>, int> seen;
  for (const auto& p : out.points) {
    auto [it, fresh] = seen.emplace(std::make_pair(p.point.x, p.point.y), p.id);
    if (!fresh)
      throw GeneralPosition("points " + std::to_string(it->second) + " and " + std::to_string(p.id) + " coincide");
  }
  if (!opt.allow_collinear) {
    std::vector<PointR2> pts;
    for (const auto& p : out.points) pts.push_back(p.point);
    if (has_collinear_triple(pts)) throw GeneralPosition("three input points are collinear");
  }
  return out;
}

}  // namespace sepkit
