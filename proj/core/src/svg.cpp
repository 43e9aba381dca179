#include "sepkit/svg.hpp"

#include "sepkit/errors.hpp"
#include "sepkit/exact.hpp"
#include "sepkit/lpviol.hpp"

#include <algorithm>
#include <iomanip>

namespace sepkit {

SvgPanel::SvgPanel(BoundingBox world, double x_px, double y_px, double w_px, double h_px)
    : box_(std::move(world)), x_(x_px), y_(y_px), w_(w_px), h_(h_px) {
  sx_ = w_ / to_double(box_.xmax - box_.xmin);
  sy_ = h_ / to_double(box_.ymax - box_.ymin);
  out_ << std::fixed << std::setprecision(2);
}

// Coordinates are local to the nested <svg> element, which clips.
double SvgPanel::px(const Rat& x) const { return to_double(x - box_.xmin) * sx_; }
double SvgPanel::py(const Rat& y) const { return h_ - to_double(y - box_.ymin) * sy_; }

std::string SvgPanel::str() const {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << "<svg x=\"" << x_ << "\" y=\"" << y_ << "\" width=\"" << w_
    << "\" height=\"" << h_ << "\">\n"
    << out_.str() << "</svg>\n";
  return o.str();
}

void SvgPanel::open(const std::string& id, const std::string& cls) {
  out_ << "<g id=\"" << id << "\"";
  if (!cls.empty()) out_ << " class=\"" << cls << "\"";
  out_ << ">\n";
}

void SvgPanel::close() { out_ << "</g>\n"; }

void SvgPanel::polygon(const std::vector<PointR2>& pts, const std::string& cls, const std::string& attrs) {
  out_ << "<polygon class=\"" << cls << "\"" << attrs << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << px(pts[i].x) << "," << py(pts[i].y);
  out_ << "\"/>\n";
}

void SvgPanel::polyline(const std::vector<PointR2>& pts, const std::string& cls) {
  out_ << "<polyline class=\"" << cls << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << px(pts[i].x) << "," << py(pts[i].y);
  out_ << "\"/>\n";
}

void SvgPanel::line(const LineR2& l, const std::string& cls) {
  // clip y = mx + c to the box
  Rat xa = box_.xmin, xb = box_.xmax;
  if (l.m != 0) {
    Rat u = (box_.ymin - l.c) / l.m, v = (box_.ymax - l.c) / l.m;
    if (u > v) std::swap(u, v);
    xa = std::max(xa, u);
    xb = std::min(xb, v);
  } else if (l.c < box_.ymin || l.c > box_.ymax) {
    return;
  }
  if (xa > xb) return;
  out_ << "<line class=\"" << cls << "\" x1=\"" << px(xa) << "\" y1=\"" << py(l.at(xa)) << "\" x2=\"" << px(xb)
       << "\" y2=\"" << py(l.at(xb)) << "\"/>\n";
}

void SvgPanel::dot(const PointR2& p, double r_px, const std::string& cls, const std::string& attrs) {
  out_ << "<circle class=\"" << cls << "\"" << attrs << " cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"" << r_px
       << "\"/>\n";
}

void SvgPanel::frame(const std::string& title) {
  out_ << "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" << w_ << "\" height=\"" << h_ << "\"/>\n";
  out_ << "<text x=\"6\" y=\"16\">" << title << "</text>\n";
}

BoundingBox points_box(const std::vector<PointR2>& pts) {
  if (pts.empty()) return BoundingBox{-1, 1, -1, 1};
  BoundingBox b{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  Rat pad = std::max(b.xmax - b.xmin, b.ymax - b.ymin) / 8 + 1;
  return BoundingBox{b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

std::vector<std::vector<PointR2>> valid_region_polygons(const OverlayFaceMap& map) {
  std::vector<std::vector<PointR2>> out;
  for (std::size_t f = 0; f < map.faces.size(); ++f) {
    if (!map.faces[f].valid) continue;
    for (auto& poly : map.polygons(static_cast<int>(f)))
      if (poly.size() >= 3) out.push_back(std::move(poly));
  }
  return out;
}

namespace {

const char* kStyle =
    "<style>\n"
    ".frame{fill:none;stroke:#888}\n"
    ".red{fill:#c0392b}.blue{fill:#2e6fd8}\n"
    ".red-line{stroke:#c0392b;stroke-width:0.6;opacity:0.6}\n"
    ".blue-line{stroke:#2e6fd8;stroke-width:0.6;opacity:0.6}\n"
    ".face{fill:none;stroke:#bbb;stroke-width:0.3}\n"
    ".valid-region{fill:#5cb85c;fill-opacity:0.35;stroke:#3d8b3d;stroke-width:0.4}\n"
    ".curve{fill:none;stroke:#222;stroke-width:1.2;stroke-dasharray:4 2}\n"
    ".separator{stroke:#111;stroke-width:1.5}\n"
    ".chosen{fill:#f0ad4e;stroke:#111}\n"
    "text{font:12px sans-serif}\n"
    "</style>\n";

}  // namespace

std::string plot_svg(const PlotInput& in) {
  if (in.points.empty()) throw EmptyInput("nothing to plot");
  const ConstraintSet cs = dual_constraints(in.points, in.orientation);
  if (cs.red.empty() || cs.blue.empty()) throw EmptyColor("plot needs both colors");
  std::vector<LineR2> red, blue;
  for (const auto& c : cs.red) red.push_back(c.line);
  for (const auto& c : cs.blue) blue.push_back(c.line);
  const OverlayFaceMap map = overlay_and_label(red, blue, in.k);
  const MinMaxCurve curve = minmax_curve(red, blue);

  const double W = 520, H = 520, gap = 20;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * W + 3 * gap << "\" height=\"" << H + 2 * gap
      << "\">\n"
      << kStyle;

  std::vector<PointR2> raw;
  for (const auto& p : in.points) raw.push_back(p.point);
  SvgPanel primal(points_box(raw), gap, gap, W, H);
  primal.frame("points");
  primal.open("points");
  for (const auto& p : in.points)
    primal.dot(p.point, 3.5, p.color == Color::Red ? "red" : "blue", " data-id=\"" + std::to_string(p.id) + "\"");
  primal.close();
  primal.open("separator");
  if (in.separator) primal.line(in.separator->line, "separator");
  primal.close();
  svg << primal.str();

  SvgPanel dual(map.box, 2 * gap + W, gap, W, H);
  dual.frame(std::string("dual, k = ") + std::to_string(in.k) + ", " + orientation_name(in.orientation));
  dual.open("arrangement");
  for (std::size_t f = 0; f < map.faces.size(); ++f)
    for (const auto& poly : map.polygons(static_cast<int>(f)))
      if (poly.size() >= 3) dual.polygon(poly, "face");
  for (const auto& l : red) dual.line(l, "red-line");
  for (const auto& l : blue) dual.line(l, "blue-line");
  dual.close();
  dual.open("valid-regions");
  for (std::size_t f = 0; f < map.faces.size(); ++f) {
    if (!map.faces[f].valid) continue;
    for (const auto& poly : map.polygons(static_cast<int>(f)))
      if (poly.size() >= 3)
        dual.polygon(poly, "valid-region",
                     " data-face=\"" + std::to_string(f) + "\" data-mis=\"" + std::to_string(map.faces[f].mis) + "\"");
  }
  dual.close();
  dual.open("minmax-curve");
  std::vector<PointR2> path{{map.box.xmin, curve.at(map.box.xmin)}};
  for (const auto& v : curve.vertices)
    if (v.x > map.box.xmin && v.x < map.box.xmax) path.push_back(v);
  path.push_back({map.box.xmax, curve.at(map.box.xmax)});
  dual.polyline(path, "curve");
  dual.close();
  dual.open("chosen");
  if (in.dual) dual.dot(*in.dual, 4.5, "chosen");
  dual.close();
  svg << dual.str() << "</svg>\n";
  return svg.str();
}

}  // namespace sepkit
