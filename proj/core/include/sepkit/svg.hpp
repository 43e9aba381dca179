#pragma once

#include "sepkit/geom.hpp"
#include "sepkit/levels.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace sepkit {

// Minimal SVG writer over a world box; y grows upward in world coordinates.
class SvgPanel {
 public:
  SvgPanel(BoundingBox world, double x_px, double y_px, double w_px, double h_px);

  void open(const std::string& id, const std::string& cls = "");
  void close();
  void polygon(const std::vector<PointR2>& pts, const std::string& cls, const std::string& attrs = "");
  void polyline(const std::vector<PointR2>& pts, const std::string& cls);
  void line(const LineR2& l, const std::string& cls);  // clipped to the box
  void dot(const PointR2& p, double r_px, const std::string& cls, const std::string& attrs = "");
  void frame(const std::string& title);
  std::string str() const;

 private:
  BoundingBox box_;
  double x_, y_, w_, h_;
  double sx_, sy_;
  std::ostringstream out_;
  double px(const Rat& x) const;
  double py(const Rat& y) const;
};

BoundingBox points_box(const std::vector<PointR2>& pts);

struct PlotInput {
  std::vector<LabeledPoint> points;
  int k = 0;
  Orientation orientation = Orientation::BlueAbove;  // dual panel
  std::optional<Separator> separator;
  std::optional<PointR2> dual;
};

// Two panels: the primal points with the separator, and the dual overlay
// with the valid regions shaded, the chains' lines and the halfway curve.
// Every valid polygon is a <polygon class="valid-region" data-face=..>.
std::string plot_svg(const PlotInput& in);

// The polygons plot_svg shades, face by face.
std::vector<std::vector<PointR2>> valid_region_polygons(const OverlayFaceMap& map);

}  // namespace sepkit
