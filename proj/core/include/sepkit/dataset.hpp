#pragma once

#include "sepkit/geom.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sepkit {

struct Dataset {
  std::vector<LabeledPoint> points;

  std::vector<LabeledPoint> of_color(Color c) const;
  std::size_t count(Color c) const;
};

struct IngestOptions {
  // When set, point with id i is shifted by (i·eta, i²·eta) before validation.
  std::optional<Rat> perturb_eta;
  bool allow_collinear = false;
};

// CSV rows "x,y,color"; blank lines and '#' comments skipped, an optional
// "x,y,color" header is accepted.  Ids are assigned 0.. in file order.
Dataset read_csv(std::istream& in);
Dataset read_json(std::istream& in);
Dataset read_dataset_file(const std::string& path);
void write_csv(std::ostream& out, const Dataset& ds);
void write_json(std::ostream& out, const Dataset& ds);

// Rejects duplicate points and, unless allowed, collinear triples.
// Returns the (possibly perturbed) dataset.
Dataset validate(const Dataset& ds, const IngestOptions& opt = {});

// True when some three points are collinear; O(n² log n).
bool has_collinear_triple(const std::vector<PointR2>& pts);

}  // namespace sepkit
