#pragma once

// GeoJSON FeatureCollection support: rook/queen contiguity for the
// adjacency graph, point-in-polygon tract assignment, and polygon
// centroids. Features must carry a string tract id property.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carrisk {

enum class Contiguity { rook, queen };

struct TractShape {
  std::string tract_id;
  // One entry per polygon part; each part is its outer ring (holes are
  // ignored for contiguity and centroid purposes, kept for containment).
  std::vector<std::vector<std::array<double, 2>>> outer_rings;
  std::vector<std::vector<std::array<double, 2>>> hole_rings;
};

class TractShapes {
public:
  static TractShapes load(const std::string& path, const std::string& id_property);
  static TractShapes parse(const std::string& text, const std::string& id_property,
                           const std::string& name);

  const std::vector<TractShape>& shapes() const { return shapes_; }
  std::vector<std::string> tract_ids() const;

  // Queen: polygons share at least one boundary vertex.
  // Rook: polygons share a full edge segment.
  std::vector<std::pair<std::string, std::string>> contiguity_edges(Contiguity rule) const;

  // Tract containing the point (even-odd rule); first match in id order.
  std::optional<std::string> locate(double lon, double lat) const;

  // Area-weighted centroid of the tract's outer rings.
  std::pair<double, double> centroid(const std::string& tract_id) const;

private:
  std::vector<TractShape> shapes_;
};

// Writes the input FeatureCollection back out with extra per-tract
// numeric/string properties merged into each feature.
struct TractAnnotation {
  double p_mean;
  double alpha_mean;
  std::string tier;
};
std::string annotate_feature_collection(const std::string& geojson_text,
                                        const std::string& id_property,
                                        const std::vector<std::pair<std::string, TractAnnotation>>& values);

}  // namespace carrisk
