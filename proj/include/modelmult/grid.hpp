#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "modelmult/polynomial.hpp"

namespace modelmult {

/// A radial ray {r e^{2 pi i angle}} sampled at increasing radii. `index`
/// holds the position of each sample in the owning grid's point list.
struct Ray {
  double angle_turns = 0.0;
  std::vector<double> radii;
  std::vector<std::size_t> index;
};

/// Deterministic sampling set in the open unit disk.
///
/// Points are stored in a fixed order (origin, circles by increasing radius
/// and angle, then rays) so sweeps over the grid produce reproducible
/// reports. The first ray is the designated growth ray.
class DiskGrid {
 public:
  /// Origin, circles r_k = 1 - 2^{-k} (k = 1..max_k) with `angles` samples
  /// each, and one ray per entry of `ray_angles` through the same radii.
  static DiskGrid dyadic(int max_k = 12, int angles = 256,
                         const std::vector<double>& ray_angles = {0.0});
  /// Origin and circles of radius j / n_radii, j = 1..n_radii-1, plus a ray
  /// at angle 0 through those radii.
  static DiskGrid polar(int n_radii, int angles);
  /// Arbitrary interior points; no rays unless added.
  static DiskGrid explicit_points(std::vector<cplx> points);

  /// Appends a ray; radii must be increasing and inside (0, 1).
  DiskGrid& add_ray(double angle_turns, const std::vector<double>& radii);

  const std::vector<cplx>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Ray>& rays() const noexcept { return rays_; }

  nlohmann::json spec() const;
  static DiskGrid from_spec(const nlohmann::json& j);

 private:
  std::string kind_ = "explicit";
  nlohmann::json params_ = nlohmann::json::object();
  std::vector<cplx> points_;
  std::vector<Ray> rays_;
};

/// Sample points on the real line.
struct LineGrid {
  std::vector<double> xs;
  std::string kind = "explicit";
  nlohmann::json params = nlohmann::json::object();

  static LineGrid uniform(double a, double b, int n);
  nlohmann::json spec() const;
};

/// Growth detection along a ray. The running sup of the sampled quantity is
/// compared with its value `window` dyadic steps earlier; growth is flagged
/// when the ratio exceeds `factor`.
struct GrowthRule {
  int window = 4;
  double factor = 4.0;

  nlohmann::json spec() const;
};

struct GrowthAssessment {
  bool detected = false;
  double window_factor = 0.0;     // running sup now / running sup `window` steps back
  double last_step_factor = 0.0;  // running sup now / running sup one step back
  std::vector<double> running_sup;
};

/// Values must be ordered by increasing radius. Fewer than window+1 values
/// never trigger detection.
GrowthAssessment assess_growth(const std::vector<double>& ray_values, const GrowthRule& rule);

}  // namespace modelmult
