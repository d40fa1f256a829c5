#include "modelmult/grid.hpp"

#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/numerics.hpp"

namespace modelmult {

using nlohmann::json;

DiskGrid DiskGrid::dyadic(int max_k, int angles, const std::vector<double>& ray_angles) {
  if (max_k < 1 || max_k > 52) throw DomainError("dyadic grid depth must lie in 1..52");
  if (angles < 1) throw DomainError("grid needs at least one angle per circle");
  DiskGrid g;
  g.kind_ = "dyadic";
  g.params_ = {{"max_k", max_k}, {"angles", angles}, {"ray_angles_turns", ray_angles}};
  g.points_.reserve(1 + static_cast<std::size_t>(max_k) * (angles + ray_angles.size()));
  g.points_.push_back(0.0);
  std::vector<double> radii;
  for (int k = 1; k <= max_k; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    radii.push_back(r);
    for (int j = 0; j < angles; ++j) {
      g.points_.push_back(r * from_turns(static_cast<double>(j) / angles));
    }
  }
  for (const double a : ray_angles) g.add_ray(a, radii);
  return g;
}

DiskGrid DiskGrid::polar(int n_radii, int angles) {
  if (n_radii < 2) throw DomainError("polar grid needs at least two radial divisions");
  if (angles < 1) throw DomainError("grid needs at least one angle per circle");
  DiskGrid g;
  g.kind_ = "polar";
  g.params_ = {{"n_radii", n_radii}, {"angles", angles}};
  g.points_.push_back(0.0);
  std::vector<double> radii;
  for (int j = 1; j < n_radii; ++j) {
    const double r = static_cast<double>(j) / n_radii;
    radii.push_back(r);
    for (int a = 0; a < angles; ++a) {
      g.points_.push_back(r * from_turns(static_cast<double>(a) / angles));
    }
  }
  g.add_ray(0.0, radii);
  return g;
}

DiskGrid DiskGrid::explicit_points(std::vector<cplx> points) {
  for (const cplx z : points) {
    if (!(std::abs(z) < 1.0)) throw DomainError("grid point outside the open unit disk");
  }
  DiskGrid g;
  g.kind_ = "explicit";
  g.points_ = std::move(points);
  return g;
}

DiskGrid& DiskGrid::add_ray(double angle_turns, const std::vector<double>& radii) {
  Ray ray;
  ray.angle_turns = angle_turns;
  double previous = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("ray radius outside [0, 1)");
    if (i > 0 && !(r > previous)) throw DomainError("ray radii must increase");
    previous = r;
    ray.radii.push_back(r);
    ray.index.push_back(points_.size());
    points_.push_back(r * from_turns(angle_turns));
  }
  rays_.push_back(std::move(ray));
  return *this;
}

json DiskGrid::spec() const {
  json j = {{"kind", kind_}, {"params", params_}, {"n_points", points_.size()}};
  json rays = json::array();
  for (const Ray& r : rays_) rays.push_back({{"angle_turns", r.angle_turns}, {"radii", r.radii}});
  j["rays"] = rays;
  if (kind_ == "explicit") {
    // Ray samples are appended after the base points and rebuilt from "rays".
    std::size_t n_ray = 0;
    for (const Ray& r : rays_) n_ray += r.radii.size();
    json pts = json::array();
    for (std::size_t i = 0; i + n_ray < points_.size(); ++i) {
      pts.push_back({points_[i].real(), points_[i].imag()});
    }
    j["points"] = pts;
  }
  return j;
}

DiskGrid DiskGrid::from_spec(const json& j) {
  const std::string kind = j.value("kind", std::string("dyadic"));
  const json params = j.value("params", json::object());
  DiskGrid g;
  if (kind == "dyadic") {
    std::vector<double> ray_angles = params.value("ray_angles_turns", std::vector<double>{0.0});
    g = dyadic(params.value("max_k", 12), params.value("angles", 256), ray_angles);
  } else if (kind == "polar") {
    g = polar(params.value("n_radii", 32), params.value("angles", 256));
  } else if (kind == "explicit") {
    std::vector<cplx> pts;
    for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    g = explicit_points(std::move(pts));
    for (const auto& r : j.value("rays", json::array())) {
      g.add_ray(r.at("angle_turns").get<double>(), r.at("radii").get<std::vector<double>>());
    }
    return g;
  } else {
    throw DomainError("unknown grid kind '" + kind + "'");
  }
  return g;
}

LineGrid LineGrid::uniform(double a, double b, int n) {
  if (n < 2 || !(b > a)) throw DomainError("uniform line grid needs n >= 2 and b > a");
  LineGrid g;
  g.kind = "uniform";
  g.params = {{"a", a}, {"b", b}, {"n", n}};
  g.xs.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return g;
}

json LineGrid::spec() const {
  json j = {{"kind", kind}, {"params", params}, {"n_points", xs.size()}};
  if (kind == "explicit") j["xs"] = xs;
  return j;
}

json GrowthRule::spec() const {
  return {{"window_steps", window}, {"factor", factor},
          {"rule", "running sup along the designated ray grows by more than `factor` over the "
                   "last `window_steps` radial steps"}};
}

GrowthAssessment assess_growth(const std::vector<double>& ray_values, const GrowthRule& rule) {
  if (rule.window < 1 || !(rule.factor > 0.0)) throw DomainError("invalid growth rule");
  GrowthAssessment out;
  double sup = 0.0;
  for (const double v : ray_values) {
    if (std::isfinite(v)) sup = std::max(sup, v);
    out.running_sup.push_back(sup);
  }
  const std::size_t n = out.running_sup.size();
  auto ratio = [](double now, double before) {
    if (before > 0.0) return now / before;
    return now > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  if (n >= 2) out.last_step_factor = ratio(out.running_sup[n - 1], out.running_sup[n - 2]);
  const std::size_t w = static_cast<std::size_t>(rule.window);
  if (n > w) {
    out.window_factor = ratio(out.running_sup[n - 1], out.running_sup[n - 1 - w]);
    out.detected = out.window_factor > rule.factor;
  }
  return out;
}

}  // namespace modelmult
