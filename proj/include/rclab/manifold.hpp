#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>

#include "rclab/errors.hpp"
#include "rclab/geometry.hpp"

namespace rclab {

enum class ManifoldKind { Euclidean, Sphere, Hyperbolic, Chart };

// Coordinate-chart metric: g(u) is a dim x dim SPD matrix written row-major.
// coeff_grad, when present, writes the dim matrices dg/du_k (k-major, each
// row-major); otherwise derivatives fall back to central differences of size
// fd_step. singular_band flags chart points the integrator must refuse;
// crossed flags a step that jumped over a singular set between two states.
struct ChartMetric {
  int dim = 0;
  std::function<void(std::span<const double>, double*)> coeff;
  std::function<void(std::span<const double>, double*)> coeff_grad;
  std::function<bool(std::span<const double>)> singular_band;
  std::function<bool(std::span<const double>, std::span<const double>)> crossed;
  double fd_step = 1e-5;

  // Unit sphere in colatitude/longitude coordinates: ds^2 = dtheta^2 + sin^2(theta) dphi^2,
  // with analytic derivatives and a singular band of width 1e-3 at both poles.
  static ChartMetric sphere2();
};

struct ChartConfig {
  int steps_per_unit = 256;     // fixed-step RK4 resolution
  double horizon = 8.0;         // refuse integrations beyond this arc length
  int shoot_max_iters = 64;
  double shoot_tol = 1e-10;     // endpoint residual, chart coordinates
  double shoot_basin = 3.2;     // coordinate-difference guesses only work this close
  Vec sample_lo, sample_hi;     // box for drawing random chart points
};

struct Tolerances {
  double point = 1e-9;       // representation invariant slack
  double chart = 1e-6;       // accuracy target of the chart pipeline
  double cut_locus = 1e-6;   // refusal margin around the cut locus
};

class GeodesicSegment;

class Manifold {
 public:
  static Manifold euclidean(int dim);
  static Manifold sphere(int dim);     // unit sphere embedded in R^{dim+1}
  static Manifold hyperbolic(int dim); // hyperboloid sheet in R^{dim+1}, last coordinate temporal
  static Manifold chart(ChartMetric metric);
  static Manifold chart_sphere2();
  // Accepts "euclidean:<n>", "sphere:<n>", "hyperbolic:<n>", "chart:sphere2".
  static Manifold from_spec(const std::string& spec);

  ManifoldKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int ambient_size() const;
  std::string spec_string() const;
  // pi on the sphere, +inf for the others.
  double cut_locus_distance() const;

  void validate(const Point& p) const;        // throws InvalidPoint
  void validate(const TangentVec& v) const;   // base validity plus tangency
  bool is_valid(const Point& p) const;

  double norm(const TangentVec& v) const;     // metric norm of the vector part

  Point exp(const TangentVec& v) const;
  TangentVec log(const Point& p, const Point& x) const;
  double dist(const Point& p, const Point& x) const;
  Point geodesic_point(const Point& x, const Point& y, double t) const;
  GeodesicSegment segment(const Point& x, const Point& y) const;

  // Chart-only entry points. exp/log on a chart manifold delegate here.
  Point integrate_geodesic(const TangentVec& v, double t) const;
  TangentVec shoot_log(const Point& p, const Point& x) const;

  Tolerances& tolerances() { return tol_; }
  const Tolerances& tolerances() const { return tol_; }
  ChartConfig& chart_config();
  const ChartConfig& chart_config() const;
  const ChartMetric& chart_metric() const;

  bool same_space(const Manifold& other) const;

 private:
  Manifold(ManifoldKind k, int dim);

  ManifoldKind kind_;
  int dim_;
  Tolerances tol_;
  std::shared_ptr<const ChartMetric> metric_;  // chart kind only
  ChartConfig chart_cfg_;
  bool sphere2_guess_ = false;  // closed-form initial guess for shooting
};

// Constant-speed geodesic ray gamma(t) = exp(t * initial).
class GeodesicSegment {
 public:
  GeodesicSegment(Manifold m, TangentVec initial);

  Point at(double t) const;
  const Point& start() const { return initial_.base; }
  const TangentVec& initial() const { return initial_; }
  double length() const;  // metric norm of the initial vector

 private:
  Manifold m_;
  TangentVec initial_;
};

// Conversions between the colatitude/longitude chart and the embedded unit
// sphere in R^3. Used to cross-check the chart pipeline against closed forms.
namespace sphere2_chart {
Point to_embedded(const Point& chart_pt);
Point from_embedded(const Point& sphere_pt);
TangentVec tangent_to_embedded(const TangentVec& chart_vec);
TangentVec tangent_from_embedded(const TangentVec& embedded_vec, const Point& chart_base);
}  // namespace sphere2_chart

}  // namespace rclab
