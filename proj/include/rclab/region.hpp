#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rclab/manifold.hpp"
#include "rclab/sampling.hpp"

namespace rclab {

// A subset of a manifold given by a membership oracle and a seeded sampler of
// member points. Membership is delta-inflated: points within boundary_tol of
// the analytic boundary count as inside, so refutations must miss by more
// than the tolerance.
class Region {
 public:
  enum class Kind { Ball, Cap, Hemisphere, Halfspace, FiniteSet, Union, Intersection, Custom };

  using Oracle = std::function<bool(const Region&, const Point&)>;
  using Sampler = std::function<Point(const Region&, Rng&)>;

  static Region ball(Manifold m, Point center, double radius);       // geodesic ball
  static Region cap(Manifold m, Point center, double radius);        // spherical cap
  static Region hemisphere(Manifold m, Point pole);                  // open half sphere
  static Region halfspace(Manifold m, Vec normal, double offset);    // <n,x> <= offset
  static Region finite_set(Manifold m, std::vector<Point> pts);
  static Region geodesic_arc(Manifold m, Point a, Point b);          // minimizing arc on the 2-sphere
  static Region union_of(std::vector<Region> parts);
  static Region intersection_of(std::vector<Region> parts);
  static Region custom(Manifold m, Oracle oracle, Sampler sampler);

  // Mini-language: ball <center> <r> | cap <center> <r> | hemisphere <pole> |
  // halfspace <normal> <offset> | points <file> | union(...) | intersect(...)
  static Region parse(const Manifold& m, const std::string& spec);

  bool contains(const Point& x) const;
  Point sample(Rng& rng) const;  // throws SamplerExhausted past the retry cap

  const Manifold& manifold() const { return m_; }
  Kind kind() const { return kind_; }
  double boundary_tol() const { return delta_; }
  void set_boundary_tol(double delta);  // propagates to nested parts
  const std::vector<Region>& parts() const { return children_; }
  const std::vector<Point>& points() const { return points_; }  // finite sets

 private:
  Region(Kind k, Manifold m) : kind_(k), m_(std::move(m)) {}

  Kind kind_;
  Manifold m_;
  double delta_ = 1e-7;
  std::vector<Region> children_;
  std::vector<Point> points_;
  Oracle oracle_;
  Sampler sampler_;
};

}  // namespace rclab
