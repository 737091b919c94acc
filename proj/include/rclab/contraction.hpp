#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rclab/manifold.hpp"

namespace rclab {

// How to pick the initial direction from the center p toward a point x.
// Canonical mode takes the minimizing geodesic (refusing at the cut locus);
// table mode serves explicit per-point overrides and nothing else, which is
// how a choice function on the cut locus gets modeled.
class DirectionPolicy {
 public:
  static DirectionPolicy canonical();
  static DirectionPolicy table(std::vector<std::pair<Point, TangentVec>> overrides,
                               double match_tol = 1e-9);

  bool is_canonical() const { return canonical_; }

  // Direction vector v at p with exp_p(v) = x. Table mode throws
  // MissingOverride when x has no entry and InvalidOverride when the stored
  // vector does not actually reach x.
  TangentVec direction(const Manifold& m, const Point& p, const Point& x) const;

 private:
  DirectionPolicy() = default;

  bool canonical_ = true;
  std::vector<std::pair<Point, TangentVec>> overrides_;
  double match_tol_ = 1e-9;
};

// The lambda-radial contraction about a base point: x maps to the point a
// fraction lambda along the geodesic from the base toward x.
class ContractionMap {
 public:
  ContractionMap(Manifold m, Point base, double lambda,
                 DirectionPolicy policy = DirectionPolicy::canonical());

  const Manifold& manifold() const { return m_; }
  const Point& base() const { return base_; }
  double lambda() const { return lambda_; }
  const DirectionPolicy& policy() const { return policy_; }

  ContractionMap with_lambda(double lambda) const;

  TangentVec direction(const Point& x) const;
  Point contract(const Point& x) const;
  std::vector<Point> contract_set(std::span<const Point> pts) const;
  // Pointwise contraction preserving the order of the input samples.
  std::vector<Point> contract_curve(std::span<const Point> pts) const;

 private:
  Manifold m_;
  Point base_;
  double lambda_;
  DirectionPolicy policy_;
};

}  // namespace rclab
