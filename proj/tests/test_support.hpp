#pragma once

#include <cmath>

#include "rclab/geometry.hpp"

namespace rclab::testutil {

inline double max_abs_diff(const Vec& a, const Vec& b) {
  return (a - b).lpNorm<Eigen::Infinity>();
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Point pt3(double x, double y, double z) { return Point(vec3(x, y, z)); }
inline Point pt2(double x, double y) { return Point(vec2(x, y)); }

}  // namespace rclab::testutil
