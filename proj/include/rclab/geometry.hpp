#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rclab {

using Vec = Eigen::VectorXd;

// A manifold point in its ambient/chart representation. The owning Manifold
// decides what the coordinates mean and what invariants they must satisfy.
struct Point {
  Vec coords;

  Point() = default;
  explicit Point(Vec c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> xs) : coords(Eigen::Map<const Vec>(xs.begin(), static_cast<Eigen::Index>(xs.size()))) {}

  int size() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[i]; }
};

// Tangent vector anchored at a base point, same coordinate convention as Point.
struct TangentVec {
  Point base;
  Vec vec;

  TangentVec() = default;
  TangentVec(Point b, Vec v) : base(std::move(b)), vec(std::move(v)) {}
};

// Space-separated decimals at 17 significant digits, one point per line.
std::string format_coords(const Vec& v);
Point parse_point_line(const std::string& line);
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);
void write_points(std::ostream& out, std::span<const Point> pts);
void write_points_file(const std::string& path, std::span<const Point> pts);

}  // namespace rclab
