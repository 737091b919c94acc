#include "rclab/geometry.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rclab {

std::string format_coords(const Vec& v) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i) out += ' ';
    out += buf;
  }
  return out;
}

Point parse_point_line(const std::string& line) {
  std::istringstream ss(line);
  std::vector<double> xs;
  double x;
  while (ss >> x) xs.push_back(x);
  if (xs.empty()) throw std::invalid_argument("empty point line");
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
  return Point(std::move(v));
}

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  while (std::getline(in, line)) {
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank || line[0] == '#') continue;
    pts.push_back(parse_point_line(line));
  }
  return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open points file: " + path);
  return read_points(in);
}

void write_points(std::ostream& out, std::span<const Point> pts) {
  for (const Point& p : pts) out << format_coords(p.coords) << '\n';
}

void write_points_file(const std::string& path, std::span<const Point> pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_points(out, pts);
}

}  // namespace rclab
