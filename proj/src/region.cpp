#include "rclab/region.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rclab/errors.hpp"

namespace rclab {

namespace {

constexpr int kRejectionCap = 10000;

void require_ambient(const Manifold& m, const Point& p, const char* what) {
  if (p.size() != m.ambient_size())
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(m.ambient_size()) +
                                " coordinates, got " + std::to_string(p.size()));
}

Point exp_radius(const Manifold& m, const Point& center, double radius, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  TangentVec dir = random_unit_tangent(m, center, rng);
  double r = radius * std::pow(uni(rng), 1.0 / m.dim());
  dir.vec *= r;
  return m.exp(dir);
}

}  // namespace

Region Region::ball(Manifold m, Point center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball: radius must be positive");
  m.validate(center);
  Region r(Kind::Ball, std::move(m));
  r.oracle_ = [center, radius](const Region& self, const Point& x) {
    return self.m_.dist(center, x) <= radius + self.delta_;
  };
  r.sampler_ = [center, radius](const Region& self, Rng& rng) {
    return exp_radius(self.m_, center, radius, rng);
  };
  return r;
}

Region Region::cap(Manifold m, Point center, double radius) {
  if (m.kind() != ManifoldKind::Sphere)
    throw std::invalid_argument("cap: defined on the embedded sphere only");
  if (!(radius > 0) || radius >= M_PI)
    throw std::invalid_argument("cap: radius must lie in (0, pi)");
  Region r = ball(std::move(m), std::move(center), radius);
  r.kind_ = Kind::Cap;
  return r;
}

Region Region::hemisphere(Manifold m, Point pole) {
  if (m.kind() != ManifoldKind::Sphere)
    throw std::invalid_argument("hemisphere: defined on the embedded sphere only");
  m.validate(pole);
  Region r(Kind::Hemisphere, std::move(m));
  r.oracle_ = [pole](const Region& self, const Point& x) {
    return self.m_.dist(pole, x) < M_PI / 2 + self.delta_;
  };
  r.sampler_ = [pole](const Region& self, Rng& rng) {
    for (int k = 0; k < kRejectionCap; ++k) {
      Point x = random_point(self.m_, rng);
      double d = pole.coords.dot(x.coords);
      if (d > 0) return x;
      if (d < 0) return Point(Vec(-x.coords));
    }
    throw SamplerExhausted("hemisphere sampler: rejection cap hit");
  };
  return r;
}

Region Region::halfspace(Manifold m, Vec normal, double offset) {
  if (m.kind() != ManifoldKind::Euclidean)
    throw std::invalid_argument("halfspace: defined on euclidean space only");
  if (normal.size() != m.ambient_size())
    throw std::invalid_argument("halfspace: normal has wrong dimension");
  double n = normal.norm();
  if (!(n > 0)) throw std::invalid_argument("halfspace: normal must be nonzero");
  normal /= n;
  offset /= n;
  Region r(Kind::Halfspace, std::move(m));
  r.oracle_ = [normal, offset](const Region& self, const Point& x) {
    return normal.dot(x.coords) <= offset + self.delta_;
  };
  r.sampler_ = [normal, offset](const Region& self, Rng& rng) {
    // Reflect the violating half of a covering draw across the boundary plane.
    Point x = random_point(self.m_, rng);
    double s = normal.dot(x.coords) - offset;
    if (s <= 0) return x;
    return Point(Vec(x.coords - 2.0 * s * normal));
  };
  return r;
}

Region Region::finite_set(Manifold m, std::vector<Point> pts) {
  if (pts.empty()) throw std::invalid_argument("finite_set: needs at least one point");
  for (const Point& p : pts) m.validate(p);
  Region r(Kind::FiniteSet, std::move(m));
  r.points_ = std::move(pts);
  r.oracle_ = [](const Region& self, const Point& x) {
    for (const Point& p : self.points_)
      if (self.m_.dist(p, x) <= self.delta_) return true;
    return false;
  };
  r.sampler_ = [](const Region& self, Rng& rng) {
    std::uniform_int_distribution<size_t> pick(0, self.points_.size() - 1);
    return self.points_[pick(rng)];
  };
  return r;
}

Region Region::geodesic_arc(Manifold m, Point a, Point b) {
  if (m.kind() != ManifoldKind::Sphere || m.dim() != 2)
    throw std::invalid_argument("geodesic_arc: defined on sphere:2 only");
  m.validate(a);
  m.validate(b);
  double ang = m.dist(a, b);
  if (ang <= m.tolerances().point || ang >= M_PI - m.tolerances().cut_locus)
    throw std::invalid_argument("geodesic_arc: endpoints must be distinct and non-antipodal");
  Eigen::Vector3d av = a.coords, bv = b.coords;
  Eigen::Vector3d nhat = av.cross(bv).normalized();
  Eigen::Vector3d chat = nhat.cross(av);  // in-plane direction at angle +pi/2 from a

  Region r(Kind::Custom, std::move(m));
  r.oracle_ = [av, nhat, chat, ang](const Region& self, const Point& x) {
    Eigen::Vector3d q = x.coords;
    // Distance to the full great circle is |asin(<q, n>)|; within the swept
    // angle that is the arc distance, otherwise the nearest endpoint wins.
    Eigen::Vector3d w = q - q.dot(nhat) * nhat;
    double d;
    if (w.norm() < 1e-12) {
      d = M_PI / 2;
    } else {
      double alpha = std::atan2(w.dot(chat), w.dot(av));
      if (alpha >= 0 && alpha <= ang) {
        d = std::abs(std::asin(std::clamp(q.dot(nhat), -1.0, 1.0)));
      } else {
        Point pa{Vec(av)};
        Point pb{Vec(av * std::cos(ang) + chat * std::sin(ang))};
        d = std::min(self.m_.dist(pa, x), self.m_.dist(pb, x));
      }
    }
    return d <= self.delta_;
  };
  r.sampler_ = [av, chat, ang](const Region&, Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, ang);
    double t = uni(rng);
    return Point(Vec(av * std::cos(t) + chat * std::sin(t)));
  };
  return r;
}

Region Region::union_of(std::vector<Region> parts) {
  if (parts.empty()) throw std::invalid_argument("union: needs at least one part");
  for (size_t i = 1; i < parts.size(); ++i)
    if (!parts[i].manifold().same_space(parts[0].manifold()))
      throw std::invalid_argument("union: parts live on different manifolds");
  Region r(Kind::Union, parts[0].m_);
  r.children_ = std::move(parts);
  r.oracle_ = [](const Region& self, const Point& x) {
    for (const Region& c : self.children_)
      if (c.contains(x)) return true;
    return false;
  };
  r.sampler_ = [](const Region& self, Rng& rng) {
    std::uniform_int_distribution<size_t> pick(0, self.children_.size() - 1);
    return self.children_[pick(rng)].sample(rng);
  };
  return r;
}

Region Region::intersection_of(std::vector<Region> parts) {
  if (parts.empty()) throw std::invalid_argument("intersect: needs at least one part");
  for (size_t i = 1; i < parts.size(); ++i)
    if (!parts[i].manifold().same_space(parts[0].manifold()))
      throw std::invalid_argument("intersect: parts live on different manifolds");
  Region r(Kind::Intersection, parts[0].m_);
  r.children_ = std::move(parts);
  r.oracle_ = [](const Region& self, const Point& x) {
    for (const Region& c : self.children_)
      if (!c.contains(x)) return false;
    return true;
  };
  r.sampler_ = [](const Region& self, Rng& rng) {
    for (int k = 0; k < kRejectionCap; ++k) {
      Point x = self.children_[0].sample(rng);
      bool ok = true;
      for (size_t i = 1; i < self.children_.size() && ok; ++i) ok = self.children_[i].contains(x);
      if (ok) return x;
    }
    throw SamplerExhausted("intersection sampler: rejection cap hit after " +
                           std::to_string(kRejectionCap) + " draws");
  };
  return r;
}

Region Region::custom(Manifold m, Oracle oracle, Sampler sampler) {
  if (!oracle || !sampler) throw std::invalid_argument("custom: oracle and sampler are required");
  Region r(Kind::Custom, std::move(m));
  r.oracle_ = std::move(oracle);
  r.sampler_ = std::move(sampler);
  return r;
}

bool Region::contains(const Point& x) const {
  require_ambient(m_, x, "contains");
  return oracle_(*this, x);
}

Point Region::sample(Rng& rng) const {
  return sampler_(*this, rng);
}

void Region::set_boundary_tol(double delta) {
  if (!(delta >= 0)) throw std::invalid_argument("boundary_tol must be nonnegative");
  delta_ = delta;
  for (Region& c : children_) c.set_boundary_tol(delta);
}

namespace {

struct Tokenizer {
  std::string s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  // A token runs to whitespace, comma, or either paren.
  std::string next() {
    skip_ws();
    if (i >= s.size()) throw std::invalid_argument("region spec: unexpected end of input");
    if (s[i] == '(' || s[i] == ')') return std::string(1, s[i++]);
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',' &&
           s[i] != '(' && s[i] != ')')
      ++i;
    return s.substr(start, i - start);
  }
  double number(const char* what) {
    std::string t = next();
    try {
      size_t used = 0;
      double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("region spec: expected number for ") + what +
                                  ", got '" + t + "'");
    }
  }
};

Point parse_coords(Tokenizer& tok, int n, const char* what) {
  Vec v(n);
  for (int k = 0; k < n; ++k) v[k] = tok.number(what);
  return Point(std::move(v));
}

Region parse_region(const Manifold& m, Tokenizer& tok) {
  std::string head = tok.next();
  if (head == "union" || head == "intersect") {
    if (tok.next() != "(")
      throw std::invalid_argument("region spec: expected '(' after " + head);
    std::vector<Region> parts;
    while (tok.peek() != ')') parts.push_back(parse_region(m, tok));
    tok.next();  // ')'
    return head == "union" ? Region::union_of(std::move(parts))
                           : Region::intersection_of(std::move(parts));
  }
  int n = m.ambient_size();
  if (head == "ball") {
    Point c = parse_coords(tok, n, "ball center");
    return Region::ball(m, std::move(c), tok.number("ball radius"));
  }
  if (head == "cap") {
    Point c = parse_coords(tok, n, "cap center");
    return Region::cap(m, std::move(c), tok.number("cap radius"));
  }
  if (head == "hemisphere") return Region::hemisphere(m, parse_coords(tok, n, "hemisphere pole"));
  if (head == "halfspace") {
    Point nrm = parse_coords(tok, n, "halfspace normal");
    return Region::halfspace(m, nrm.coords, tok.number("halfspace offset"));
  }
  if (head == "points") return Region::finite_set(m, read_points_file(tok.next()));
  throw std::invalid_argument("region spec: unknown region '" + head + "'");
}

}  // namespace

Region Region::parse(const Manifold& m, const std::string& spec) {
  Tokenizer tok{spec};
  Region r = parse_region(m, tok);
  if (!tok.done())
    throw std::invalid_argument("region spec: trailing input after '" + spec.substr(0, tok.i) + "'");
  return r;
}

}  // namespace rclab
