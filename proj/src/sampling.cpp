#include "rclab/sampling.hpp"

#include <cmath>

namespace rclab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec gaussian_vec(int n, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

Point random_point(const Manifold& m, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return Point(2.0 * gaussian_vec(m.dim(), rng));
    case ManifoldKind::Sphere: {
      Vec v = gaussian_vec(m.ambient_size(), rng);
      double r = v.norm();
      while (r < 1e-12) {
        v = gaussian_vec(m.ambient_size(), rng);
        r = v.norm();
      }
      return Point(v / r);
    }
    case ManifoldKind::Hyperbolic: {
      Vec origin = Vec::Zero(m.ambient_size());
      origin[m.ambient_size() - 1] = 1.0;
      Point o(origin);
      TangentVec v = random_tangent(m, o, 2.0, rng);
      return m.exp(v);
    }
    case ManifoldKind::Chart: {
      const ChartConfig& cfg = m.chart_config();
      if (cfg.sample_lo.size() != m.dim() || cfg.sample_hi.size() != m.dim())
        throw Error("chart manifold has no sampling box configured");
      std::uniform_real_distribution<double> ud(0.0, 1.0);
      Vec v(m.dim());
      for (int i = 0; i < m.dim(); ++i)
        v[i] = cfg.sample_lo[i] + (cfg.sample_hi[i] - cfg.sample_lo[i]) * ud(rng);
      return Point(std::move(v));
    }
  }
  throw Error("unreachable manifold kind");
}

TangentVec random_unit_tangent(const Manifold& m, const Point& base, Rng& rng) {
  const int n = m.ambient_size();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec w = gaussian_vec(n, rng);
    switch (m.kind()) {
      case ManifoldKind::Sphere:
        w -= base.coords.dot(w) * base.coords;
        break;
      case ManifoldKind::Hyperbolic: {
        const Eigen::Index last = n - 1;
        double q = w.head(last).dot(base.coords.head(last)) - w[last] * base.coords[last];
        w += q * base.coords;  // Minkowski projection onto the tangent space
        break;
      }
      default:
        break;
    }
    TangentVec v(base, std::move(w));
    double r = m.norm(v);
    if (r > 1e-9) {
      v.vec /= r;
      return v;
    }
  }
  throw Error("could not draw a unit tangent vector");
}

TangentVec random_tangent(const Manifold& m, const Point& base, double max_norm, Rng& rng) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  double r = max_norm * ud(rng);
  TangentVec v = random_unit_tangent(m, base, rng);
  v.vec *= r;
  return v;
}

double sampling_horizon(const Manifold& m) {
  double cut = m.cut_locus_distance();
  return std::isfinite(cut) ? 0.9 * cut : 3.0;
}

double sphere2_min_pole_distance(const TangentVec& chart_vec, double t) {
  TangentVec ve = sphere2_chart::tangent_to_embedded(chart_vec);
  double speed = ve.vec.norm();
  if (speed == 0.0) return std::acos(std::min(1.0, std::abs(ve.base[2])));
  // unit-speed z(s) = A cos(s) + B sin(s) on the embedded great circle
  double A = ve.base[2];
  double B = ve.vec[2] / speed;
  double L = speed * t;
  double zmax = std::max(std::abs(A), std::abs(A * std::cos(L) + B * std::sin(L)));
  double R = std::hypot(A, B);
  double psi = std::atan2(B, A);  // z is extremal at s = psi (mod pi)
  for (double s : {psi, psi + kPi, psi - kPi, psi + 2.0 * kPi}) {
    if (s >= 0.0 && s <= L) zmax = std::max(zmax, R);
  }
  return std::acos(std::min(1.0, zmax));
}

}  // namespace rclab
