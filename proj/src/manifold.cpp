#include "rclab/manifold.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <sstream>

namespace rclab {

namespace {

constexpr int kMaxChartDim = 8;
constexpr double kPi = 3.14159265358979323846;

double clamp1(double x) { return std::min(1.0, std::max(-1.0, x)); }

// Minkowski form, last coordinate temporal.
double mink(const Vec& a, const Vec& b) {
  const Eigen::Index n = a.size() - 1;
  return a.head(n).dot(b.head(n)) - a[n] * b[n];
}

std::string coord_str(const Vec& v) {
  std::ostringstream ss;
  ss << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) ss << (i ? " " : "") << v[i];
  ss << ')';
  return ss.str();
}

}  // namespace

ChartMetric ChartMetric::sphere2() {
  ChartMetric m;
  m.dim = 2;
  m.coeff = [](std::span<const double> u, double* g) {
    double s = std::sin(u[0]);
    g[0] = 1.0;
    g[1] = 0.0;
    g[2] = 0.0;
    g[3] = s * s;
  };
  m.coeff_grad = [](std::span<const double> u, double* dg) {
    std::fill(dg, dg + 8, 0.0);
    dg[3] = std::sin(2.0 * u[0]);  // d/dtheta of sin^2(theta), entry (phi,phi)
  };
  m.singular_band = [](std::span<const double> u) {
    return std::abs(u[0]) < 1e-3 || std::abs(u[0] - kPi) < 1e-3;
  };
  m.crossed = [](std::span<const double> a, std::span<const double> b) {
    if (a[0] * b[0] < 0.0) return true;
    if ((a[0] - kPi) * (b[0] - kPi) < 0.0) return true;
    return false;
  };
  return m;
}

Manifold::Manifold(ManifoldKind k, int dim) : kind_(k), dim_(dim) {}

Manifold Manifold::euclidean(int dim) {
  if (dim < 1) throw std::invalid_argument("euclidean dimension must be >= 1");
  return Manifold(ManifoldKind::Euclidean, dim);
}

Manifold Manifold::sphere(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  return Manifold(ManifoldKind::Sphere, dim);
}

Manifold Manifold::hyperbolic(int dim) {
  if (dim < 1) throw std::invalid_argument("hyperbolic dimension must be >= 1");
  return Manifold(ManifoldKind::Hyperbolic, dim);
}

Manifold Manifold::chart(ChartMetric metric) {
  if (metric.dim < 1 || metric.dim > kMaxChartDim)
    throw std::invalid_argument("chart dimension must be in [1, 8]");
  if (!metric.coeff) throw std::invalid_argument("chart metric needs a coefficient function");
  Manifold m(ManifoldKind::Chart, metric.dim);
  m.metric_ = std::make_shared<const ChartMetric>(std::move(metric));
  return m;
}

Manifold Manifold::chart_sphere2() {
  Manifold m = chart(ChartMetric::sphere2());
  m.sphere2_guess_ = true;
  m.chart_cfg_.sample_lo = Vec(2);
  m.chart_cfg_.sample_hi = Vec(2);
  m.chart_cfg_.sample_lo << 0.35, -kPi;
  m.chart_cfg_.sample_hi << kPi - 0.35, kPi;
  return m;
}

Manifold Manifold::from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("manifold spec must look like kind:arg, got: " + spec);
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "chart") {
    if (arg == "sphere2") return chart_sphere2();
    throw std::invalid_argument("unknown chart: " + arg);
  }
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad dimension in manifold spec: " + spec);
  }
  if (kind == "euclidean") return euclidean(n);
  if (kind == "sphere") return sphere(n);
  if (kind == "hyperbolic") return hyperbolic(n);
  throw std::invalid_argument("unknown manifold kind: " + kind);
}

int Manifold::ambient_size() const {
  switch (kind_) {
    case ManifoldKind::Sphere:
    case ManifoldKind::Hyperbolic:
      return dim_ + 1;
    default:
      return dim_;
  }
}

std::string Manifold::spec_string() const {
  switch (kind_) {
    case ManifoldKind::Euclidean:
      return "euclidean:" + std::to_string(dim_);
    case ManifoldKind::Sphere:
      return "sphere:" + std::to_string(dim_);
    case ManifoldKind::Hyperbolic:
      return "hyperbolic:" + std::to_string(dim_);
    case ManifoldKind::Chart:
      return sphere2_guess_ ? "chart:sphere2" : "chart:custom";
  }
  return "unknown";
}

double Manifold::cut_locus_distance() const {
  if (kind_ == ManifoldKind::Sphere) return kPi;
  if (kind_ == ManifoldKind::Chart && sphere2_guess_) return kPi;
  return std::numeric_limits<double>::infinity();
}

bool Manifold::same_space(const Manifold& other) const {
  return kind_ == other.kind_ && dim_ == other.dim_;
}

void Manifold::validate(const Point& p) const {
  if (p.size() != ambient_size())
    throw InvalidPoint("point has " + std::to_string(p.size()) + " coordinates, expected " +
                       std::to_string(ambient_size()) + " on " + spec_string());
  if (!p.coords.allFinite())
    throw InvalidPoint("non-finite coordinates " + coord_str(p.coords));
  switch (kind_) {
    case ManifoldKind::Sphere: {
      double r = p.coords.norm();
      if (std::abs(r - 1.0) > tol_.point)
        throw InvalidPoint("sphere point off the unit sphere by " + std::to_string(r - 1.0) +
                           ": " + coord_str(p.coords));
      break;
    }
    case ManifoldKind::Hyperbolic: {
      double q = mink(p.coords, p.coords);
      if (std::abs(q + 1.0) > tol_.point || p.coords[p.size() - 1] <= 0.0)
        throw InvalidPoint("point off the hyperboloid sheet: " + coord_str(p.coords));
      break;
    }
    default:
      break;
  }
}

void Manifold::validate(const TangentVec& v) const {
  validate(v.base);
  if (static_cast<int>(v.vec.size()) != ambient_size())
    throw InvalidPoint("tangent vector has " + std::to_string(v.vec.size()) +
                       " coordinates, expected " + std::to_string(ambient_size()));
  if (!v.vec.allFinite()) throw InvalidPoint("non-finite tangent vector");
  double scale = std::max(1.0, v.vec.norm());
  if (kind_ == ManifoldKind::Sphere) {
    if (std::abs(v.base.coords.dot(v.vec)) > tol_.point * scale)
      throw InvalidPoint("vector not tangent to the sphere at its base point");
  } else if (kind_ == ManifoldKind::Hyperbolic) {
    if (std::abs(mink(v.base.coords, v.vec)) > tol_.point * scale)
      throw InvalidPoint("vector not tangent to the hyperboloid at its base point");
  }
}

bool Manifold::is_valid(const Point& p) const {
  try {
    validate(p);
    return true;
  } catch (const InvalidPoint&) {
    return false;
  }
}

double Manifold::norm(const TangentVec& v) const {
  switch (kind_) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Sphere:
      return v.vec.norm();
    case ManifoldKind::Hyperbolic:
      return std::sqrt(std::max(0.0, mink(v.vec, v.vec)));
    case ManifoldKind::Chart: {
      std::array<double, kMaxChartDim * kMaxChartDim> g{};
      metric_->coeff(std::span<const double>(v.base.coords.data(), dim_), g.data());
      double q = 0.0;
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) q += v.vec[i] * g[i * dim_ + j] * v.vec[j];
      return std::sqrt(std::max(0.0, q));
    }
  }
  return 0.0;
}

Point Manifold::exp(const TangentVec& v) const {
  validate(v);
  switch (kind_) {
    case ManifoldKind::Euclidean:
      return Point(v.base.coords + v.vec);
    case ManifoldKind::Sphere: {
      double th = v.vec.norm();
      if (th == 0.0) return v.base;
      double sc = th < 1e-8 ? 1.0 - th * th / 6.0 : std::sin(th) / th;
      Vec q = std::cos(th) * v.base.coords + sc * v.vec;
      q /= q.norm();
      return Point(std::move(q));
    }
    case ManifoldKind::Hyperbolic: {
      double th = std::sqrt(std::max(0.0, mink(v.vec, v.vec)));
      if (th == 0.0) return v.base;
      double sc = th < 1e-8 ? 1.0 + th * th / 6.0 : std::sinh(th) / th;
      Vec q = std::cosh(th) * v.base.coords + sc * v.vec;
      double r = std::sqrt(std::max(0.0, -mink(q, q)));
      if (r == 0.0) throw IntegrationDiverged("hyperbolic exp left the sheet");
      q /= r;
      return Point(std::move(q));
    }
    case ManifoldKind::Chart:
      return integrate_geodesic(v, 1.0);
  }
  throw Error("unreachable manifold kind");
}

TangentVec Manifold::log(const Point& p, const Point& x) const {
  validate(p);
  validate(x);
  switch (kind_) {
    case ManifoldKind::Euclidean:
      return TangentVec(p, x.coords - p.coords);
    case ManifoldKind::Sphere: {
      double dot = clamp1(p.coords.dot(x.coords));
      Vec u = x.coords - dot * p.coords;
      double s = u.norm();
      double d = std::atan2(s, dot);
      if (d > kPi - tol_.cut_locus)
        throw CutLocus("log undefined within " + std::to_string(tol_.cut_locus) +
                       " of the antipode (separation " + std::to_string(d) + ")");
      if (s < 1e-300) return TangentVec(p, Vec::Zero(p.size()));
      return TangentVec(p, u * (d / s));
    }
    case ManifoldKind::Hyperbolic: {
      double c = -mink(p.coords, x.coords);
      Vec u = x.coords - c * p.coords;
      double s = std::sqrt(std::max(0.0, mink(u, u)));
      if (s < 1e-300) return TangentVec(p, Vec::Zero(p.size()));
      double d = std::asinh(s);
      return TangentVec(p, u * (d / s));
    }
    case ManifoldKind::Chart:
      return shoot_log(p, x);
  }
  throw Error("unreachable manifold kind");
}

double Manifold::dist(const Point& p, const Point& x) const {
  validate(p);
  validate(x);
  switch (kind_) {
    case ManifoldKind::Euclidean:
      return (x.coords - p.coords).norm();
    case ManifoldKind::Sphere:
      // chord form of arccos(<p,x>); stable at both ends of [0, pi]
      return 2.0 * std::asin(std::min(1.0, 0.5 * (x.coords - p.coords).norm()));
    case ManifoldKind::Hyperbolic: {
      Vec dvec = x.coords - p.coords;
      double q = std::max(0.0, mink(dvec, dvec));
      return 2.0 * std::asinh(0.5 * std::sqrt(q));
    }
    case ManifoldKind::Chart: {
      if ((x.coords - p.coords).lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
      // one canonical orientation so dist(p,x) and dist(x,p) share a code path
      const Point* a = &p;
      const Point* b = &x;
      for (int i = 0; i < dim_; ++i) {
        if (p.coords[i] < x.coords[i]) break;
        if (p.coords[i] > x.coords[i]) {
          a = &x;
          b = &p;
          break;
        }
      }
      return norm(shoot_log(*a, *b));
    }
  }
  throw Error("unreachable manifold kind");
}

Point Manifold::geodesic_point(const Point& x, const Point& y, double t) const {
  TangentVec v = log(x, y);
  if (kind_ == ManifoldKind::Chart) return integrate_geodesic(v, t);
  return exp(TangentVec(x, t * v.vec));
}

GeodesicSegment Manifold::segment(const Point& x, const Point& y) const {
  return GeodesicSegment(*this, log(x, y));
}

ChartConfig& Manifold::chart_config() {
  if (kind_ != ManifoldKind::Chart) throw Error("chart_config on a non-chart manifold");
  return chart_cfg_;
}

const ChartConfig& Manifold::chart_config() const {
  if (kind_ != ManifoldKind::Chart) throw Error("chart_config on a non-chart manifold");
  return chart_cfg_;
}

const ChartMetric& Manifold::chart_metric() const {
  if (kind_ != ManifoldKind::Chart) throw Error("chart_metric on a non-chart manifold");
  return *metric_;
}

// ---------------------------------------------------------------------------
// Chart integration

namespace {

// Geodesic ODE right-hand side evaluated with stack scratch only.
struct ChartOde {
  const ChartMetric& cm;
  int d;
  double g[kMaxChartDim * kMaxChartDim];
  double dg[kMaxChartDim * kMaxChartDim * kMaxChartDim];
  double gp[kMaxChartDim * kMaxChartDim];
  double gm[kMaxChartDim * kMaxChartDim];
  double ush[kMaxChartDim];
  double b[kMaxChartDim];

  explicit ChartOde(const ChartMetric& metric) : cm(metric), d(metric.dim) {}

  void grads(const double* u) {
    if (cm.coeff_grad) {
      cm.coeff_grad(std::span<const double>(u, static_cast<size_t>(d)), dg);
      return;
    }
    const double h = cm.fd_step;
    for (int k = 0; k < d; ++k) {
      std::memcpy(ush, u, sizeof(double) * static_cast<size_t>(d));
      ush[k] = u[k] + h;
      cm.coeff(std::span<const double>(ush, static_cast<size_t>(d)), gp);
      ush[k] = u[k] - h;
      cm.coeff(std::span<const double>(ush, static_cast<size_t>(d)), gm);
      double* out = dg + k * d * d;
      for (int i = 0; i < d * d; ++i) out[i] = (gp[i] - gm[i]) / (2.0 * h);
    }
  }

  // out = -Gamma(u)(du, du); false when the metric solve breaks down
  bool accel(const double* u, const double* du, double* out) {
    cm.coeff(std::span<const double>(u, static_cast<size_t>(d)), g);
    grads(u);
    for (int l = 0; l < d; ++l) {
      double t1 = 0.0, t2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const double* dgi = dg + i * d * d;
        const double* dgl = dg + l * d * d;
        for (int j = 0; j < d; ++j) {
          t1 += du[i] * du[j] * dgi[j * d + l];
          t2 += du[i] * du[j] * dgl[i * d + j];
        }
      }
      b[l] = t1 - 0.5 * t2;
    }
    // solve g * a = b in place (partial-pivot elimination, d <= 8)
    double A[kMaxChartDim * kMaxChartDim];
    std::memcpy(A, g, sizeof(double) * static_cast<size_t>(d * d));
    for (int c = 0; c < d; ++c) {
      int best = c;
      double bestv = std::abs(A[c * d + c]);
      for (int r = c + 1; r < d; ++r) {
        double v = std::abs(A[r * d + c]);
        if (v > bestv) {
          bestv = v;
          best = r;
        }
      }
      if (!(bestv > 0.0) || !std::isfinite(bestv)) return false;
      if (best != c) {
        for (int cc = 0; cc < d; ++cc) std::swap(A[c * d + cc], A[best * d + cc]);
        std::swap(b[c], b[best]);
      }
      double pivval = A[c * d + c];
      for (int r = c + 1; r < d; ++r) {
        double f = A[r * d + c] / pivval;
        if (f == 0.0) continue;
        for (int cc = c; cc < d; ++cc) A[r * d + cc] -= f * A[c * d + cc];
        b[r] -= f * b[c];
      }
    }
    for (int r = d - 1; r >= 0; --r) {
      double s = b[r];
      for (int cc = r + 1; cc < d; ++cc) s -= A[r * d + cc] * out[cc];
      out[r] = s / A[r * d + r];
    }
    for (int i = 0; i < d; ++i) {
      out[i] = -out[i];
      if (!std::isfinite(out[i])) return false;
    }
    return true;
  }
};

}  // namespace

Point Manifold::integrate_geodesic(const TangentVec& v, double t) const {
  if (kind_ != ManifoldKind::Chart) throw Error("integrate_geodesic on a non-chart manifold");
  validate(v);
  if (!(t >= 0.0)) throw std::invalid_argument("integration parameter must be >= 0");

  const int d = dim_;
  const ChartConfig& cfg = chart_cfg_;
  const ChartMetric& cm = *metric_;
  double speed = norm(v);
  if (speed * t > cfg.horizon)
    throw IntegrationDiverged("arc length " + std::to_string(speed * t) +
                              " beyond integration horizon " + std::to_string(cfg.horizon));

  auto in_band = [&](const double* u) {
    return cm.singular_band && cm.singular_band(std::span<const double>(u, static_cast<size_t>(d)));
  };
  auto jumped = [&](const double* a, const double* bpt) {
    return cm.crossed && cm.crossed(std::span<const double>(a, static_cast<size_t>(d)),
                                    std::span<const double>(bpt, static_cast<size_t>(d)));
  };

  double y[2 * kMaxChartDim];
  for (int i = 0; i < d; ++i) {
    y[i] = v.base.coords[i];
    y[d + i] = v.vec[i];
  }
  if (in_band(y)) throw ChartSingularity("geodesic starts inside a singular band");
  if (t == 0.0) return v.base;

  const int steps = std::max(1, static_cast<int>(std::ceil(cfg.steps_per_unit * t)));
  const double h = t / steps;
  ChartOde ode(cm);

  double k1[2 * kMaxChartDim], k2[2 * kMaxChartDim], k3[2 * kMaxChartDim], k4[2 * kMaxChartDim];
  double stage[2 * kMaxChartDim], prev[kMaxChartDim];

  for (int s = 0; s < steps; ++s) {
    std::memcpy(prev, y, sizeof(double) * static_cast<size_t>(d));

    auto rhs = [&](const double* st, double* k) -> bool {
      for (int i = 0; i < d; ++i) k[i] = st[d + i];
      return ode.accel(st, st + d, k + d);
    };

    if (!rhs(y, k1)) throw IntegrationDiverged("metric solve failed during integration");
    for (int i = 0; i < 2 * d; ++i) stage[i] = y[i] + 0.5 * h * k1[i];
    if (in_band(stage)) throw ChartSingularity("geodesic entered a singular band");
    if (!rhs(stage, k2)) throw IntegrationDiverged("metric solve failed during integration");
    for (int i = 0; i < 2 * d; ++i) stage[i] = y[i] + 0.5 * h * k2[i];
    if (in_band(stage)) throw ChartSingularity("geodesic entered a singular band");
    if (!rhs(stage, k3)) throw IntegrationDiverged("metric solve failed during integration");
    for (int i = 0; i < 2 * d; ++i) stage[i] = y[i] + h * k3[i];
    if (in_band(stage)) throw ChartSingularity("geodesic entered a singular band");
    if (!rhs(stage, k4)) throw IntegrationDiverged("metric solve failed during integration");

    for (int i = 0; i < 2 * d; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    for (int i = 0; i < 2 * d; ++i)
      if (!std::isfinite(y[i])) throw IntegrationDiverged("non-finite state during integration");
    if (in_band(y)) throw ChartSingularity("geodesic entered a singular band");
    if (jumped(prev, y)) throw ChartSingularity("geodesic stepped across a singular set");
  }

  Vec out(d);
  for (int i = 0; i < d; ++i) out[i] = y[i];
  return Point(std::move(out));
}

TangentVec Manifold::shoot_log(const Point& p, const Point& x) const {
  if (kind_ != ManifoldKind::Chart) throw Error("shoot_log on a non-chart manifold");
  validate(p);
  validate(x);
  const int d = dim_;
  Vec diff = x.coords - p.coords;
  if (diff.lpNorm<Eigen::Infinity>() == 0.0) return TangentVec(p, Vec::Zero(d));

  Vec v(d);
  if (sphere2_guess_) {
    static const Manifold ref = Manifold::sphere(2);
    Point pe = sphere2_chart::to_embedded(p);
    Point xe = sphere2_chart::to_embedded(x);
    TangentVec ve = ref.log(pe, xe);  // CutLocus propagates: the target is ambiguous
    v = sphere2_chart::tangent_from_embedded(ve, p).vec;
  } else {
    if (diff.norm() > chart_cfg_.shoot_basin)
      throw ShootingNoConverge("target outside the shooting basin (chart separation " +
                               std::to_string(diff.norm()) + ")");
    v = diff;
  }

  auto residual = [&](const Vec& vv, Vec& r) -> bool {
    try {
      Point q = integrate_geodesic(TangentVec(p, vv), 1.0);
      r = q.coords - x.coords;
      return true;
    } catch (const Error&) {
      return false;
    }
  };

  const double tol = chart_cfg_.shoot_tol;
  Vec r(d);
  if (!residual(v, r))
    throw ShootingNoConverge("initial shot left the chart's valid domain");
  double rn = r.lpNorm<Eigen::Infinity>();

  Eigen::MatrixXd J(d, d);
  int iters = 0;
  while (rn > tol && iters < chart_cfg_.shoot_max_iters) {
    ++iters;
    double eps = 1e-7 * std::max(1.0, v.norm());
    Vec rj(d);
    for (int c = 0; c < d; ++c) {
      Vec vj = v;
      vj[c] += eps;
      if (!residual(vj, rj)) {
        vj[c] = v[c] - eps;
        if (!residual(vj, rj)) throw ShootingNoConverge("jacobian probe left the valid domain");
        J.col(c) = (r - rj) / eps;
      } else {
        J.col(c) = (rj - r) / eps;
      }
    }
    Vec step = J.partialPivLu().solve(-r);
    if (!step.allFinite()) throw ShootingNoConverge("singular jacobian in shooting solve");

    double alpha = 1.0;
    bool improved = false;
    Vec vn(d), rn2(d);
    for (int halvings = 0; halvings < 10; ++halvings) {
      vn = v + alpha * step;
      if (residual(vn, rn2) && rn2.lpNorm<Eigen::Infinity>() < rn) {
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;  // stalled; the residual check below decides
    v = vn;
    r = rn2;
    rn = r.lpNorm<Eigen::Infinity>();
  }

  if (rn > tol)
    throw ShootingNoConverge("endpoint residual " + std::to_string(rn) + " above tolerance " +
                             std::to_string(tol));
  return TangentVec(p, std::move(v));
}

// ---------------------------------------------------------------------------

GeodesicSegment::GeodesicSegment(Manifold m, TangentVec initial)
    : m_(std::move(m)), initial_(std::move(initial)) {}

Point GeodesicSegment::at(double t) const {
  if (m_.kind() == ManifoldKind::Chart) return m_.integrate_geodesic(initial_, t);
  return m_.exp(TangentVec(initial_.base, t * initial_.vec));
}

double GeodesicSegment::length() const { return m_.norm(initial_); }

// ---------------------------------------------------------------------------

namespace sphere2_chart {

Point to_embedded(const Point& chart_pt) {
  double th = chart_pt[0], ph = chart_pt[1];
  Vec q(3);
  q << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
  return Point(std::move(q));
}

Point from_embedded(const Point& sphere_pt) {
  Vec q(2);
  q << std::acos(clamp1(sphere_pt[2])), std::atan2(sphere_pt[1], sphere_pt[0]);
  return Point(std::move(q));
}

TangentVec tangent_to_embedded(const TangentVec& chart_vec) {
  double th = chart_vec.base[0], ph = chart_vec.base[1];
  Vec eth(3), eph(3);
  eth << std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th);
  eph << -std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0;
  return TangentVec(to_embedded(chart_vec.base), chart_vec.vec[0] * eth + chart_vec.vec[1] * eph);
}

TangentVec tangent_from_embedded(const TangentVec& embedded_vec, const Point& chart_base) {
  double th = chart_base[0], ph = chart_base[1];
  Vec eth(3), eph(3);
  eth << std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th);
  eph << -std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0;
  double s2 = std::sin(th) * std::sin(th);
  Vec v(2);
  v << embedded_vec.vec.dot(eth), s2 > 0.0 ? embedded_vec.vec.dot(eph) / s2 : 0.0;
  return TangentVec(chart_base, std::move(v));
}

}  // namespace sphere2_chart

}  // namespace rclab
