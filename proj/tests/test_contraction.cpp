#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rclab/contraction.hpp"
#include "rclab/sampling.hpp"
#include "test_support.hpp"

using namespace rclab;
using namespace rclab::testutil;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("euclidean contraction is the affine combination") {
  Manifold m = Manifold::euclidean(2);
  ContractionMap c(m, Point{0.0, 0.0}, 0.5);
  Point out = c.contract(Point{2.0, 0.0});
  CHECK(max_abs_diff(out.coords, vec2(1.0, 0.0)) == 0.0);

  ContractionMap c2(m, Point{1.0, 1.0}, 0.25);
  Point out2 = c2.contract(Point{5.0, -3.0});
  // lambda*x + (1-lambda)*p computed independently
  CHECK(max_abs_diff(out2.coords, vec2(0.25 * 5.0 + 0.75 * 1.0, 0.25 * -3.0 + 0.75 * 1.0)) <=
        1e-12);
}

TEST_CASE("euclidean contraction matches the affine form to 1e-12 on random input") {
  Manifold m = Manifold::euclidean(3);
  Rng rng(11u);
  for (int i = 0; i < 200; ++i) {
    Point p = random_point(m, rng);
    Point x = random_point(m, rng);
    std::uniform_real_distribution<double> ud(0.05, 1.0);
    double lam = ud(rng);
    ContractionMap c(m, p, lam);
    Vec expect = lam * x.coords + (1.0 - lam) * p.coords;
    CHECK(max_abs_diff(c.contract(x).coords, expect) <= 1e-12);
  }
}

TEST_CASE("half contraction pulls the equator to colatitude pi/4") {
  Manifold m = Manifold::sphere(2);
  Point pole{0.0, 0.0, 1.0};
  ContractionMap c(m, pole, 0.5);

  // oracle: the image of an equator point lies on the same meridian at
  // colatitude pi/4, i.e. (sin(pi/4), 0, cos(pi/4)) for (1,0,0)
  double s = std::sin(kPi / 4.0), co = std::cos(kPi / 4.0);
  Point out = c.contract(Point{1.0, 0.0, 0.0});
  CHECK(max_abs_diff(out.coords, vec3(s, 0.0, co)) <= 1e-9);

  std::vector<Point> eq;
  const int n = 33;
  for (int k = 0; k < n; ++k) {
    double phi = (kPi / 2.0) * k / (n - 1);
    eq.push_back(Point{std::cos(phi), std::sin(phi), 0.0});
  }
  std::vector<Point> image = c.contract_set(eq);
  REQUIRE(image.size() == eq.size());
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(image[static_cast<size_t>(k)][2] - co) <= 1e-9);  // on the pi/4 latitude circle
    CHECK(m.dist(pole, image[static_cast<size_t>(k)]) == doctest::Approx(kPi / 4.0).epsilon(1e-9));
  }
}

TEST_CASE("identity at lambda = 1 and fixed base point") {
  Rng rng(17u);
  for (const char* spec : {"euclidean:2", "sphere:2", "hyperbolic:2"}) {
    Manifold m = Manifold::from_spec(spec);
    Point p = random_point(m, rng);
    ContractionMap c1(m, p, 1.0);
    ContractionMap chalf(m, p, 0.5);
    for (int i = 0; i < 50; ++i) {
      Point x = random_point(m, rng);
      try {
        INFO(spec);
        CHECK(max_abs_diff(c1.contract(x).coords, x.coords) <= 1e-9);
      } catch (const CutLocus&) {
        continue;
      }
    }
    CHECK(max_abs_diff(chalf.contract(p).coords, p.coords) <= 1e-12);
  }
}

TEST_CASE("radial scaling: dist(p, contracted) = lambda * dist(p, x)") {
  Rng rng(23u);
  for (const char* spec : {"euclidean:2", "sphere:2", "hyperbolic:2"}) {
    Manifold m = Manifold::from_spec(spec);
    std::uniform_real_distribution<double> ud(0.05, 1.0);
    for (int i = 0; i < 100; ++i) {
      Point p = random_point(m, rng);
      Point x = random_point(m, rng);
      double lam = ud(rng);
      double d;
      try {
        d = m.dist(p, x);
        if (d > kPi - 1e-3) continue;
        ContractionMap c(m, p, lam);
        Point out = c.contract(x);
        INFO(spec);
        CHECK(std::abs(m.dist(p, out) - lam * d) <= 1e-9 * std::max(1.0, d));
      } catch (const CutLocus&) {
        continue;
      }
    }
  }
}

TEST_CASE("contraction composes: same center, multiplied factors") {
  Rng rng(31u);
  for (const char* spec : {"euclidean:2", "sphere:2", "hyperbolic:2"}) {
    Manifold m = Manifold::from_spec(spec);
    std::uniform_real_distribution<double> ud(0.05, 1.0);
    double worst = 0.0;
    int done = 0;
    while (done < 150) {
      Point p = random_point(m, rng);
      Point x = random_point(m, rng);
      double lam = ud(rng), beta = ud(rng);
      try {
        Point two_step = ContractionMap(m, p, lam).contract(ContractionMap(m, p, beta).contract(x));
        Point one_step = ContractionMap(m, p, lam * beta).contract(x);
        worst = std::max(worst, max_abs_diff(two_step.coords, one_step.coords));
        ++done;
      } catch (const CutLocus&) {
        continue;  // x drawn too close to the antipode of p
      }
    }
    INFO(spec);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("composition holds through the chart pipeline") {
  Manifold m = Manifold::chart_sphere2();
  Rng rng(37u);
  std::uniform_real_distribution<double> ud(0.1, 1.0);
  double worst = 0.0;
  int done = 0, skipped = 0;
  while (done < 25 && skipped < 500) {
    Point p = random_point(m, rng);
    TangentVec v = random_tangent(m, p, 1.2, rng);
    if (sphere2_min_pole_distance(v, 1.0) < 0.25) {
      ++skipped;
      continue;
    }
    Point x = m.exp(v);
    double lam = ud(rng), beta = ud(rng);
    try {
      Point two_step = ContractionMap(m, p, lam).contract(ContractionMap(m, p, beta).contract(x));
      Point one_step = ContractionMap(m, p, lam * beta).contract(x);
      worst = std::max(worst, max_abs_diff(two_step.coords, one_step.coords));
      ++done;
    } catch (const Error&) {
      ++skipped;
      continue;
    }
  }
  CHECK(done == 25);
  CHECK(worst <= 1e-6);
}

TEST_CASE("contracting a geodesic segment stays on the segment through the center") {
  // image of a radial geodesic from p is the same geodesic, re-parameterized
  Manifold m = Manifold::sphere(2);
  Point p{0.0, 0.0, 1.0};
  Point x{1.0, 0.0, 0.0};
  ContractionMap c(m, p, 0.5);
  for (double t : {0.2, 0.5, 0.8, 1.0}) {
    Point q = m.geodesic_point(p, x, t);
    Point out = c.contract(q);
    Point expect = m.geodesic_point(p, x, 0.5 * t);
    CHECK(max_abs_diff(out.coords, expect.coords) <= 1e-9);
  }
}

TEST_CASE("invalid contraction factors are rejected") {
  Manifold m = Manifold::euclidean(2);
  Point p{0.0, 0.0};
  CHECK_THROWS_AS(ContractionMap(m, p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ContractionMap(m, p, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(ContractionMap(m, p, 1.5), std::invalid_argument);
  CHECK_NOTHROW(ContractionMap(m, p, 1.0));
  CHECK_NOTHROW(ContractionMap(m, p, 1e-6));
  CHECK_THROWS_AS(ContractionMap(m, Point{0.0}, 0.5), InvalidPoint);
}

TEST_CASE("canonical policy refuses the cut locus; a table override resolves it") {
  Manifold m = Manifold::sphere(2);
  Point pole{0.0, 0.0, 1.0};
  Point antipode{0.0, 0.0, -1.0};

  ContractionMap canonical(m, pole, 0.5);
  CHECK_THROWS_AS(canonical.contract(antipode), CutLocus);

  // choose the meridian through (1,0,0) for the antipodal direction
  TangentVec chosen(pole, vec3(kPi, 0.0, 0.0));
  DirectionPolicy table = DirectionPolicy::table({{antipode, chosen}});
  ContractionMap resolved(m, pole, 0.5, table);

  TangentVec dir = resolved.direction(antipode);
  CHECK(max_abs_diff(dir.vec, vec3(kPi, 0.0, 0.0)) == 0.0);

  Point contracted = resolved.contract(antipode);
  CHECK(max_abs_diff(contracted.coords, vec3(1.0, 0.0, 0.0)) <= 1e-9);

  // table mode serves only its listed points
  CHECK_THROWS_AS(resolved.contract(Point{0.0, 1.0, 0.0}), MissingOverride);

  // an override that does not reach its key is rejected
  DirectionPolicy bad = DirectionPolicy::table({{antipode, TangentVec(pole, vec3(1.0, 0.0, 0.0))}});
  ContractionMap broken(m, pole, 0.5, bad);
  CHECK_THROWS_AS(broken.contract(antipode), InvalidOverride);
}

TEST_CASE("set contraction reports the first failing element") {
  Manifold m = Manifold::sphere(2);
  Point pole{0.0, 0.0, 1.0};
  ContractionMap c(m, pole, 0.5);
  std::vector<Point> pts = {Point{1.0, 0.0, 0.0}, Point{0.0, 0.0, -1.0}, Point{0.0, 1.0, 0.0}};
  try {
    c.contract_set(pts);
    FAIL("expected CutLocus");
  } catch (const CutLocus& e) {
    CHECK(std::string(e.what()).find("element 1") != std::string::npos);
  }
}

TEST_CASE("curve contraction preserves order") {
  Manifold m = Manifold::sphere(2);
  Point pole{0.0, 0.0, 1.0};
  ContractionMap c(m, pole, 0.5);
  std::vector<Point> curve;
  for (int k = 0; k <= 16; ++k) {
    double phi = (kPi / 2.0) * k / 16.0;
    curve.push_back(Point{std::cos(phi), std::sin(phi), 0.0});
  }
  std::vector<Point> image = c.contract_curve(curve);
  REQUIRE(image.size() == curve.size());
  for (size_t k = 0; k < image.size(); ++k) {
    // each image point sits on the meridian of its source, in order
    double phi_src = std::atan2(curve[k][1], curve[k][0]);
    double phi_img = std::atan2(image[k][1], image[k][0]);
    CHECK(phi_img == doctest::Approx(phi_src).epsilon(1e-9));
  }
}
