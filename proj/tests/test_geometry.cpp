#include "doctest.h"

#include <cmath>
#include <random>

#include "cat0/geometry.hpp"

using namespace cat0;

namespace {

EuclideanPoint ep(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return {v};
}

MetricTree three_star() { return MetricTree(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 2.0}}); }

SpaceDescriptor sample_space(int which) {
  switch (which) {
    case 0:
      return EuclideanSpace{3};
    case 1:
      return TreeSpace{three_star()};
    case 2:
      return SiegelSpace{1};
    case 3:
      return SiegelSpace{2};
    default:
      return ProductSpace{{SpaceDescriptor{EuclideanSpace{2}}, SpaceDescriptor{SiegelSpace{1}}}};
  }
}

ModelPoint sample_point(std::mt19937& rng, const SpaceDescriptor& space) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (auto* e = std::get_if<EuclideanSpace>(&space)) {
    Eigen::VectorXd v(e->dim);
    for (int i = 0; i < e->dim; ++i) v[i] = 2.0 * u(rng);
    return EuclideanPoint{v};
  }
  if (auto* t = std::get_if<TreeSpace>(&space)) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(t->tree.edges().size()) - 1);
    int e = pick(rng);
    std::uniform_real_distribution<double> off(0.0, t->tree.edges()[e].length);
    return TreePoint{e, off(rng)};
  }
  if (auto* s = std::get_if<SiegelSpace>(&space)) {
    int g = s->g;
    Eigen::MatrixXd x(g, g), a(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        x(i, j) = u(rng);
        a(i, j) = u(rng);
      }
    x = ((x + x.transpose()) / 2).eval();
    Eigen::MatrixXd y = a * a.transpose() + 0.2 * Eigen::MatrixXd::Identity(g, g);
    return SiegelPoint{x, y};
  }
  const auto& prod = std::get<ProductSpace>(space);
  ProductPoint p;
  for (const auto& f : prod.factors) p.parts.push_back(sample_point(rng, f));
  return p;
}

// Thinness against the Euclidean comparison triangle: for the midpoint m of qr,
//   d(p, m)^2 <= (d(p,q)^2 + d(p,r)^2) / 2 - d(q,r)^2 / 4.
// Returns lhs - rhs (nonpositive, up to tolerance, in nonpositive curvature).
double midpoint_slack(const SpaceDescriptor& space, const ModelPoint& p, const ModelPoint& q,
                      const ModelPoint& r) {
  ModelPoint m = geodesic_point(space, q, r, 0.5);
  double dpm = distance(space, p, m);
  double dpq = distance(space, p, q);
  double dpr = distance(space, p, r);
  double dqr = distance(space, q, r);
  return dpm * dpm - (dpq * dpq + dpr * dpr) / 2 + dqr * dqr / 4;
}

}  // namespace

TEST_CASE("space and point validation") {
  CHECK_NOTHROW(validate_space(SpaceDescriptor{EuclideanSpace{3}}));
  CHECK_THROWS_AS(validate_space(SpaceDescriptor{EuclideanSpace{0}}), InvalidInput);
  CHECK_THROWS_AS(validate_space(SpaceDescriptor{SiegelSpace{0}}), InvalidInput);
  CHECK_THROWS_AS(validate_space(SpaceDescriptor{ProductSpace{}}), InvalidInput);

  SpaceDescriptor e2{EuclideanSpace{2}};
  CHECK_NOTHROW(validate_point(e2, ep({1.0, 2.0})));
  CHECK_THROWS_AS(validate_point(e2, ep({1.0})), InvalidInput);
  CHECK_THROWS_AS(validate_point(e2, TreePoint{0, 0.0}), InvalidInput);

  SpaceDescriptor prod{ProductSpace{{e2, SpaceDescriptor{SiegelSpace{1}}}}};
  CHECK_NOTHROW(validate_space(prod));
  ModelPoint good = ProductPoint{{ep({0.0, 0.0}), ModelPoint{siegel_base_point(1)}}};
  CHECK_NOTHROW(validate_point(prod, good));
  ModelPoint short_parts = ProductPoint{{ep({0.0, 0.0})}};
  CHECK_THROWS_AS(validate_point(prod, short_parts), InvalidInput);
}

TEST_CASE("product distance is the square root of the sum of squares") {
  SpaceDescriptor prod{ProductSpace{{SpaceDescriptor{EuclideanSpace{1}}, SpaceDescriptor{SiegelSpace{1}}}}};
  ModelPoint a = ProductPoint{{ep({0.0}), ModelPoint{siegel_base_point(1)}}};
  ModelPoint b = ProductPoint{{ep({3.0}), ModelPoint{siegel_base_point(1, 4.0)}}};
  double want = std::hypot(3.0, std::log(4.0));
  CHECK(distance(prod, a, b) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("euclidean isometry action and displacement") {
  SpaceDescriptor e2{EuclideanSpace{2}};
  double c = std::cos(0.7), s = std::sin(0.7);
  Eigen::MatrixXd q(2, 2);
  q << c, -s, s, c;
  Eigen::VectorXd v(2);
  v << 1.0, -2.0;
  Isometry iso{EuclideanIsometry{q, v}};
  CHECK_NOTHROW(validate_isometry(e2, iso));

  ModelPoint origin = ep({0.0, 0.0});
  ModelPoint moved = apply_isometry(e2, iso, origin);
  CHECK(distance(e2, origin, moved) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ModelPoint a = sample_point(rng, e2), b = sample_point(rng, e2);
    CHECK(distance(e2, apply_isometry(e2, iso, a), apply_isometry(e2, iso, b)) ==
          doctest::Approx(distance(e2, a, b)).epsilon(1e-12));
  }

  Eigen::MatrixXd notq = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(validate_isometry(e2, Isometry{EuclideanIsometry{notq, v}}), InvalidInput);
}

TEST_CASE("tree isometry permutes legs of equal length") {
  SpaceDescriptor ts{TreeSpace{three_star()}};
  // Legs to 1 and 2 have length 1 and may swap; leg to 3 has length 2 and must stay.
  Isometry swap12{TreeIsometry{{0, 2, 1, 3}}};
  CHECK_NOTHROW(validate_isometry(ts, swap12));

  ModelPoint p = TreePoint{0, 0.25};
  ModelPoint q = apply_isometry(ts, swap12, p);
  const auto& tp = std::get<TreePoint>(q);
  double off = tp.offset;
  // Image lies on the 0-2 edge at the same depth.
  CHECK(distance(ts, q, ModelPoint{TreePoint{1, 0.25}}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(off == doctest::Approx(0.25));
  CHECK(distance(ts, p, q) == doctest::Approx(0.5).epsilon(1e-12));

  // Mapping the long leg onto a short one changes lengths: rejected.
  CHECK_THROWS_AS(validate_isometry(ts, Isometry{TreeIsometry{{0, 3, 2, 1}}}), InvalidInput);
  CHECK_THROWS_AS(validate_isometry(ts, Isometry{TreeIsometry{{0, 1, 2}}}), InvalidInput);
  CHECK_THROWS_AS(validate_isometry(ts, Isometry{TreeIsometry{{0, 1, 1, 3}}}), InvalidInput);
}

TEST_CASE("product isometry acts factor-wise and preserves distance") {
  SpaceDescriptor prod{ProductSpace{{SpaceDescriptor{EuclideanSpace{2}}, SpaceDescriptor{SiegelSpace{1}}}}};
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  Eigen::VectorXd shift(2);
  shift << 1, 0;
  Eigen::MatrixXd inv(2, 2);
  inv << 0, -1, 1, 0;  // z -> -1/z upstairs
  Isometry iso{ProductIsometry{{Isometry{EuclideanIsometry{rot, shift}}, Isometry{SiegelIsometry{inv}}}}};
  CHECK_NOTHROW(validate_isometry(prod, iso));

  std::mt19937 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    ModelPoint a = sample_point(rng, prod), b = sample_point(rng, prod);
    CHECK(distance(prod, apply_isometry(prod, iso, a), apply_isometry(prod, iso, b)) ==
          doctest::Approx(distance(prod, a, b)).epsilon(1e-10));
  }
}

TEST_CASE("geodesics are constant speed in every model space") {
  std::mt19937 rng(13);
  for (int which = 0; which < 5; ++which) {
    SpaceDescriptor space = sample_space(which);
    for (int trial = 0; trial < 10; ++trial) {
      ModelPoint a = sample_point(rng, space), b = sample_point(rng, space);
      double d = distance(space, a, b);
      for (double t : {0.0, 0.3, 0.5, 1.0}) {
        ModelPoint m = geodesic_point(space, a, b, t);
        CHECK(distance(space, a, m) == doctest::Approx(t * d).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("midpoint comparison inequality holds in every model space") {
  std::mt19937 rng(14);
  for (int which = 0; which < 5; ++which) {
    SpaceDescriptor space = sample_space(which);
    double worst = -1e300;
    for (int trial = 0; trial < 100; ++trial) {
      ModelPoint p = sample_point(rng, space), q = sample_point(rng, space), r = sample_point(rng, space);
      worst = std::max(worst, midpoint_slack(space, p, q, r));
    }
    CHECK(worst <= 1e-8);
  }
}
