#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "cat0/siegel.hpp"
#include "cat0/surfaces.hpp"

using namespace cat0;

namespace {

SiegelPoint random_point(std::mt19937& rng, int g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd x(g, g), a(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      x(i, j) = u(rng);
      a(i, j) = u(rng);
    }
  x = ((x + x.transpose()) / 2).eval();
  // Y = A A^T + eps I is symmetric positive definite.
  Eigen::MatrixXd y = a * a.transpose() + 0.2 * Eigen::MatrixXd::Identity(g, g);
  return {x, y};
}

}  // namespace

TEST_CASE("distance on the diagonal is the log-spectral formula") {
  SiegelPoint i1 = siegel_base_point(1);
  SiegelPoint i4 = siegel_base_point(1, 4.0);
  CHECK(siegel_distance(i1, i4) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

  // g = 2: d(iI, i diag(2, 8))^2 = log(2)^2 + log(8)^2
  SiegelPoint base = siegel_base_point(2);
  Eigen::MatrixXd y = Eigen::MatrixXd::Identity(2, 2);
  y(0, 0) = 2.0;
  y(1, 1) = 8.0;
  SiegelPoint d28{Eigen::MatrixXd::Zero(2, 2), y};
  double want = std::hypot(std::log(2.0), std::log(8.0));
  CHECK(siegel_distance(base, d28) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("point validation") {
  CHECK_NOTHROW(validate_siegel_point(siegel_base_point(2)));
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(validate_siegel_point({asym, Eigen::MatrixXd::Identity(2, 2)}), InvalidInput);
  CHECK_THROWS_AS(validate_siegel_point({Eigen::MatrixXd::Zero(2, 2), -Eigen::MatrixXd::Identity(2, 2)}),
                  InvalidInput);
  Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
  singular(0, 0) = 1.0;  // rank 1, not positive definite
  CHECK_THROWS_AS(validate_siegel_point({Eigen::MatrixXd::Zero(2, 2), singular}), InvalidInput);
  CHECK_THROWS_AS(validate_siegel_point({Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Identity(2, 2)}),
                  InvalidInput);
}

TEST_CASE("metric axioms on random pairs") {
  std::mt19937 rng(404);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 20; ++trial) {
      SiegelPoint a = random_point(rng, g), b = random_point(rng, g), c = random_point(rng, g);
      double dab = siegel_distance(a, b);
      CHECK(dab >= 0.0);
      CHECK(dab == doctest::Approx(siegel_distance(b, a)).epsilon(1e-9));
      CHECK(siegel_distance(a, a) == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(siegel_distance(a, c) <= dab + siegel_distance(b, c) + 1e-9);
    }
  }
}

TEST_CASE("action of the inversion on the upper half plane") {
  // [[0,-1],[1,0]] sends z to -1/z, so 2i goes to i/2.
  Eigen::MatrixXd m(2, 2);
  m << 0, -1, 1, 0;
  CHECK(is_real_symplectic(m));
  SiegelPoint z = siegel_base_point(1, 2.0);
  SiegelPoint w = siegel_apply(m, z);
  CHECK(w.x(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w.y(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("symplectic action is isometric") {
  std::mt19937 rng(405);
  for (int g : {1, 2, 3}) {
    LickorishSystem sys(g);
    // Product of a few twist matrices gives a nontrivial integer symplectic map.
    SymplecticMatrix s = SymplecticMatrix::identity(g);
    for (int c = 0; c < sys.curve_count(); c += 2) s = s * sys.twist_matrix(c);
    Eigen::MatrixXd m = s.to_double();
    REQUIRE(is_real_symplectic(m));
    for (int trial = 0; trial < 15; ++trial) {
      SiegelPoint a = random_point(rng, g), b = random_point(rng, g);
      double before = siegel_distance(a, b);
      double after = siegel_distance(siegel_apply(m, a), siegel_apply(m, b));
      CHECK(after == doctest::Approx(before).epsilon(1e-8));
    }
  }
}

TEST_CASE("non-symplectic matrices are detected") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 0) = 2.0;
  CHECK_FALSE(is_real_symplectic(m));
  CHECK(is_real_symplectic(Eigen::MatrixXd::Identity(4, 4)));
}

TEST_CASE("geodesics have constant speed and hit both ends") {
  std::mt19937 rng(406);
  for (int g : {1, 2}) {
    SiegelPoint a = random_point(rng, g), b = random_point(rng, g);
    double d = siegel_distance(a, b);
    SiegelPoint start = siegel_geodesic_point(a, b, 0.0);
    SiegelPoint end = siegel_geodesic_point(a, b, 1.0);
    CHECK(siegel_distance(start, a) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(siegel_distance(end, b) == doctest::Approx(0.0).epsilon(1e-9));
    SiegelPoint mid = siegel_geodesic_point(a, b, 0.5);
    CHECK(siegel_distance(a, mid) == doctest::Approx(d / 2).epsilon(1e-9));
    CHECK(siegel_distance(mid, b) == doctest::Approx(d / 2).epsilon(1e-9));
    SiegelPoint q = siegel_geodesic_point(a, b, 0.3);
    CHECK(siegel_distance(a, q) == doctest::Approx(0.3 * d).epsilon(1e-8));
  }
}

TEST_CASE("symmetric svd reconstructs and is unitary") {
  std::mt19937 rng(407);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {1, 2, 3, 4}) {
    Eigen::MatrixXcd s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::complex<double> v(u(rng), u(rng));
        s(i, j) = v;
        s(j, i) = v;
      }
    Eigen::MatrixXcd q;
    Eigen::VectorXd sigma;
    symmetric_svd(s, q, sigma);
    CHECK((q * q.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-10);
    Eigen::MatrixXcd rebuilt = q * sigma.cast<std::complex<double>>().asDiagonal() * q.transpose();
    CHECK((rebuilt - s).norm() < 1e-9);
    for (int i = 0; i < n; ++i) {
      CHECK(sigma[i] >= -1e-12);
      if (i > 0) CHECK(sigma[i - 1] >= sigma[i] - 1e-12);
    }
  }
}
