#pragma once

#include <Eigen/Dense>

#include "cat0/exact.hpp"

namespace cat0 {

// A point X + iY of the Siegel upper half space: X, Y real symmetric, Y positive definite.
struct SiegelPoint {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  int g() const { return static_cast<int>(x.rows()); }
};

SiegelPoint siegel_base_point(int g, double height = 1.0);  // height * i * I

void validate_siegel_point(const SiegelPoint& z, double tol = 1e-12);

// Invariant metric, normalized so that on the diagonal d(i*I, i*D)^2 = sum_k log(D_kk)^2.
double siegel_distance(const SiegelPoint& a, const SiegelPoint& b);

// Fractional linear action Z -> (AZ+B)(CZ+D)^{-1} of a real symplectic matrix.
SiegelPoint siegel_apply(const Eigen::MatrixXd& m, const SiegelPoint& z);

// Point at parameter t in [0,1] along the unique geodesic from a to b.
SiegelPoint siegel_geodesic_point(const SiegelPoint& a, const SiegelPoint& b, double t);

bool is_real_symplectic(const Eigen::MatrixXd& m, double tol = 1e-9);

// Factorization s = u * diag(sigma) * u^T of a complex symmetric matrix with u
// unitary and sigma real nonnegative, descending (the symmetric form of the SVD).
// Throws std::runtime_error if the reconstruction check fails.
void symmetric_svd(const Eigen::MatrixXcd& s, Eigen::MatrixXcd& u, Eigen::VectorXd& sigma);

}  // namespace cat0
