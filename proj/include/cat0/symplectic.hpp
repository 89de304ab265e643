#pragma once

#include <Eigen/Dense>

#include "cat0/exact.hpp"

namespace cat0 {

/// 2g x 2g integer matrix preserving the standard alternating form
///   J = [ 0  I ; -I  0 ],
/// i.e. M^T J M = J exactly.  The pairing of basis vectors is <e_i, e_{g+i}> = 1.
class SymplecticMatrix {
 public:
  // Validates shape and the form identity; throws InvalidInput otherwise.
  explicit SymplecticMatrix(Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> entries);

  static SymplecticMatrix identity(int g);
  /// Transvection along an integer vector c:  x  |->  x + <x, c> c.
  static SymplecticMatrix transvection(const Eigen::VectorXi& c);

  int genus() const { return static_cast<int>(m_.rows()) / 2; }
  const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>& entries() const { return m_; }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;
  bool operator==(const SymplecticMatrix& rhs) const { return m_ == rhs.m_; }

  RationalMatrix to_rational() const;
  Eigen::MatrixXd to_double() const;

 private:
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> m_;
};

/// J for a given genus, as integers.
Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> standard_form_matrix(int g);

/// <x, y> = x^T J y over the integers.
long long symplectic_pairing(const Eigen::VectorXi& x, const Eigen::VectorXi& y);

/// M^T J M == J over exact rationals (used for real/rational matrices where
/// the integer fast path does not apply).
bool is_symplectic_rational(const RationalMatrix& m);

}  // namespace cat0
