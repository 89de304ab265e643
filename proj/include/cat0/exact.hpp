#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace cat0 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an input fails a documented precondition (bad matrix shape,
/// non-symmetric Siegel point, non-tree graph, ...).  The CLI maps this to a
/// structured error object and exit code 1.
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Dense matrix over Rational, row-major.  Only the handful of operations the
/// exact classifier needs; everything numeric goes through Eigen instead.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator+(const RationalMatrix& rhs) const;
  RationalMatrix operator-(const RationalMatrix& rhs) const;
  RationalMatrix transpose() const;
  bool operator==(const RationalMatrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }
  bool is_zero() const;
  Rational trace() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Polynomial with rational coefficients, stored low degree first.
/// Trailing zeros are trimmed by normalize(); the zero polynomial is {}.
using Poly = std::vector<Rational>;

void poly_normalize(Poly& p);
int poly_degree(const Poly& p);  // -1 for the zero polynomial
Poly poly_derivative(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
// Euclidean division; requires b != 0.
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
// Monic gcd.
Poly poly_gcd(Poly a, Poly b);
Rational poly_eval(const Poly& p, const Rational& x);
// p(M) via Horner.
RationalMatrix poly_eval_matrix(const Poly& p, const RationalMatrix& m);
// p / gcd(p, p'): same roots, all simple.
Poly poly_squarefree_part(const Poly& p);

/// Monic characteristic polynomial det(xI - M) by the Faddeev-LeVerrier
/// recurrence; exact for rational input.
Poly char_poly(const RationalMatrix& m);

/// Number of distinct real roots of a squarefree polynomial in the open
/// interval (a, b).  Requires p(a) != 0 and p(b) != 0.
int sturm_count_open(const Poly& squarefree, const Rational& a, const Rational& b);

/// True iff coefficients satisfy c_k == c_{n-k} (roots closed under x -> 1/x
/// with product 1).
bool poly_is_palindromic(const Poly& p);

/// For palindromic p of even degree 2m, the degree-m polynomial q with
/// p(x) = x^m q(x + 1/x).  Roots of p on the unit circle correspond to real
/// roots of q in [-2, 2].
Poly palindromic_reduce(const Poly& p);

/// How often (y - r) divides q.
int root_multiplicity(const Poly& q, const Rational& r);

}  // namespace cat0
