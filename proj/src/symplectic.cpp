#include "cat0/symplectic.hpp"

namespace cat0 {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

IMat standard_form_matrix(int g) {
  IMat j = IMat::Zero(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

namespace {

bool check_form(const IMat& m) {
  int n = static_cast<int>(m.rows());
  if (n == 0 || n % 2 != 0 || m.cols() != n) return false;
  IMat j = standard_form_matrix(n / 2);
  // Entries stay well inside long long for the sizes we use (g <= 8, small
  // entries), but the product below is the only place overflow could hide,
  // so do it in BigInt.
  RationalMatrix mr(n, n), jr(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      mr(i, k) = m(i, k);
      jr(i, k) = j(i, k);
    }
  return (mr.transpose() * jr * mr) == jr;
}

}  // namespace

SymplecticMatrix::SymplecticMatrix(IMat entries) : m_(std::move(entries)) {
  if (!check_form(m_)) throw InvalidInput("matrix does not preserve the standard alternating form");
}

SymplecticMatrix SymplecticMatrix::identity(int g) {
  if (g < 1) throw InvalidInput("genus must be positive");
  return SymplecticMatrix(IMat::Identity(2 * g, 2 * g));
}

SymplecticMatrix SymplecticMatrix::transvection(const Eigen::VectorXi& c) {
  int n = static_cast<int>(c.size());
  if (n == 0 || n % 2 != 0) throw InvalidInput("transvection vector must have even length");
  int g = n / 2;
  IMat j = standard_form_matrix(g);
  IMat m = IMat::Identity(n, n);
  // (Mx)_i = x_i + (x^T J c) c_i, so M = I + c (Jc)^T.
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long jc_k = 0;
      for (int t = 0; t < n; ++t) jc_k += j(k, t) * c(t);
      m(i, k) += static_cast<long long>(c(i)) * jc_k;
    }
  return SymplecticMatrix(m);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  return SymplecticMatrix(m_ * rhs.m_);
}

RationalMatrix SymplecticMatrix::to_rational() const {
  int n = static_cast<int>(m_.rows());
  RationalMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out(i, k) = m_(i, k);
  return out;
}

Eigen::MatrixXd SymplecticMatrix::to_double() const { return m_.cast<double>(); }

long long symplectic_pairing(const Eigen::VectorXi& x, const Eigen::VectorXi& y) {
  int n = static_cast<int>(x.size());
  if (y.size() != n || n % 2 != 0) throw InvalidInput("pairing needs two vectors of equal even length");
  int g = n / 2;
  long long s = 0;
  for (int i = 0; i < g; ++i)
    s += static_cast<long long>(x(i)) * y(g + i) - static_cast<long long>(x(g + i)) * y(i);
  return s;
}

bool is_symplectic_rational(const RationalMatrix& m) {
  int n = m.rows();
  if (n == 0 || n % 2 != 0 || m.cols() != n) return false;
  IMat j = standard_form_matrix(n / 2);
  RationalMatrix jr(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) jr(i, k) = j(i, k);
  return (m.transpose() * jr * m) == jr;
}

}  // namespace cat0
