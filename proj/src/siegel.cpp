#include "cat0/siegel.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cat0 {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;

MatrixXcd to_complex(const SiegelPoint& z) {
  return z.x.cast<complex<double>>() + complex<double>(0, 1) * z.y.cast<complex<double>>();
}

MatrixXd sym_pd_power(const MatrixXd& y, double p) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(y);
  VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam(i) = std::pow(lam(i), p);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// Symplectic matrix sending z to i*I: block upper triangular with A = Y^{-1/2},
// B = -Y^{-1/2} X, D = Y^{1/2}.  Its inverse is returned alongside.
void normalizer(const SiegelPoint& z, MatrixXd& to_base, MatrixXd& from_base) {
  int g = z.g();
  MatrixXd yh = sym_pd_power(z.y, 0.5);
  MatrixXd yih = sym_pd_power(z.y, -0.5);
  to_base = MatrixXd::Zero(2 * g, 2 * g);
  to_base.topLeftCorner(g, g) = yih;
  to_base.topRightCorner(g, g) = -yih * z.x;
  to_base.bottomRightCorner(g, g) = yh;
  from_base = MatrixXd::Zero(2 * g, 2 * g);
  from_base.topLeftCorner(g, g) = yh;
  from_base.topRightCorner(g, g) = z.x * yih;
  from_base.bottomRightCorner(g, g) = yih;
}

MatrixXcd mobius(const MatrixXd& m, const MatrixXcd& z) {
  int g = static_cast<int>(z.rows());
  MatrixXcd a = m.topLeftCorner(g, g).cast<complex<double>>();
  MatrixXcd b = m.topRightCorner(g, g).cast<complex<double>>();
  MatrixXcd c = m.bottomLeftCorner(g, g).cast<complex<double>>();
  MatrixXcd d = m.bottomRightCorner(g, g).cast<complex<double>>();
  MatrixXcd num = a * z + b;
  MatrixXcd den = c * z + d;
  MatrixXcd w = den.transpose().partialPivLu().solve(num.transpose()).transpose();
  return 0.5 * (w + w.transpose());  // exact result is symmetric
}

SiegelPoint from_complex(const MatrixXcd& w) {
  return {w.real(), w.imag()};
}

MatrixXcd cayley(const MatrixXcd& w) {
  int g = static_cast<int>(w.rows());
  MatrixXcd i_id = complex<double>(0, 1) * MatrixXcd::Identity(g, g);
  return (w + i_id).partialPivLu().solve(w - i_id).eval();
}

MatrixXcd inv_cayley(const MatrixXcd& s) {
  int g = static_cast<int>(s.rows());
  MatrixXcd id = MatrixXcd::Identity(g, g);
  return complex<double>(0, 1) * (id - s).partialPivLu().solve((id + s).eval());
}

}  // namespace

SiegelPoint siegel_base_point(int g, double height) {
  if (g < 1) throw InvalidInput("Siegel space needs g >= 1");
  if (!(height > 0.0)) throw InvalidInput("base point height must be positive");
  return {MatrixXd::Zero(g, g), height * MatrixXd::Identity(g, g)};
}

void validate_siegel_point(const SiegelPoint& z, double tol) {
  if (z.x.rows() != z.x.cols() || z.y.rows() != z.y.cols() || z.x.rows() != z.y.rows() ||
      z.x.rows() < 1)
    throw InvalidInput("Siegel point blocks must be square of equal size");
  if (!z.x.allFinite() || !z.y.allFinite()) throw InvalidInput("Siegel point has a non-finite entry");
  double scale = std::max({1.0, z.x.cwiseAbs().maxCoeff(), z.y.cwiseAbs().maxCoeff()});
  if ((z.x - z.x.transpose()).cwiseAbs().maxCoeff() > tol * scale ||
      (z.y - z.y.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw InvalidInput("Siegel point blocks must be symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (z.y + z.y.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InvalidInput("Siegel point imaginary part must be positive definite");
}

double siegel_distance(const SiegelPoint& a, const SiegelPoint& b) {
  validate_siegel_point(a);
  validate_siegel_point(b);
  if (a.g() != b.g()) throw InvalidInput("Siegel points of different rank");
  MatrixXcd z1 = to_complex(a), z2 = to_complex(b);
  MatrixXcd z2c = z2.conjugate(), z1c = z1.conjugate();
  // Cross ratio; its eigenvalues r_k lie in [0,1) and give the distance as
  // d^2 = sum_k log^2((1+sqrt r_k)/(1-sqrt r_k)).
  MatrixXcd r = (z1 - z2) * (z1 - z2c).partialPivLu().solve((z1c - z2c).eval()) *
                (z1c - z2).partialPivLu().inverse();
  Eigen::ComplexEigenSolver<MatrixXcd> es(r);
  double d2 = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    double rk = es.eigenvalues()(k).real();
    rk = std::clamp(rk, 0.0, 1.0 - 1e-16);
    double s = std::sqrt(rk);
    d2 += 4.0 * std::atanh(s) * std::atanh(s);
  }
  return std::sqrt(d2);
}

SiegelPoint siegel_apply(const Eigen::MatrixXd& m, const SiegelPoint& z) {
  validate_siegel_point(z);
  if (m.rows() != 2 * z.g() || m.cols() != 2 * z.g())
    throw InvalidInput("symplectic matrix size does not match the point");
  if (!is_real_symplectic(m)) throw InvalidInput("matrix is not symplectic");
  SiegelPoint out = from_complex(mobius(m, to_complex(z)));
  validate_siegel_point(out, 1e-8);
  return out;
}

bool is_real_symplectic(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() < 2) return false;
  int g = static_cast<int>(m.rows()) / 2;
  MatrixXd j = MatrixXd::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = MatrixXd::Identity(g, g);
  j.bottomLeftCorner(g, g) = -MatrixXd::Identity(g, g);
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() <= tol * scale * scale;
}

void symmetric_svd(const Eigen::MatrixXcd& s, Eigen::MatrixXcd& u, Eigen::VectorXd& sigma) {
  int g = static_cast<int>(s.rows());
  if (s.cols() != g || g < 1) throw InvalidInput("symmetric factorization needs a square matrix");
  double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInput("matrix is not complex symmetric");

  // Real embedding: with s = E + iF, the real symmetric matrix [[E,F],[F,-E]]
  // has eigenpairs (sig, [x;y]) exactly when u = x+iy satisfies s*conj(u) = sig*u.
  MatrixXd e = s.real(), f = s.imag();
  MatrixXd t(2 * g, 2 * g);
  t.topLeftCorner(g, g) = e;
  t.topRightCorner(g, g) = f;
  t.bottomLeftCorner(g, g) = f;
  t.bottomRightCorner(g, g) = -e;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(t);

  // Walk eigenvectors from the largest eigenvalue down, keeping a vector whenever
  // it adds a new complex direction.  The spectrum is symmetric about 0, so this
  // keeps exactly g columns, paired with the nonnegative half of the spectrum.
  u = MatrixXcd(g, g);
  sigma = VectorXd(g);
  int kept = 0;
  for (int idx = 2 * g - 1; idx >= 0 && kept < g; --idx) {
    VectorXd v = es.eigenvectors().col(idx);
    Eigen::VectorXcd cand = v.head(g) + complex<double>(0, 1) * v.tail(g);
    for (int j = 0; j < kept; ++j) cand -= (u.col(j).adjoint() * cand)(0) * u.col(j);
    double nrm = cand.norm();
    if (nrm < 1e-8) continue;
    u.col(kept) = cand / nrm;
    sigma(kept) = std::max(0.0, es.eigenvalues()(idx));
    ++kept;
  }
  if (kept != g) throw std::runtime_error("symmetric factorization lost rank");

  // Phase polish: rotate each column so u_k^* s conj(u_k) is nonnegative real,
  // then read the factor values off the polished diagonal.
  for (int k = 0; k < g; ++k) {
    complex<double> p = (u.col(k).adjoint() * s * u.col(k).conjugate())(0);
    if (std::abs(p) > 1e-14) u.col(k) *= std::polar(1.0, -std::arg(p) / 2.0);
    sigma(k) = std::abs(p);
  }

  MatrixXcd rec = u * sigma.asDiagonal() * u.transpose();
  if ((rec - s).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::runtime_error("symmetric factorization reconstruction check failed");
}

SiegelPoint siegel_geodesic_point(const SiegelPoint& a, const SiegelPoint& b, double t) {
  validate_siegel_point(a);
  validate_siegel_point(b);
  if (a.g() != b.g()) throw InvalidInput("Siegel points of different rank");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("geodesic parameter must lie in [0,1]");
  if (t == 0.0) return a;
  if (t == 1.0) return b;

  // Move a to i*I, pass through the bounded model where geodesics from the
  // origin are straight in the factor values, then move back.
  MatrixXd to_base, from_base;
  normalizer(a, to_base, from_base);
  MatrixXcd w = mobius(to_base, to_complex(b));
  MatrixXcd s = cayley(w);
  s = 0.5 * (s + s.transpose());
  MatrixXcd u;
  VectorXd sig;
  symmetric_svd(s, u, sig);
  VectorXd sig_t(sig.size());
  for (int k = 0; k < sig.size(); ++k) {
    double v = std::clamp(sig(k), 0.0, 1.0 - 1e-16);
    sig_t(k) = std::tanh(t * std::atanh(v));
  }
  MatrixXcd s_t = u * sig_t.asDiagonal() * u.transpose();
  MatrixXcd w_t = inv_cayley(s_t);
  w_t = 0.5 * (w_t + w_t.transpose());
  SiegelPoint out = from_complex(mobius(from_base, w_t));
  validate_siegel_point(out, 1e-8);
  return out;
}

}  // namespace cat0
