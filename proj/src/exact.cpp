#include "cat0/exact.hpp"

namespace cat0 {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("matrix product shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const {
  RationalMatrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j) + rhs(i, j);
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const {
  RationalMatrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j) - rhs(i, j);
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

void poly_normalize(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<int>(k));
  poly_normalize(d);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  poly_normalize(out);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] -= b[i];
  }
  poly_normalize(out);
  return out;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw InvalidInput("polynomial division by zero");
  r = a;
  poly_normalize(r);
  q.assign(r.size() > b.size() ? r.size() - b.size() + 1 : 1, Rational(0));
  const Rational& lead = b.back();
  while (poly_degree(r) >= poly_degree(b)) {
    int shift = poly_degree(r) - poly_degree(b);
    Rational c = r.back() / lead;
    q[shift] += c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    poly_normalize(r);
  }
  poly_normalize(q);
}

Poly poly_gcd(Poly a, Poly b) {
  poly_normalize(a);
  poly_normalize(b);
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

RationalMatrix poly_eval_matrix(const Poly& p, const RationalMatrix& m) {
  int n = m.rows();
  RationalMatrix acc(n, n);
  for (size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    for (int d = 0; d < n; ++d) acc(d, d) += p[i];
  }
  return acc;
}

Poly poly_squarefree_part(const Poly& p) {
  Poly g = poly_gcd(p, poly_derivative(p));
  Poly q, r;
  poly_divmod(p, g, q, r);
  return q;  // r == 0 by construction
}

Poly char_poly(const RationalMatrix& m) {
  int n = m.rows();
  if (n != m.cols()) throw InvalidInput("char_poly needs a square matrix");
  Poly c(n + 1);
  c[n] = 1;
  RationalMatrix mk = m;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      RationalMatrix t = mk;
      for (int d = 0; d < n; ++d) t(d, d) += c[n - k + 1];
      mk = m * t;
    }
    c[n - k] = -mk.trace() / k;
  }
  return c;
}

namespace {

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(poly_eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int sturm_count_open(const Poly& squarefree, const Rational& a, const Rational& b) {
  if (poly_degree(squarefree) <= 0) return 0;
  if (poly_eval(squarefree, a) == 0 || poly_eval(squarefree, b) == 0)
    throw InvalidInput("sturm_count_open: interval endpoint is a root");
  std::vector<Poly> chain{squarefree, poly_derivative(squarefree)};
  while (poly_degree(chain.back()) > 0) {
    Poly q, r;
    poly_divmod(chain[chain.size() - 2], chain.back(), q, r);
    if (r.empty()) break;  // squarefree input should not get here
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return sign_variations(chain, a) - sign_variations(chain, b);
}

bool poly_is_palindromic(const Poly& p) {
  int n = poly_degree(p);
  if (n < 0) return false;
  for (int k = 0; k <= n; ++k)
    if (p[k] != p[n - k]) return false;
  return true;
}

Poly palindromic_reduce(const Poly& p) {
  int n = poly_degree(p);
  if (n < 0 || n % 2 != 0 || !poly_is_palindromic(p))
    throw InvalidInput("palindromic_reduce: need a palindromic polynomial of even degree");
  int m = n / 2;
  // Chebyshev-like basis: P_0 = 2, P_1 = y, P_k = y P_{k-1} - P_{k-2},
  // so that x^k + x^{-k} = P_k(x + 1/x).
  std::vector<Poly> basis(m + 1);
  basis[0] = {Rational(2)};
  if (m >= 1) basis[1] = {Rational(0), Rational(1)};
  for (int k = 2; k <= m; ++k)
    basis[k] = poly_sub(poly_mul(Poly{Rational(0), Rational(1)}, basis[k - 1]), basis[k - 2]);
  Poly q{p[m]};
  for (int k = 1; k <= m; ++k) {
    Poly term = basis[k];
    for (auto& c : term) c *= p[m + k];
    q = poly_sub(q, poly_sub(Poly{}, term));  // q += term
  }
  poly_normalize(q);
  return q;
}

int root_multiplicity(const Poly& q, const Rational& r) {
  Poly cur = q;
  poly_normalize(cur);
  int mult = 0;
  Poly lin{-r, Rational(1)};
  while (!cur.empty() && poly_eval(cur, r) == 0) {
    Poly quo, rem;
    poly_divmod(cur, lin, quo, rem);
    cur = quo;
    ++mult;
  }
  return mult;
}

}  // namespace cat0
