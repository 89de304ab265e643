#pragma once

#include <vector>

#include "cat0/exact.hpp"

namespace cat0 {

template <typename Scalar>
struct FeasibilityResult {
  bool feasible = false;
  std::vector<Scalar> x;  // a point of the region when feasible
};

// Decide whether { x in R^d : a x <= b } is nonempty, by a dense phase-one
// simplex with Bland's rule (terminates for any ordered field Scalar).
template <typename Scalar>
FeasibilityResult<Scalar> lp_feasible(int d, const std::vector<std::vector<Scalar>>& a,
                                      const std::vector<Scalar>& b) {
  int m = static_cast<int>(a.size());
  if (m == 0) return {true, std::vector<Scalar>(d, Scalar(0))};

  // Variables: x = u - w with u, w >= 0, one slack per row, one artificial per
  // row whose right side is negative after normalization.
  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (b[i] < Scalar(0)) ++n_art;
  int cols = 2 * d + m + n_art;
  std::vector<std::vector<Scalar>> t(m, std::vector<Scalar>(cols + 1, Scalar(0)));
  std::vector<int> basis(m);
  int art = 0;
  for (int i = 0; i < m; ++i) {
    Scalar sign = b[i] < Scalar(0) ? Scalar(-1) : Scalar(1);
    for (int j = 0; j < d; ++j) {
      t[i][j] = sign * a[i][j];
      t[i][d + j] = -sign * a[i][j];
    }
    t[i][2 * d + i] = sign;  // slack
    t[i][cols] = sign * b[i];
    if (sign < Scalar(0)) {
      t[i][2 * d + m + art] = Scalar(1);
      basis[i] = 2 * d + m + art;
      ++art;
    } else {
      basis[i] = 2 * d + i;
    }
  }

  // Reduced-cost row (z - c) for minimizing the artificial sum: the sum of the
  // rows whose basic variable is artificial, minus the unit cost on every
  // artificial column.  Without the cost term an artificial could re-enter the
  // basis and mask infeasibility.
  std::vector<Scalar> red(cols + 1, Scalar(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] >= 2 * d + m)
      for (int j = 0; j <= cols; ++j) red[j] += t[i][j];
  for (int j = 2 * d + m; j < cols; ++j) red[j] -= Scalar(1);

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (red[j] > Scalar(0)) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= Scalar(0)) continue;
      if (leave < 0) {
        leave = i;
        continue;
      }
      Scalar lhs = t[i][cols] * t[leave][enter];
      Scalar rhs = t[leave][cols] * t[i][enter];
      if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
    }
    if (leave < 0) break;  // unbounded in phase one cannot happen, but stay safe
    Scalar piv = t[leave][enter];
    for (int j = 0; j <= cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == Scalar(0)) continue;
      Scalar f = t[i][enter];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    Scalar f = red[enter];
    if (f != Scalar(0))
      for (int j = 0; j <= cols; ++j) red[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  FeasibilityResult<Scalar> out;
  out.feasible = red[cols] == Scalar(0);
  if (out.feasible) {
    std::vector<Scalar> val(cols, Scalar(0));
    for (int i = 0; i < m; ++i) val[basis[i]] = t[i][cols];
    out.x.resize(d);
    for (int j = 0; j < d; ++j) out.x[j] = val[j] - val[d + j];
  }
  return out;
}

}  // namespace cat0
