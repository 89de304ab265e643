#include "cat0/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cat0 {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double to_double(const Rational& r) { return r.convert_to<double>(); }

MatrixXd rational_to_double(const RationalMatrix& m) {
  MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

// Distinct roots of the squarefree polynomial q that are real and lie in [-2,2].
int distinct_real_roots_in_band(const Poly& q_squarefree) {
  Poly q = q_squarefree;
  int endpoint_roots = 0;
  for (const Rational& r : {Rational(2), Rational(-2)}) {
    if (poly_eval(q, r) == 0) {
      Poly lin{-r, Rational(1)};
      Poly quot, rem;
      poly_divmod(q, lin, quot, rem);
      q = quot;
      ++endpoint_roots;
    }
  }
  int interior = poly_degree(q) > 0 ? sturm_count_open(q, Rational(-2), Rational(2)) : 0;
  return interior + endpoint_roots;
}

double spectral_translation_length(const MatrixXd& m) {
  Eigen::EigenSolver<MatrixXd> es(m);
  double acc = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    double a = std::abs(es.eigenvalues()(k));
    if (a > 1.0) {
      double t = 2.0 * std::log(a);
      acc += t * t;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

std::string isometry_kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
    case IsometryKind::NeutralParabolic: return "neutral-parabolic";
    case IsometryKind::NonNeutralParabolic: return "non-neutral-parabolic";
  }
  throw std::logic_error("unknown isometry kind");
}

IsometryClass classify_symplectic(const RationalMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() < 2)
    throw InvalidInput("classification needs a 2g x 2g matrix");
  if (!is_symplectic_rational(m)) throw InvalidInput("matrix is not symplectic");

  Poly p = char_poly(m);
  if (!poly_is_palindromic(p))
    throw std::logic_error("symplectic characteristic polynomial lost its coefficient symmetry");

  // Semisimple over C exactly when the squarefree part annihilates the matrix.
  Poly sf = poly_squarefree_part(p);
  bool diagonalizable = poly_eval_matrix(sf, m).is_zero();

  // Every root on the unit circle exactly when the reduced polynomial in
  // y = x + 1/x has all of its roots real inside [-2,2].
  Poly q = palindromic_reduce(p);
  Poly qs = poly_squarefree_part(q);
  bool all_on_circle = distinct_real_roots_in_band(qs) == poly_degree(qs);

  IsometryClass out;
  if (diagonalizable)
    out.kind = all_on_circle ? IsometryKind::Elliptic : IsometryKind::Hyperbolic;
  else
    out.kind = all_on_circle ? IsometryKind::NeutralParabolic : IsometryKind::NonNeutralParabolic;
  out.translation_length =
      all_on_circle ? 0.0 : spectral_translation_length(rational_to_double(m));
  out.attained = diagonalizable;
  return out;
}

IsometryClass classify_symplectic(const SymplecticMatrix& m) {
  return classify_symplectic(m.to_rational());
}

double displacement(const SpaceDescriptor& space, const Isometry& iso, const ModelPoint& p) {
  return distance(space, p, apply_isometry(space, iso, p));
}

namespace {

std::vector<ModelPoint> default_seeds(const SpaceDescriptor& space) {
  struct Visitor {
    std::vector<ModelPoint> operator()(const EuclideanSpace& s) const {
      return {EuclideanPoint{VectorXd::Zero(s.dim)}};
    }
    std::vector<ModelPoint> operator()(const TreeSpace& s) const {
      std::vector<ModelPoint> out;
      int step = std::max(1, static_cast<int>(s.tree.edges().size()) / 4);
      for (size_t e = 0; e < s.tree.edges().size() && out.size() < 4; e += step)
        out.push_back(TreePoint{static_cast<int>(e), 0.0});
      return out;
    }
    std::vector<ModelPoint> operator()(const SiegelSpace& s) const {
      std::vector<ModelPoint> out;
      for (double h : {1.0, 10.0, 100.0, 1000.0}) out.push_back(siegel_base_point(s.g, h));
      return out;
    }
    std::vector<ModelPoint> operator()(const ProductSpace& s) const {
      size_t count = 1;
      std::vector<std::vector<ModelPoint>> per;
      for (const auto& f : s.factors) {
        per.push_back(std::visit(Visitor{}, f));
        count = std::max(count, per.back().size());
      }
      std::vector<ModelPoint> out;
      for (size_t k = 0; k < count; ++k) {
        ProductPoint p;
        for (auto& seeds : per) p.parts.push_back(seeds[std::min(k, seeds.size() - 1)]);
        out.push_back(p);
      }
      return out;
    }
  };
  return std::visit(Visitor{}, space);
}

}  // namespace

LengthEstimate translation_length_estimate(const SpaceDescriptor& space, const Isometry& iso,
                                           const EstimateBudget& budget) {
  validate_isometry(space, iso);
  std::vector<ModelPoint> seeds = budget.seeds.empty() ? default_seeds(space) : budget.seeds;
  int per_seed = std::max(1, budget.max_iters / static_cast<int>(seeds.size()));

  double best = std::numeric_limits<double>::infinity();
  bool best_stalled = false;
  for (const ModelPoint& seed : seeds) {
    ModelPoint p = seed;
    double f = displacement(space, iso, p);
    bool stalled = false;
    int flat = 0;
    double local_best = f;
    for (int it = 0; it < per_seed; ++it) {
      if (f < 1e-13) {
        stalled = true;
        break;
      }
      ModelPoint q = apply_isometry(space, iso, p);
      p = geodesic_point(space, p, q, 0.5);
      double f2 = displacement(space, iso, p);
      local_best = std::min(local_best, f2);
      flat = (f - f2 < 1e-12 * std::max(1.0, f2)) ? flat + 1 : 0;
      f = f2;
      if (flat >= 50) {
        stalled = true;
        break;
      }
    }
    if (local_best < best) {
      best = local_best;
      best_stalled = stalled;
    }
  }
  return {best, best_stalled};
}

namespace {

double max_distance(const SpaceDescriptor& space, const ModelPoint& c,
                    const std::vector<ModelPoint>& pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, distance(space, c, p));
  return r;
}

// Minimal enclosing ball by enumerating candidate support subsets: each subset
// determines the ball through its points centered in their affine hull; the true
// ball is the smallest one whose center has nonnegative hull coordinates and
// which covers everything.
std::optional<EnclosingBall> euclid_ball_by_support(const std::vector<VectorXd>& pts) {
  int n = static_cast<int>(pts.size());
  int d = static_cast<int>(pts[0].size());
  int kmax = std::min(n, d + 1);
  double cost = 0;
  for (int k = 1; k <= kmax; ++k) {
    double c = 1;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    cost += c;
  }
  if (cost > 2e5) return std::nullopt;

  std::optional<EnclosingBall> best;
  std::vector<int> idx;
  auto consider = [&]() {
    int k = static_cast<int>(idx.size());
    const VectorXd& p0 = pts[idx[0]];
    MatrixXd b(d, k - 1);
    VectorXd rhs(k - 1);
    for (int j = 1; j < k; ++j) {
      b.col(j - 1) = pts[idx[j]] - p0;
      rhs(j - 1) = 0.5 * b.col(j - 1).squaredNorm();
    }
    VectorXd c = p0;
    if (k > 1) {
      MatrixXd gram = b.transpose() * b;
      Eigen::FullPivLU<MatrixXd> lu(gram);
      if (!lu.isInvertible()) return;
      VectorXd a = lu.solve(rhs);
      double asum = a.sum();
      if (a.minCoeff() < -1e-10 || asum > 1.0 + 1e-10) return;
      c = p0 + b * a;
    }
    double r = (c - p0).norm();
    for (const auto& p : pts)
      if ((p - c).norm() > r + 1e-9 * std::max(1.0, r)) return;
    if (!best || r < best->radius) best = EnclosingBall{EuclideanPoint{c}, r};
  };
  // Enumerate index subsets of size 1..kmax.
  std::function<void(int, int)> rec = [&](int start, int need) {
    if (need == 0) {
      consider();
      return;
    }
    for (int i = start; i <= n - need; ++i) {
      idx.push_back(i);
      rec(i + 1, need - 1);
      idx.pop_back();
    }
  };
  for (int k = 1; k <= kmax; ++k) rec(0, k);
  return best;
}

EnclosingBall descent_ball(const SpaceDescriptor& space, const std::vector<ModelPoint>& pts) {
  int n = static_cast<int>(pts.size());
  // Start at the midpoint of a farthest pair.
  int bi = 0, bj = 0;
  double diam = -1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = distance(space, pts[i], pts[j]);
      if (d > diam) {
        diam = d;
        bi = i;
        bj = j;
      }
    }
  ModelPoint c = geodesic_point(space, pts[bi], pts[bj], 0.5);
  double r = max_distance(space, c, pts);

  double s = 1.0;
  long evals = 0;
  const long eval_budget = 400000;
  while (s > 1e-13 && evals < eval_budget) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return distance(space, c, pts[a]) > distance(space, c, pts[b]);
    });
    evals += 2 * n;
    std::vector<ModelPoint> targets;
    for (int k = 0; k < std::min(n, 3); ++k) targets.push_back(pts[order[k]]);
    if (n >= 2) {
      ModelPoint m = geodesic_point(space, targets[0], targets[1], 0.5);
      if (n >= 3) m = geodesic_point(space, m, targets[2], 1.0 / 3.0);
      targets.push_back(m);
    }
    bool improved = false;
    for (const ModelPoint& t : targets) {
      ModelPoint c2 = geodesic_point(space, c, t, 0.5 * s);
      double r2 = max_distance(space, c2, pts);
      evals += n;
      if (r2 < r - 1e-14 * std::max(1.0, r)) {
        c = c2;
        r = r2;
        improved = true;
        break;
      }
    }
    if (!improved) s *= 0.5;
  }
  return {c, r};
}

}  // namespace

EnclosingBall circumcenter(const SpaceDescriptor& space, const std::vector<ModelPoint>& pts) {
  if (pts.empty()) throw InvalidInput("enclosing ball of an empty point set");
  for (const auto& p : pts) validate_point(space, p);
  if (pts.size() == 1) return {pts[0], 0.0};
  if (pts.size() == 2) {
    ModelPoint m = geodesic_point(space, pts[0], pts[1], 0.5);
    return {m, 0.5 * distance(space, pts[0], pts[1])};
  }

  if (auto* ts = std::get_if<TreeSpace>(&space)) {
    // In a metric tree the minimal ball is centered at the midpoint of any
    // farthest pair, with radius half the diameter.
    int n = static_cast<int>(pts.size());
    int bi = 0, bj = 1;
    double diam = -1.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double d = ts->tree.distance(std::get<TreePoint>(pts[i]), std::get<TreePoint>(pts[j]));
        if (d > diam) {
          diam = d;
          bi = i;
          bj = j;
        }
      }
    ModelPoint c = geodesic_point(space, pts[bi], pts[bj], 0.5);
    return {c, 0.5 * diam};
  }

  if (std::holds_alternative<EuclideanSpace>(space)) {
    std::vector<VectorXd> coords;
    for (const auto& p : pts) coords.push_back(std::get<EuclideanPoint>(p).coords);
    if (auto ball = euclid_ball_by_support(coords)) return *ball;
  }

  return descent_ball(space, pts);
}

}  // namespace cat0
