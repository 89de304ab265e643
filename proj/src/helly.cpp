#include "cat0/helly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "lp.hpp"

namespace cat0 {

TreeHellyReport helly_check_tree(const MetricTree& tree, const std::vector<ConvexSubtree>& sets) {
  if (sets.empty()) throw InvalidInput("empty family of subtrees");
  for (const auto& s : sets) validate_convex_subtree(tree, s);
  int m = static_cast<int>(sets.size());

  TreeHellyReport rep;
  rep.pairwise = true;
  for (int i = 0; i < m && rep.pairwise; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!subtree_intersection(tree, sets[i], sets[j])) {
        rep.pairwise = false;
        rep.disjoint_pair = {i, j};
        break;
      }

  std::optional<ConvexSubtree> common = sets[0];
  for (int i = 1; i < m && common; ++i) common = subtree_intersection(tree, *common, sets[i]);
  rep.all = common.has_value();
  if (common) {
    TreePoint p = subtree_any_point(tree, *common);
    for (const auto& s : sets)
      if (!subtree_contains_point(tree, s, p))
        throw std::logic_error("subtree intersection produced a point outside a member set");
    rep.common_point = p;
  }
  return rep;
}

namespace {

struct RationalRows {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
};

RationalRows relax_rows(const Polyhedron& p) {
  RationalRows out;
  const Rational tol(1e-9);  // exact binary value of the literal
  for (int i = 0; i < p.a.rows(); ++i) {
    std::vector<Rational> row(p.a.cols());
    for (int j = 0; j < p.a.cols(); ++j) row[j] = Rational(p.a(i, j));
    Rational rhs(p.b(i));
    Rational mag = rhs < 0 ? Rational(-rhs) : rhs;
    if (mag < 1) mag = 1;
    out.a.push_back(std::move(row));
    out.b.push_back(rhs + tol * mag);
  }
  return out;
}

FeasibilityResult<Rational> subset_feasible(int dim, const std::vector<RationalRows>& rows,
                                            const std::vector<int>& subset) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int k : subset) {
    a.insert(a.end(), rows[k].a.begin(), rows[k].a.end());
    b.insert(b.end(), rows[k].b.begin(), rows[k].b.end());
  }
  return lp_feasible<Rational>(dim, a, b);
}

}  // namespace

EuclidHellyReport helly_check_euclidean(int dim, const std::vector<Polyhedron>& sets) {
  if (dim < 1) throw InvalidInput("Helly check needs dim >= 1");
  if (sets.empty()) throw InvalidInput("empty family of polyhedra");
  for (const auto& s : sets) {
    if (s.a.cols() != dim || s.a.rows() != s.b.size() || s.a.rows() == 0)
      throw InvalidInput("polyhedron rows do not match the dimension");
    if (!s.a.allFinite() || !s.b.allFinite()) throw InvalidInput("non-finite polyhedron data");
  }
  int m = static_cast<int>(sets.size());
  std::vector<RationalRows> rows;
  for (const auto& s : sets) rows.push_back(relax_rows(s));

  for (int s = 0; s < m; ++s) {
    if (!subset_feasible(dim, rows, {s}).feasible)
      throw InvalidInput("polyhedron " + std::to_string(s) + " is empty");
    // Bounded iff the recession cone {d : a d <= 0} is {0}: a nonzero
    // direction can be scaled until some coordinate reaches +-1.
    std::vector<Rational> zero(rows[s].b.size(), Rational(0));
    for (int j = 0; j < dim; ++j)
      for (int sign : {1, -1}) {
        auto a = rows[s].a;
        auto b = zero;
        std::vector<Rational> push(dim, Rational(0));
        push[j] = -sign;
        a.push_back(std::move(push));
        b.push_back(Rational(-1));
        if (lp_feasible<Rational>(dim, a, b).feasible)
          throw InvalidInput("polyhedron " + std::to_string(s) + " is unbounded");
      }
  }

  EuclidHellyReport rep;
  rep.subsets_feasible = true;
  int k = std::min(dim + 1, m);
  std::vector<int> idx;
  std::function<bool(int, int)> rec = [&](int start, int need) {
    if (need == 0) {
      if (!subset_feasible(dim, rows, idx).feasible) {
        rep.subsets_feasible = false;
        rep.infeasible_subset = idx;
        return true;
      }
      return false;
    }
    for (int i = start; i <= m - need; ++i) {
      idx.push_back(i);
      bool stop = rec(i + 1, need - 1);
      idx.pop_back();
      if (stop) return true;
    }
    return false;
  };
  rec(0, k);

  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  auto global = subset_feasible(dim, rows, all);
  rep.all_feasible = global.feasible;
  if (global.feasible) {
    for (int s = 0; s < m; ++s)
      for (size_t r = 0; r < rows[s].a.size(); ++r) {
        Rational lhs(0);
        for (int j = 0; j < dim; ++j) lhs += rows[s].a[r][j] * global.x[j];
        if (lhs > rows[s].b[r])
          throw std::logic_error("feasibility witness failed an exact membership re-check");
      }
    Eigen::VectorXd w(dim);
    for (int j = 0; j < dim; ++j) w(j) = global.x[j].convert_to<double>();
    rep.common_point = w;
  }
  return rep;
}

}  // namespace cat0
