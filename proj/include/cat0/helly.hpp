#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "cat0/tree.hpp"

namespace cat0 {

struct TreeHellyReport {
  bool pairwise = false;  // every pair of sets meets
  std::optional<std::pair<int, int>> disjoint_pair;
  bool all = false;  // the whole family has a common point
  std::optional<TreePoint> common_point;
  bool consistent() const { return !pairwise || all; }
};

TreeHellyReport helly_check_tree(const MetricTree& tree, const std::vector<ConvexSubtree>& sets);

// Convex polyhedron { x : a x <= b }, row-wise.
struct Polyhedron {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

struct EuclidHellyReport {
  bool subsets_feasible = false;  // every (dim+1)-element subfamily meets
  std::optional<std::vector<int>> infeasible_subset;
  bool all_feasible = false;  // the whole family meets
  std::optional<Eigen::VectorXd> common_point;
  bool consistent() const { return !subsets_feasible || all_feasible; }
};

// Intersections are decided in exact rational arithmetic on the system
// a x <= b + 1e-9 * max(1, |b|) applied row-wise, so touching boundaries count
// as meeting.  The common point, when reported, has been re-checked against
// every row of every set.
EuclidHellyReport helly_check_euclidean(int dim, const std::vector<Polyhedron>& sets);

}  // namespace cat0
