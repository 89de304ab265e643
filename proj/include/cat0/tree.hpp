#pragma once

#include <optional>
#include <vector>

#include "cat0/exact.hpp"

namespace cat0 {

struct TreeEdge {
  int u = 0, v = 0;
  double length = 0.0;
};

/// Point on a metric tree: offset along edges[edge] measured from its u end.
/// offset == 0 is the u vertex, offset == length the v vertex; points at a
/// vertex may be written on any incident edge and compare equal through
/// distances.
struct TreePoint {
  int edge = 0;
  double offset = 0.0;
};

/// Finite combinatorial tree with positive edge lengths.  Vertices are
/// 0..vertex_count-1; connectivity and acyclicity are enforced on
/// construction.  Distances are exact path sums.
class MetricTree {
 public:
  MetricTree(int vertex_count, std::vector<TreeEdge> edges);

  int vertex_count() const { return n_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }

  void validate_point(const TreePoint& p) const;
  double vertex_distance(int u, int v) const;
  double distance(const TreePoint& p, const TreePoint& q) const;
  /// Point at parameter t in [0,1] along the unique geodesic from p to q.
  TreePoint geodesic_point(const TreePoint& p, const TreePoint& q, double t) const;

  /// Vertex sequence of the unique path from u to v (inclusive).
  std::vector<int> vertex_path(int u, int v) const;
  /// Edge index joining two adjacent vertices.
  int edge_between(int u, int v) const;

 private:
  int n_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<double>> dist_;   // vertex-to-vertex
  std::vector<std::vector<int>> parent_;    // parent_[root][v] on the path to root
};

/// Closed convex subset of a metric tree: a union of closed edge intervals
/// and vertices forming a connected set.  `intervals` holds at most one
/// closed sub-interval per edge; `vertices` lists members not already covered
/// by an interval endpoint (isolated vertices, typically).
struct ConvexSubtree {
  struct Interval {
    int edge = 0;
    double lo = 0.0, hi = 0.0;
  };
  std::vector<Interval> intervals;
  std::vector<int> vertices;
};

/// Checks interval bounds, the one-interval-per-edge rule and connectivity;
/// throws InvalidInput on violation.
void validate_convex_subtree(const MetricTree& tree, const ConvexSubtree& s);

bool subtree_contains_vertex(const MetricTree& tree, const ConvexSubtree& s, int v);
bool subtree_contains_point(const MetricTree& tree, const ConvexSubtree& s, const TreePoint& p);

/// Intersection of two convex subtrees (possibly empty).  Inputs must be
/// valid; the result is again convex.
std::optional<ConvexSubtree> subtree_intersection(const MetricTree& tree, const ConvexSubtree& a,
                                                  const ConvexSubtree& b);

/// Deterministic representative point of a nonempty convex subtree.
TreePoint subtree_any_point(const MetricTree& tree, const ConvexSubtree& s);

}  // namespace cat0
