#include "cat0/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace cat0 {

MetricTree::MetricTree(int vertex_count, std::vector<TreeEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 1) throw InvalidInput("tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != n_ - 1)
    throw InvalidInput("tree must have exactly vertex_count - 1 edges");
  std::vector<std::vector<std::pair<int, int>>> adj(n_);  // (neighbor, edge index)
  for (size_t i = 0; i < edges_.size(); ++i) {
    const TreeEdge& e = edges_[i];
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_ || e.u == e.v)
      throw InvalidInput("tree edge endpoints out of range");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw InvalidInput("tree edge lengths must be positive and finite");
    adj[e.u].push_back({e.v, static_cast<int>(i)});
    adj[e.v].push_back({e.u, static_cast<int>(i)});
  }
  // BFS from every vertex: distances, parents, and (from root 0) connectivity.
  dist_.assign(n_, std::vector<double>(n_, -1.0));
  parent_.assign(n_, std::vector<int>(n_, -1));
  for (int root = 0; root < n_; ++root) {
    std::deque<int> q{root};
    dist_[root][root] = 0.0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto [y, ei] : adj[x]) {
        if (dist_[root][y] >= 0.0) continue;
        dist_[root][y] = dist_[root][x] + edges_[ei].length;
        parent_[root][y] = x;
        q.push_back(y);
      }
    }
  }
  for (int v = 0; v < n_; ++v)
    if (dist_[0][v] < 0.0) throw InvalidInput("tree is not connected");
}

void MetricTree::validate_point(const TreePoint& p) const {
  if (p.edge < 0 || p.edge >= static_cast<int>(edges_.size()))
    throw InvalidInput("tree point references a missing edge");
  if (!(p.offset >= 0.0) || !(p.offset <= edges_[p.edge].length))
    throw InvalidInput("tree point offset outside the edge");
}

double MetricTree::vertex_distance(int u, int v) const { return dist_[u][v]; }

double MetricTree::distance(const TreePoint& p, const TreePoint& q) const {
  validate_point(p);
  validate_point(q);
  if (p.edge == q.edge) return std::abs(p.offset - q.offset);
  const TreeEdge& pe = edges_[p.edge];
  const TreeEdge& qe = edges_[q.edge];
  double best = -1.0;
  for (auto [x, dx] : {std::pair{pe.u, p.offset}, std::pair{pe.v, pe.length - p.offset}})
    for (auto [y, dy] : {std::pair{qe.u, q.offset}, std::pair{qe.v, qe.length - q.offset}}) {
      double cand = dx + dist_[x][y] + dy;
      if (best < 0.0 || cand < best) best = cand;
    }
  return best;
}

std::vector<int> MetricTree::vertex_path(int u, int v) const {
  std::vector<int> path{v};
  while (path.back() != u) path.push_back(parent_[u][path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

int MetricTree::edge_between(int u, int v) const {
  for (size_t i = 0; i < edges_.size(); ++i)
    if ((edges_[i].u == u && edges_[i].v == v) || (edges_[i].u == v && edges_[i].v == u))
      return static_cast<int>(i);
  throw InvalidInput("vertices are not adjacent");
}

TreePoint MetricTree::geodesic_point(const TreePoint& p, const TreePoint& q, double t) const {
  validate_point(p);
  validate_point(q);
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("geodesic parameter must lie in [0,1]");
  double total = distance(p, q);
  if (total == 0.0) return p;
  double s = t * total;
  if (p.edge == q.edge) {
    double dir = q.offset >= p.offset ? 1.0 : -1.0;
    return {p.edge, p.offset + dir * s};
  }
  // Pick the exit/entry endpoints realizing the geodesic.
  const TreeEdge& pe = edges_[p.edge];
  const TreeEdge& qe = edges_[q.edge];
  int bx = pe.u, by = qe.u;
  double bdx = 0.0, bdy = 0.0, best = -1.0;
  for (auto [x, dx] : {std::pair{pe.u, p.offset}, std::pair{pe.v, pe.length - p.offset}})
    for (auto [y, dy] : {std::pair{qe.u, q.offset}, std::pair{qe.v, qe.length - q.offset}}) {
      double cand = dx + dist_[x][y] + dy;
      if (best < 0.0 || cand < best - 1e-15) {
        best = cand;
        bx = x;
        by = y;
        bdx = dx;
        bdy = dy;
      }
    }
  // Walk: p -> bx along p.edge, then vertex path, then by -> q.
  if (s <= bdx) {
    double dir = (bx == pe.u) ? -1.0 : 1.0;
    return {p.edge, p.offset + dir * s};
  }
  s -= bdx;
  std::vector<int> path = vertex_path(bx, by);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int ei = edge_between(path[i], path[i + 1]);
    double len = edges_[ei].length;
    if (s <= len) {
      bool forward = edges_[ei].u == path[i];
      return {ei, forward ? s : len - s};
    }
    s -= len;
  }
  // Tail segment on q.edge from by toward q.
  double dir = (by == qe.u) ? 1.0 : -1.0;
  double start = (by == qe.u) ? 0.0 : qe.length;
  double off = start + dir * std::min(s, bdy);
  return {q.edge, std::clamp(off, 0.0, qe.length)};
}

namespace {

struct SubtreeView {
  std::map<int, ConvexSubtree::Interval> by_edge;
  std::set<int> verts;  // all member vertices, including interval endpoints
};

SubtreeView view_of(const MetricTree& tree, const ConvexSubtree& s) {
  SubtreeView v;
  for (const auto& iv : s.intervals) v.by_edge[iv.edge] = iv;
  for (int x : s.vertices) v.verts.insert(x);
  for (const auto& [ei, iv] : v.by_edge) {
    const TreeEdge& e = tree.edges()[ei];
    if (iv.lo == 0.0) v.verts.insert(e.u);
    if (iv.hi == e.length) v.verts.insert(e.v);
  }
  return v;
}

}  // namespace

void validate_convex_subtree(const MetricTree& tree, const ConvexSubtree& s) {
  std::set<int> seen_edges;
  for (const auto& iv : s.intervals) {
    if (iv.edge < 0 || iv.edge >= static_cast<int>(tree.edges().size()))
      throw InvalidInput("subtree interval on a missing edge");
    if (!seen_edges.insert(iv.edge).second)
      throw InvalidInput("subtree has two intervals on one edge");
    if (!(iv.lo >= 0.0) || !(iv.hi <= tree.edges()[iv.edge].length) || !(iv.lo <= iv.hi))
      throw InvalidInput("subtree interval bounds out of order");
  }
  for (int x : s.vertices)
    if (x < 0 || x >= tree.vertex_count()) throw InvalidInput("subtree vertex out of range");
  if (s.intervals.empty() && s.vertices.empty()) throw InvalidInput("subtree is empty");

  // Connectivity: union intervals with the vertices they reach.
  SubtreeView v = view_of(tree, s);
  std::map<int, int> vert_node;
  int next = 0;
  for (int x : v.verts) vert_node[x] = next++;
  std::map<int, int> edge_node;
  for (const auto& [ei, iv] : v.by_edge) edge_node[ei] = next++;
  std::vector<int> uf(next);
  for (int i = 0; i < next; ++i) uf[i] = i;
  auto find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
  for (const auto& [ei, iv] : v.by_edge) {
    const TreeEdge& e = tree.edges()[ei];
    if (iv.lo == 0.0) unite(edge_node[ei], vert_node[e.u]);
    if (iv.hi == e.length) unite(edge_node[ei], vert_node[e.v]);
  }
  int root = -1;
  for (int i = 0; i < next; ++i) {
    if (root < 0) root = find(i);
    if (find(i) != root) throw InvalidInput("subtree is not connected (hence not convex)");
  }
}

bool subtree_contains_vertex(const MetricTree& tree, const ConvexSubtree& s, int v) {
  return view_of(tree, s).verts.count(v) > 0;
}

bool subtree_contains_point(const MetricTree& tree, const ConvexSubtree& s, const TreePoint& p) {
  tree.validate_point(p);
  SubtreeView v = view_of(tree, s);
  auto it = v.by_edge.find(p.edge);
  if (it != v.by_edge.end() && p.offset >= it->second.lo && p.offset <= it->second.hi) return true;
  const TreeEdge& e = tree.edges()[p.edge];
  if (p.offset == 0.0 && v.verts.count(e.u)) return true;
  if (p.offset == e.length && v.verts.count(e.v)) return true;
  return false;
}

std::optional<ConvexSubtree> subtree_intersection(const MetricTree& tree, const ConvexSubtree& a,
                                                  const ConvexSubtree& b) {
  SubtreeView va = view_of(tree, a), vb = view_of(tree, b);
  ConvexSubtree out;
  std::set<int> covered_verts;
  for (const auto& [ei, ia] : va.by_edge) {
    auto it = vb.by_edge.find(ei);
    if (it == vb.by_edge.end()) continue;
    double lo = std::max(ia.lo, it->second.lo);
    double hi = std::min(ia.hi, it->second.hi);
    if (lo > hi) continue;
    out.intervals.push_back({ei, lo, hi});
    const TreeEdge& e = tree.edges()[ei];
    if (lo == 0.0) covered_verts.insert(e.u);
    if (hi == e.length) covered_verts.insert(e.v);
  }
  for (int x : va.verts)
    if (vb.verts.count(x) && !covered_verts.count(x)) out.vertices.push_back(x);
  if (out.intervals.empty() && out.vertices.empty()) return std::nullopt;
  return out;
}

TreePoint subtree_any_point(const MetricTree& tree, const ConvexSubtree& s) {
  if (!s.intervals.empty()) {
    auto best = std::min_element(s.intervals.begin(), s.intervals.end(),
                                 [](const auto& x, const auto& y) { return x.edge < y.edge; });
    return {best->edge, best->lo};
  }
  if (s.vertices.empty()) throw InvalidInput("empty subtree has no representative point");
  int v = *std::min_element(s.vertices.begin(), s.vertices.end());
  for (size_t i = 0; i < tree.edges().size(); ++i) {
    if (tree.edges()[i].u == v) return {static_cast<int>(i), 0.0};
    if (tree.edges()[i].v == v) return {static_cast<int>(i), tree.edges()[i].length};
  }
  throw InvalidInput("isolated vertex in a tree with no incident edge");
}

}  // namespace cat0
