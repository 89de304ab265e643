#include "cat0/geometry.hpp"

#include <cmath>
#include <set>

namespace cat0 {

namespace {

template <class... Ts>
struct overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overload(Ts...) -> overload<Ts...>;

[[noreturn]] void mismatch(const char* what) {
  throw InvalidInput(std::string("point/space mismatch: ") + what);
}

}  // namespace

void validate_space(const SpaceDescriptor& space) {
  std::visit(overload{
                 [](const EuclideanSpace& s) {
                   if (s.dim < 1) throw InvalidInput("Euclidean factor needs dim >= 1");
                 },
                 [](const TreeSpace&) { /* MetricTree validated itself */ },
                 [](const SiegelSpace& s) {
                   if (s.g < 1) throw InvalidInput("Siegel factor needs g >= 1");
                 },
                 [](const ProductSpace& s) {
                   if (s.factors.empty()) throw InvalidInput("product of no factors");
                   for (const auto& f : s.factors) validate_space(f);
                 },
             },
             space);
}

void validate_point(const SpaceDescriptor& space, const ModelPoint& p) {
  std::visit(
      overload{
          [&](const EuclideanSpace& s) {
            auto* e = std::get_if<EuclideanPoint>(&p);
            if (!e || e->coords.size() != s.dim) mismatch("Euclidean coordinates");
            if (!e->coords.allFinite()) throw InvalidInput("non-finite coordinate");
          },
          [&](const TreeSpace& s) {
            auto* t = std::get_if<TreePoint>(&p);
            if (!t) mismatch("tree point");
            s.tree.validate_point(*t);
          },
          [&](const SiegelSpace& s) {
            auto* z = std::get_if<SiegelPoint>(&p);
            if (!z || z->g() != s.g) mismatch("Siegel block size");
            validate_siegel_point(*z);
          },
          [&](const ProductSpace& s) {
            auto* pr = std::get_if<ProductPoint>(&p);
            if (!pr || pr->parts.size() != s.factors.size()) mismatch("product arity");
            for (size_t i = 0; i < s.factors.size(); ++i)
              validate_point(s.factors[i], pr->parts[i]);
          },
      },
      space);
}

void validate_isometry(const SpaceDescriptor& space, const Isometry& iso) {
  std::visit(
      overload{
          [&](const EuclideanSpace& s) {
            auto* e = std::get_if<EuclideanIsometry>(&iso);
            if (!e || e->q.rows() != s.dim || e->q.cols() != s.dim || e->v.size() != s.dim)
              mismatch("Euclidean isometry shape");
            Eigen::MatrixXd qq = e->q.transpose() * e->q;
            if ((qq - Eigen::MatrixXd::Identity(s.dim, s.dim)).cwiseAbs().maxCoeff() > 1e-9)
              throw InvalidInput("Euclidean isometry matrix is not orthogonal");
          },
          [&](const TreeSpace& s) {
            auto* t = std::get_if<TreeIsometry>(&iso);
            if (!t || static_cast<int>(t->vertex_map.size()) != s.tree.vertex_count())
              mismatch("tree automorphism size");
            std::set<int> image(t->vertex_map.begin(), t->vertex_map.end());
            if (static_cast<int>(image.size()) != s.tree.vertex_count() ||
                *image.begin() < 0 || *image.rbegin() >= s.tree.vertex_count())
              throw InvalidInput("tree automorphism is not a vertex bijection");
            for (const TreeEdge& e : s.tree.edges()) {
              int ei = -1;
              try {
                ei = s.tree.edge_between(t->vertex_map[e.u], t->vertex_map[e.v]);
              } catch (const InvalidInput&) {
                throw InvalidInput("tree automorphism does not preserve edges");
              }
              if (s.tree.edges()[ei].length != e.length)
                throw InvalidInput("tree automorphism does not preserve edge lengths");
            }
          },
          [&](const SiegelSpace& s) {
            auto* z = std::get_if<SiegelIsometry>(&iso);
            if (!z || z->m.rows() != 2 * s.g || z->m.cols() != 2 * s.g)
              mismatch("symplectic matrix size");
            if (!is_real_symplectic(z->m)) throw InvalidInput("matrix is not symplectic");
          },
          [&](const ProductSpace& s) {
            auto* pr = std::get_if<ProductIsometry>(&iso);
            if (!pr || pr->parts.size() != s.factors.size()) mismatch("product isometry arity");
            for (size_t i = 0; i < s.factors.size(); ++i)
              validate_isometry(s.factors[i], pr->parts[i]);
          },
      },
      space);
}

double distance(const SpaceDescriptor& space, const ModelPoint& p, const ModelPoint& q) {
  validate_point(space, p);
  validate_point(space, q);
  return std::visit(
      overload{
          [&](const EuclideanSpace&) {
            return (std::get<EuclideanPoint>(p).coords - std::get<EuclideanPoint>(q).coords)
                .norm();
          },
          [&](const TreeSpace& s) {
            return s.tree.distance(std::get<TreePoint>(p), std::get<TreePoint>(q));
          },
          [&](const SiegelSpace&) {
            return siegel_distance(std::get<SiegelPoint>(p), std::get<SiegelPoint>(q));
          },
          [&](const ProductSpace& s) {
            const auto& a = std::get<ProductPoint>(p).parts;
            const auto& b = std::get<ProductPoint>(q).parts;
            double d2 = 0.0;
            for (size_t i = 0; i < s.factors.size(); ++i) {
              double d = distance(s.factors[i], a[i], b[i]);
              d2 += d * d;
            }
            return std::sqrt(d2);
          },
      },
      space);
}

ModelPoint geodesic_point(const SpaceDescriptor& space, const ModelPoint& p,
                          const ModelPoint& q, double t) {
  validate_point(space, p);
  validate_point(space, q);
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("geodesic parameter must lie in [0,1]");
  return std::visit(
      overload{
          [&](const EuclideanSpace&) -> ModelPoint {
            const auto& a = std::get<EuclideanPoint>(p).coords;
            const auto& b = std::get<EuclideanPoint>(q).coords;
            return EuclideanPoint{(1.0 - t) * a + t * b};
          },
          [&](const TreeSpace& s) -> ModelPoint {
            return s.tree.geodesic_point(std::get<TreePoint>(p), std::get<TreePoint>(q), t);
          },
          [&](const SiegelSpace&) -> ModelPoint {
            return siegel_geodesic_point(std::get<SiegelPoint>(p), std::get<SiegelPoint>(q), t);
          },
          [&](const ProductSpace& s) -> ModelPoint {
            const auto& a = std::get<ProductPoint>(p).parts;
            const auto& b = std::get<ProductPoint>(q).parts;
            ProductPoint out;
            for (size_t i = 0; i < s.factors.size(); ++i)
              out.parts.push_back(geodesic_point(s.factors[i], a[i], b[i], t));
            return out;
          },
      },
      space);
}

ModelPoint apply_isometry(const SpaceDescriptor& space, const Isometry& iso,
                          const ModelPoint& p) {
  validate_isometry(space, iso);
  validate_point(space, p);
  return std::visit(
      overload{
          [&](const EuclideanSpace&) -> ModelPoint {
            const auto& e = std::get<EuclideanIsometry>(iso);
            return EuclideanPoint{e.q * std::get<EuclideanPoint>(p).coords + e.v};
          },
          [&](const TreeSpace& s) -> ModelPoint {
            const auto& t = std::get<TreeIsometry>(iso);
            const auto& pt = std::get<TreePoint>(p);
            const TreeEdge& e = s.tree.edges()[pt.edge];
            int u2 = t.vertex_map[e.u], v2 = t.vertex_map[e.v];
            int ei = s.tree.edge_between(u2, v2);
            const TreeEdge& e2 = s.tree.edges()[ei];
            double off = (e2.u == u2) ? pt.offset : e2.length - pt.offset;
            return TreePoint{ei, off};
          },
          [&](const SiegelSpace&) -> ModelPoint {
            return siegel_apply(std::get<SiegelIsometry>(iso).m, std::get<SiegelPoint>(p));
          },
          [&](const ProductSpace& s) -> ModelPoint {
            const auto& parts = std::get<ProductIsometry>(iso).parts;
            const auto& pts = std::get<ProductPoint>(p).parts;
            ProductPoint out;
            for (size_t i = 0; i < s.factors.size(); ++i)
              out.parts.push_back(apply_isometry(s.factors[i], parts[i], pts[i]));
            return out;
          },
      },
      space);
}

}  // namespace cat0
