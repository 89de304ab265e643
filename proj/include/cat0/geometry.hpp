#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "cat0/siegel.hpp"
#include "cat0/tree.hpp"

namespace cat0 {

// ---- spaces ----------------------------------------------------------------

struct SpaceDescriptor;

struct EuclideanSpace {
  int dim = 0;
};
struct TreeSpace {
  MetricTree tree;
};
struct SiegelSpace {
  int g = 1;
};
struct ProductSpace {
  std::vector<SpaceDescriptor> factors;
};

struct SpaceDescriptor
    : std::variant<EuclideanSpace, TreeSpace, SiegelSpace, ProductSpace> {
  using variant::variant;
};

// ---- points ----------------------------------------------------------------

struct ModelPoint;

struct EuclideanPoint {
  Eigen::VectorXd coords;
};
struct ProductPoint {
  std::vector<ModelPoint> parts;
};

struct ModelPoint : std::variant<EuclideanPoint, TreePoint, SiegelPoint, ProductPoint> {
  using variant::variant;
};

// ---- isometries ------------------------------------------------------------

struct Isometry;

struct EuclideanIsometry {
  Eigen::MatrixXd q;  // orthogonal
  Eigen::VectorXd v;
};
struct TreeIsometry {
  std::vector<int> vertex_map;  // length-preserving graph automorphism
};
struct SiegelIsometry {
  Eigen::MatrixXd m;  // real symplectic
};
struct ProductIsometry {
  std::vector<Isometry> parts;  // acts factor-wise
};

struct Isometry
    : std::variant<EuclideanIsometry, TreeIsometry, SiegelIsometry, ProductIsometry> {
  using variant::variant;
};

// ---- operations ------------------------------------------------------------

void validate_space(const SpaceDescriptor& space);
void validate_point(const SpaceDescriptor& space, const ModelPoint& p);
void validate_isometry(const SpaceDescriptor& space, const Isometry& iso);

double distance(const SpaceDescriptor& space, const ModelPoint& p, const ModelPoint& q);

// Point at parameter t in [0,1] along the geodesic from p to q.  On a product the
// factor geodesics share the parameter, which traverses the product geodesic at
// constant speed.
ModelPoint geodesic_point(const SpaceDescriptor& space, const ModelPoint& p,
                          const ModelPoint& q, double t);

ModelPoint apply_isometry(const SpaceDescriptor& space, const Isometry& iso,
                          const ModelPoint& p);

}  // namespace cat0
