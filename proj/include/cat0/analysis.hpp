#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cat0/geometry.hpp"
#include "cat0/symplectic.hpp"

namespace cat0 {

enum class IsometryKind { Elliptic, Hyperbolic, NeutralParabolic, NonNeutralParabolic };

std::string isometry_kind_name(IsometryKind k);

struct IsometryClass {
  IsometryKind kind;
  double translation_length;  // infimum of displacement; 0 unless some |eigenvalue| != 1
  bool attained;              // the infimum is realized at a point
};

// Exact classification of a rational symplectic matrix acting on Siegel space:
// diagonalizability and the location of the spectrum relative to the unit circle
// are decided in rational arithmetic; the translation length alone is reported in
// double precision.
IsometryClass classify_symplectic(const RationalMatrix& m);
IsometryClass classify_symplectic(const SymplecticMatrix& m);

double displacement(const SpaceDescriptor& space, const Isometry& iso, const ModelPoint& p);

struct EstimateBudget {
  int max_iters = 20000;
  std::vector<ModelPoint> seeds;  // empty: use space-dependent defaults
};

struct LengthEstimate {
  double value;        // upper bound for the translation length, decreasing in budget
  bool attained_hint;  // the iteration stalled, suggesting the infimum is realized
};

// Halving iteration p <- midpoint(p, iso p), run from several seeds; reports the
// smallest displacement seen.
LengthEstimate translation_length_estimate(const SpaceDescriptor& space, const Isometry& iso,
                                           const EstimateBudget& budget = {});

struct EnclosingBall {
  ModelPoint center;
  double radius;
};

// Minimal enclosing ball.  Exact for trees (diametral pair midpoint), exact up to
// linear-solve rounding for small Euclidean inputs, iterative descent otherwise.
EnclosingBall circumcenter(const SpaceDescriptor& space, const std::vector<ModelPoint>& pts);

}  // namespace cat0
