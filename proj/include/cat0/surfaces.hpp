#pragma once

// Combinatorial topology of the Lickorish curve system on a closed orientable
// genus-g surface: ribbon (fat-graph) neighborhoods of curve subsets, exact
// complement analysis via a cut-open CW complex, enveloping subsurfaces, and
// the exact symplectic action of Dehn twists on first homology.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cat0/symplectic.hpp"

namespace cat0 {

using CurveMask = std::uint32_t;

enum class CurveFamily { A, B, C };

struct Curve {
  CurveFamily family;
  int handle;        // 0-based handle index for a/b, gap index for c
  std::string name;  // "a1".."ag", "b1".."bg", "c1".."c(g-1)" (1-based labels)
};

struct Crossing {
  int p, q;  // the two curves meeting at this point
  int sign;  // +1 if (p,q) is a positively oriented frame at the point
};

struct SubsurfaceType {
  int genus = 0;
  int boundary = 0;
  bool operator==(const SubsurfaceType&) const = default;
};

// Invariants of one connected component of the ribbon neighborhood N(S).
struct RibbonComponent {
  std::vector<int> curves;
  int crossings = 0;
  int chi = 0;
  int boundary = 0;
  int genus = 0;
  bool separating = false;  // complement of this component alone is disconnected
};

// One connected component of the complement of N(S).
struct ComplementComponent {
  int chi = 0;
  int boundary = 0;
  int genus = 0;
  bool disk = false;
  std::vector<int> circles;  // global boundary-circle ids
};

// A boundary circle of N(S); the same circle bounds a complement component.
struct BoundaryCircle {
  int ribbon_component = -1;
  int complement_component = -1;
};

struct NeighborhoodReport {
  std::vector<RibbonComponent> components;
  std::vector<ComplementComponent> complement;
  std::vector<BoundaryCircle> circles;
};

// A compact subsurface containing N(S), formed by absorbing all complement
// components except one. The remaining component is the new complement, so the
// envelope automatically has connected complement.
struct EnvelopeCandidate {
  SubsurfaceType type;
  int remaining_component = -1;
  std::vector<int> absorbed;
  bool whole_surface = false;  // remaining component is a disk
};

struct Envelope {
  std::vector<EnvelopeCandidate> candidates;  // sorted by (genus, boundary)
  bool degenerate = false;                    // every complement component is a disk
};

struct Prop52Violation {
  CurveMask subset = 0;
  SubsurfaceType best;
};

struct Prop52Report {
  int genus = 0;
  long long connected_checked = 0;
  long long satisfied = 0;
  long long degenerate = 0;
  std::vector<Prop52Violation> violations;
};

struct RelationReport {
  long long commuting_pairs = 0;
  long long braid_pairs = 0;
  bool ok = true;
};

class LickorishSystem {
 public:
  explicit LickorishSystem(int genus);

  int genus() const { return g_; }
  int curve_count() const { return static_cast<int>(curves_.size()); }
  const std::vector<Curve>& curves() const { return curves_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  int curve_index(const std::string& name) const;  // -1 if unknown

  // Crossing index of curves p and q, or -1 when they are disjoint.
  int crossing_between(int p, int q) const;

  const Eigen::VectorXi& homology_class(int curve) const;
  SymplecticMatrix twist_matrix(int curve) const;

  bool subset_connected(CurveMask mask) const;
  std::vector<CurveMask> connected_components(CurveMask mask) const;

  NeighborhoodReport neighborhood(CurveMask mask) const;

  // pre: mask nonempty and connected.
  Envelope enveloping_subsurface(CurveMask mask) const;

 private:
  void build_curves();
  void build_crossings();
  void build_darts();
  void build_homology();
  int face_orbit_count() const;

  friend struct CutComplex;

  int g_;
  std::vector<Curve> curves_;
  std::vector<Crossing> crossings_;
  std::vector<std::vector<int>> curve_order_;  // crossing ids along each curve
  std::vector<int> slot_curve_;                // dart -> curve
  std::vector<int> slot_role_;                 // dart -> 0 leave, 1 arrive
  std::vector<int> iota_;                      // dart -> opposite end of its arc
  std::vector<Eigen::VectorXi> homology_;
};

// Decides whether a connected curve system with the given neighborhood report
// embeds in a subsurface of the requested type whose complement is connected.
// The subsurface is obtained by discarding a connected piece carved out of a
// single complement component; Euler counting makes the test exact: some
// complement component (gc, bc) must admit gamma = genus - h - b + 1 with
// 0 <= gamma <= gc and b <= gc + bc - gamma.
bool enclosure_achievable(int genus, const NeighborhoodReport& rep, SubsurfaceType target);

Prop52Report verify_prop52(int genus);

// Exact check of the commuting/braid relations between all pairs of twist
// matrices: disjoint curves commute, once-crossing curves satisfy the braid
// relation.
RelationReport check_relations(int genus);

}  // namespace cat0
