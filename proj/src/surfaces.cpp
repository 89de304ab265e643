#include "cat0/surfaces.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "cat0/exact.hpp"

namespace cat0 {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

inline int sigma(int d) { return (d & ~3) | ((d + 1) & 3); }
inline int sigma_inv(int d) { return (d & ~3) | ((d + 3) & 3); }

}  // namespace

LickorishSystem::LickorishSystem(int genus) : g_(genus) {
  if (genus < 1) throw InvalidInput("lickorish system requires genus >= 1");
  if (genus > 10) throw InvalidInput("genus above 10 unsupported (32-bit curve masks)");
  build_curves();
  build_crossings();
  build_darts();
  build_homology();
  // The full system fills the surface: its ribbon complement must consist of
  // exactly g disks. This pins down the rotation and sign conventions.
  int faces = face_orbit_count();
  if (faces != g_)
    throw std::logic_error("fat-graph conventions broken: expected " + std::to_string(g_) +
                           " complement disks, found " + std::to_string(faces));
}

void LickorishSystem::build_curves() {
  curves_.clear();
  for (int i = 0; i < g_; ++i) curves_.push_back({CurveFamily::A, i, "a" + std::to_string(i + 1)});
  for (int i = 0; i < g_; ++i) curves_.push_back({CurveFamily::B, i, "b" + std::to_string(i + 1)});
  for (int i = 0; i + 1 < g_; ++i)
    curves_.push_back({CurveFamily::C, i, "c" + std::to_string(i + 1)});
}

void LickorishSystem::build_crossings() {
  auto a = [&](int i) { return i; };
  auto b = [&](int i) { return g_ + i; };
  auto c = [&](int i) { return 2 * g_ + i; };

  crossings_.clear();
  for (int i = 0; i < g_; ++i) crossings_.push_back({a(i), b(i), +1});
  for (int i = 0; i + 1 < g_; ++i) {
    crossings_.push_back({c(i), b(i), +1});
    crossings_.push_back({c(i), b(i + 1), -1});
  }

  int n = curve_count();
  // Order of crossings along each curve. For b_i the order is
  // (c_{i-1}, a_i, c_i); for c_i it is (b_i, b_{i+1}).
  curve_order_.assign(n, {});
  auto xing = [&](int p, int q) {
    for (int k = 0; k < static_cast<int>(crossings_.size()); ++k) {
      const Crossing& x = crossings_[k];
      if ((x.p == p && x.q == q) || (x.p == q && x.q == p)) return k;
    }
    throw std::logic_error("missing crossing");
  };
  for (int i = 0; i < g_; ++i) curve_order_[a(i)] = {xing(a(i), b(i))};
  for (int i = 0; i < g_; ++i) {
    std::vector<int>& ord = curve_order_[b(i)];
    if (i >= 1) ord.push_back(xing(c(i - 1), b(i)));
    ord.push_back(xing(a(i), b(i)));
    if (i + 1 < g_) ord.push_back(xing(c(i), b(i)));
  }
  for (int i = 0; i + 1 < g_; ++i) curve_order_[c(i)] = {xing(c(i), b(i)), xing(c(i), b(i + 1))};
}

void LickorishSystem::build_darts() {
  int V = static_cast<int>(crossings_.size());
  slot_curve_.assign(4 * V, -1);
  slot_role_.assign(4 * V, -1);
  // Counterclockwise slot order at a crossing of (p,q):
  //   sign +1: p-leave, q-leave, p-arrive, q-arrive
  //   sign -1: p-leave, q-arrive, p-arrive, q-leave
  for (int x = 0; x < V; ++x) {
    const Crossing& cr = crossings_[x];
    int base = 4 * x;
    slot_curve_[base + 0] = cr.p;
    slot_role_[base + 0] = 0;
    slot_curve_[base + 2] = cr.p;
    slot_role_[base + 2] = 1;
    if (cr.sign > 0) {
      slot_curve_[base + 1] = cr.q;
      slot_role_[base + 1] = 0;
      slot_curve_[base + 3] = cr.q;
      slot_role_[base + 3] = 1;
    } else {
      slot_curve_[base + 1] = cr.q;
      slot_role_[base + 1] = 1;
      slot_curve_[base + 3] = cr.q;
      slot_role_[base + 3] = 0;
    }
  }

  auto dart_at = [&](int x, int curve, int role) {
    for (int k = 0; k < 4; ++k) {
      int d = 4 * x + k;
      if (slot_curve_[d] == curve && slot_role_[d] == role) return d;
    }
    throw std::logic_error("dart lookup failed");
  };

  iota_.assign(4 * V, -1);
  for (int p = 0; p < curve_count(); ++p) {
    const std::vector<int>& ord = curve_order_[p];
    int n = static_cast<int>(ord.size());
    for (int j = 0; j < n; ++j) {
      int x = ord[j];
      int y = ord[(j + 1) % n];
      int leave = dart_at(x, p, 0);
      int arrive = dart_at(y, p, 1);
      iota_[leave] = arrive;
      iota_[arrive] = leave;
    }
  }
}

void LickorishSystem::build_homology() {
  // Basis e_1..e_g, e_{g+1}..e_{2g} with <e_i, e_{g+i}> = +1.
  // [a_i] = e_i, [b_i] = e_{g+i}, [c_i] = e_i - e_{i+1}; chosen so that the
  // algebraic pairing of two classes matches the crossing signs exactly.
  homology_.clear();
  for (int i = 0; i < g_; ++i) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(2 * g_);
    v(i) = 1;
    homology_.push_back(v);
  }
  for (int i = 0; i < g_; ++i) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(2 * g_);
    v(g_ + i) = 1;
    homology_.push_back(v);
  }
  for (int i = 0; i + 1 < g_; ++i) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(2 * g_);
    v(i) = 1;
    v(i + 1) = -1;
    homology_.push_back(v);
  }
}

int LickorishSystem::face_orbit_count() const {
  int V = static_cast<int>(crossings_.size());
  std::vector<char> seen(4 * V, 0);
  int orbits = 0;
  for (int d0 = 0; d0 < 4 * V; ++d0) {
    if (seen[d0]) continue;
    ++orbits;
    int d = d0;
    do {
      seen[d] = 1;
      d = sigma(iota_[d]);
    } while (d != d0);
  }
  return orbits;
}

int LickorishSystem::curve_index(const std::string& name) const {
  for (int i = 0; i < curve_count(); ++i)
    if (curves_[i].name == name) return i;
  return -1;
}

int LickorishSystem::crossing_between(int p, int q) const {
  for (int k = 0; k < static_cast<int>(crossings_.size()); ++k) {
    const Crossing& x = crossings_[k];
    if ((x.p == p && x.q == q) || (x.p == q && x.q == p)) return k;
  }
  return -1;
}

const Eigen::VectorXi& LickorishSystem::homology_class(int curve) const {
  if (curve < 0 || curve >= curve_count()) throw InvalidInput("curve index out of range");
  return homology_[curve];
}

SymplecticMatrix LickorishSystem::twist_matrix(int curve) const {
  return SymplecticMatrix::transvection(homology_class(curve));
}

bool LickorishSystem::subset_connected(CurveMask mask) const {
  return connected_components(mask).size() == 1;
}

std::vector<CurveMask> LickorishSystem::connected_components(CurveMask mask) const {
  int n = curve_count();
  if (mask >= (CurveMask(1) << n)) throw InvalidInput("curve mask out of range");
  UnionFind uf(n);
  for (const Crossing& x : crossings_)
    if ((mask >> x.p & 1) && (mask >> x.q & 1)) uf.unite(x.p, x.q);
  std::vector<CurveMask> comp(n, 0);
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1) comp[uf.find(i)] |= CurveMask(1) << i;
  std::vector<CurveMask> out;
  for (int i = 0; i < n; ++i)
    if (comp[i]) out.push_back(comp[i]);
  return out;
}

// Cut-open CW complex: the surface cut along the union of the curves in the
// mask. Vertex copies are the local sector classes at each crossing, edges are
// uncut arcs plus two bank copies per cut arc, faces are the g complement
// disks of the full system. Complement components of N(S), their Euler
// characteristics and boundary circles all fall out of this structure.
struct CutComplex {
  const LickorishSystem& sys;
  CurveMask mask;
  int V;
  std::vector<char> cut;        // dart -> curve in mask
  UnionFind local;              // sectors: vertex copies
  UnionFind global;             // components over sector roots/arcs/banks/faces
  std::vector<int> face_id;     // dart -> face index
  int face_count = 0;
  // atom ids in `global`
  int off_arc, off_bank, off_face;

  std::vector<int> comp_index;          // global root -> component index
  std::vector<ComplementComponent> comps;
  std::vector<int> circle_component;    // circle -> complement component
  std::vector<int> circle_curve;        // circle -> representative curve
  std::vector<int> bank_circle;         // dart -> circle id (cut darts only)

  CutComplex(const LickorishSystem& s, CurveMask m)
      : sys(s),
        mask(m),
        V(static_cast<int>(s.crossings_.size())),
        cut(4 * V, 0),
        local(4 * V),
        global(12 * V + std::max(1, s.g_)),
        face_id(4 * V, -1) {
    off_arc = 4 * V;
    off_bank = 8 * V;
    off_face = 12 * V;
    build();
  }

  int arc_leave_dart(int d) const { return sys.slot_role_[d] == 0 ? d : sys.iota_[d]; }

  void build() {
    for (int d = 0; d < 4 * V; ++d) cut[d] = (mask >> sys.slot_curve_[d]) & 1;

    // Vertex copies: sector(d) spans ccw from ray d to ray sigma(d); sectors on
    // the two sides of an uncut ray are the same local vertex.
    for (int d = 0; d < 4 * V; ++d)
      if (!cut[d]) local.unite(sigma_inv(d), d);

    // Full-system face orbits.
    for (int d0 = 0; d0 < 4 * V; ++d0) {
      if (face_id[d0] >= 0) continue;
      int f = face_count++;
      int d = d0;
      do {
        face_id[d] = f;
        d = sigma(sys.iota_[d]);
      } while (d != d0);
    }

    // Component union-find. Sector atoms are represented by local roots.
    auto sector_atom = [&](int d) { return local.find(d); };
    for (int d = 0; d < 4 * V; ++d) {
      if (sys.slot_role_[d] != 0) continue;  // one entry per arc
      int far = sys.iota_[d];
      if (!cut[d]) {
        global.unite(off_arc + d, sector_atom(d));
        global.unite(off_arc + d, sector_atom(far));
      }
    }
    for (int d = 0; d < 4 * V; ++d) {
      if (!cut[d]) continue;
      global.unite(off_bank + d, sector_atom(d));
      global.unite(off_bank + d, sector_atom(sigma_inv(sys.iota_[d])));
    }
    for (int d = 0; d < 4 * V; ++d) {
      int f = off_face + face_id[d];
      int arrive = sys.iota_[d];
      global.unite(f, sector_atom(arrive));
      if (cut[d])
        global.unite(f, off_bank + arrive);
      else
        global.unite(f, off_arc + arc_leave_dart(d));
    }

    // Component tallies: chi = V' - E' + F'.
    std::vector<int> roots;
    auto comp_of = [&](int atom) {
      int r = global.find(atom);
      for (int i = 0; i < static_cast<int>(roots.size()); ++i)
        if (roots[i] == r) return i;
      roots.push_back(r);
      comps.push_back({});
      return static_cast<int>(roots.size()) - 1;
    };

    std::vector<char> seen_sector(4 * V, 0);
    for (int d = 0; d < 4 * V; ++d) {
      int r = local.find(d);
      if (seen_sector[r]) continue;
      seen_sector[r] = 1;
      comps[comp_of(r)].chi += 1;  // vertex copy
    }
    for (int d = 0; d < 4 * V; ++d) {
      if (sys.slot_role_[d] != 0) continue;
      if (!cut[d]) comps[comp_of(off_arc + d)].chi -= 1;
    }
    for (int d = 0; d < 4 * V; ++d)
      if (cut[d]) comps[comp_of(off_bank + d)].chi -= 1;
    for (int f = 0; f < face_count; ++f) comps[comp_of(off_face + f)].chi += 1;

    comp_index.assign(global.parent.size(), -1);
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) comp_index[roots[i]] = i;

    // Boundary circles: follow the left bank of each cut dart; at the far end
    // continue along the first cut dart reached by scanning clockwise.
    bank_circle.assign(4 * V, -1);
    for (int d0 = 0; d0 < 4 * V; ++d0) {
      if (!cut[d0] || bank_circle[d0] >= 0) continue;
      int id = static_cast<int>(circle_component.size());
      int comp = comp_index[global.find(off_bank + d0)];
      circle_component.push_back(comp);
      circle_curve.push_back(sys.slot_curve_[d0]);
      int d = d0;
      do {
        bank_circle[d] = id;
        int e = sigma_inv(sys.iota_[d]);
        while (!cut[e]) e = sigma_inv(e);
        d = e;
      } while (d != d0);
      comps[comp].circles.push_back(id);
      comps[comp].boundary += 1;
    }

    for (ComplementComponent& c : comps) {
      int h2 = 2 - c.chi - c.boundary;
      if (h2 < 0 || h2 % 2 != 0) throw std::logic_error("complement component with invalid type");
      c.genus = h2 / 2;
      c.disk = (c.chi == 1 && c.boundary == 1);
    }
  }
};

NeighborhoodReport LickorishSystem::neighborhood(CurveMask mask) const {
  int n = curve_count();
  if (mask >= (CurveMask(1) << n)) throw InvalidInput("curve mask out of range");

  NeighborhoodReport rep;
  std::vector<CurveMask> parts = connected_components(mask);
  std::vector<int> curve_part(n, -1);
  for (int pi = 0; pi < static_cast<int>(parts.size()); ++pi)
    for (int i = 0; i < n; ++i)
      if (parts[pi] >> i & 1) curve_part[i] = pi;

  int V = static_cast<int>(crossings_.size());
  for (CurveMask part : parts) {
    RibbonComponent rc;
    for (int i = 0; i < n; ++i)
      if (part >> i & 1) rc.curves.push_back(i);
    for (const Crossing& x : crossings_)
      if ((part >> x.p & 1) && (part >> x.q & 1)) rc.crossings += 1;

    if (rc.crossings == 0) {
      rc.chi = 0;
      rc.boundary = 2;  // annulus around a single curve
      rc.genus = 0;
    } else {
      rc.chi = -rc.crossings;
      // Ribbon boundary count: orbits of the subset fat graph, where the arc
      // involution skips crossings with curves outside the subset.
      std::vector<char> in_sub(4 * V, 0);
      for (int d = 0; d < 4 * V; ++d) {
        int x = d / 4;
        const Crossing& cr = crossings_[x];
        in_sub[d] = (part >> cr.p & 1) && (part >> cr.q & 1);
      }
      auto iota_sub = [&](int d) {
        int e = iota_[d];
        while (!in_sub[e]) {
          // pass straight through a crossing with an outside curve
          e = iota_[(e & ~3) | ((e + 2) & 3)];
        }
        return e;
      };
      std::vector<char> seen(4 * V, 0);
      for (int d0 = 0; d0 < 4 * V; ++d0) {
        if (!in_sub[d0] || seen[d0]) continue;
        rc.boundary += 1;
        int d = d0;
        do {
          seen[d] = 1;
          d = sigma(iota_sub(d));
        } while (d != d0);
      }
      int h2 = 2 - rc.chi - rc.boundary;
      if (h2 < 0 || h2 % 2 != 0) throw std::logic_error("ribbon component with invalid type");
      rc.genus = h2 / 2;
    }

    CutComplex alone(*this, part);
    rc.separating = alone.comps.size() > 1;
    rep.components.push_back(std::move(rc));
  }

  if (mask == 0) {
    ComplementComponent whole;
    whole.chi = 2 - 2 * g_;
    whole.boundary = 0;
    whole.genus = g_;
    rep.complement.push_back(whole);
    return rep;
  }

  CutComplex cc(*this, mask);
  rep.complement = cc.comps;
  rep.circles.resize(cc.circle_component.size());
  for (int i = 0; i < static_cast<int>(cc.circle_component.size()); ++i) {
    rep.circles[i].complement_component = cc.circle_component[i];
    rep.circles[i].ribbon_component = curve_part[cc.circle_curve[i]];
  }

  // Bookkeeping cross-checks; failures indicate a convention bug.
  int rib_b = 0, rib_chi = 0, comp_b = 0, comp_chi = 0;
  for (const RibbonComponent& rc : rep.components) {
    rib_b += rc.boundary;
    rib_chi += rc.chi;
  }
  for (const ComplementComponent& c : rep.complement) {
    comp_b += c.boundary;
    comp_chi += c.chi;
  }
  if (rib_b != comp_b || rib_b != static_cast<int>(rep.circles.size()))
    throw std::logic_error("boundary circle bookkeeping mismatch");
  if (rib_chi + comp_chi != 2 - 2 * g_)
    throw std::logic_error("euler characteristic bookkeeping mismatch");

  return rep;
}

Envelope LickorishSystem::enveloping_subsurface(CurveMask mask) const {
  if (mask == 0) throw InvalidInput("enveloping subsurface of an empty subset");
  NeighborhoodReport rep = neighborhood(mask);
  if (rep.components.size() != 1)
    throw InvalidInput("enveloping subsurface requires a connected subset");

  Envelope env;
  env.degenerate = true;
  for (const ComplementComponent& c : rep.complement)
    if (!c.disk) env.degenerate = false;

  int m = static_cast<int>(rep.complement.size());
  for (int r = 0; r < m; ++r) {
    EnvelopeCandidate cand;
    cand.remaining_component = r;
    cand.whole_surface = rep.complement[r].disk;
    int chi = rep.components[0].chi;
    for (int cidx = 0; cidx < m; ++cidx) {
      if (cidx == r) continue;
      cand.absorbed.push_back(cidx);
      chi += rep.complement[cidx].chi;
    }
    int b = rep.complement[r].boundary;
    int h2 = 2 - chi - b;
    if (h2 < 0 || h2 % 2 != 0) throw std::logic_error("envelope candidate with invalid type");
    cand.type = {h2 / 2, b};
    env.candidates.push_back(std::move(cand));
  }
  std::sort(env.candidates.begin(), env.candidates.end(),
            [](const EnvelopeCandidate& x, const EnvelopeCandidate& y) {
              if (x.whole_surface != y.whole_surface) return !x.whole_surface;
              if (x.type.genus != y.type.genus) return x.type.genus < y.type.genus;
              return x.type.boundary < y.type.boundary;
            });
  return env;
}

bool enclosure_achievable(int genus, const NeighborhoodReport& rep, SubsurfaceType target) {
  if (target.genus < 0 || target.boundary < 1) return false;
  int gamma = genus - target.genus - target.boundary + 1;
  if (gamma < 0) return false;
  for (const ComplementComponent& c : rep.complement)
    if (gamma <= c.genus && target.boundary <= c.genus + c.boundary - gamma) return true;
  return false;
}

Prop52Report verify_prop52(int genus) {
  if (genus < 2 || genus > 6)
    throw InvalidInput("verify_prop52 enumerates subsets for 2 <= genus <= 6 only");
  LickorishSystem sys(genus);
  int n = sys.curve_count();
  Prop52Report rep;
  rep.genus = genus;

  for (CurveMask mask = 1; mask < (CurveMask(1) << n); ++mask) {
    if (!sys.subset_connected(mask)) continue;
    rep.connected_checked += 1;
    NeighborhoodReport nb = sys.neighborhood(mask);
    bool degenerate = true;
    for (const ComplementComponent& c : nb.complement)
      if (!c.disk) degenerate = false;
    if (degenerate) {
      rep.degenerate += 1;
      continue;
    }
    int m = std::popcount(mask);
    int ell = m / 2;
    // Parity clauses. "Genus ell" is read as "genus at most ell": whenever a
    // genus-ell target fits in the ambient surface the two readings agree
    // (pad a smaller enclosure with complement handles), and for very large
    // subsets only the monotone reading is meaningful.
    bool ok = false;
    if (m % 2 == 0) {
      for (int h = 0; h <= ell && !ok; ++h) ok = enclosure_achievable(genus, nb, {h, 1});
      for (int h = 0; h <= ell - 1 && !ok; ++h)
        ok = enclosure_achievable(genus, nb, {h, 3});
    } else {
      for (int h = 0; h <= ell && !ok; ++h)
        for (int b = 1; b <= 2 && !ok; ++b) ok = enclosure_achievable(genus, nb, {h, b});
      for (int h = 0; h <= ell - 1 && !ok; ++h)
        ok = enclosure_achievable(genus, nb, {h, 3});
    }
    if (ok)
      rep.satisfied += 1;
    else
      rep.violations.push_back({mask, sys.enveloping_subsurface(mask).candidates[0].type});
  }
  return rep;
}

RelationReport check_relations(int genus) {
  LickorishSystem sys(genus);
  int n = sys.curve_count();
  std::vector<SymplecticMatrix> tw;
  tw.reserve(n);
  for (int i = 0; i < n; ++i) tw.push_back(sys.twist_matrix(i));

  RelationReport rep;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (sys.crossing_between(i, j) < 0) {
        rep.commuting_pairs += 1;
        if (!(tw[i] * tw[j] == tw[j] * tw[i])) rep.ok = false;
      } else {
        rep.braid_pairs += 1;
        if (!(tw[i] * tw[j] * tw[i] == tw[j] * tw[i] * tw[j])) rep.ok = false;
      }
    }
  }
  return rep;
}

}  // namespace cat0
