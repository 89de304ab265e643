#include "cat0/witness.hpp"

#include <algorithm>
#include <set>

#include "cat0/exact.hpp"

namespace cat0 {

namespace {

bool fail(std::string* error, const std::string& msg) {
  if (error) *error = msg;
  return false;
}

bool remove_value(std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

}  // namespace

bool replay_init(const LickorishSystem& sys, const std::vector<std::vector<int>>& blocks,
                 ReplayState& state, std::string* error) {
  state = ReplayState();
  int n = static_cast<int>(blocks.size());
  if (n == 0) return fail(error, "witness has no copies");

  CurveMask all = 0;
  for (const std::vector<int>& blk : blocks) {
    if (blk.empty()) return fail(error, "witness block is empty");
    CurveMask m = 0;
    for (int c : blk) {
      if (c < 0 || c >= sys.curve_count()) return fail(error, "witness block curve out of range");
      CurveMask bit = CurveMask(1) << c;
      if (m & bit) return fail(error, "witness block repeats a curve");
      if (all & bit) return fail(error, "witness blocks share a curve");
      m |= bit;
      all |= bit;
    }
    if (!sys.subset_connected(m)) return fail(error, "witness block is not connected");
  }
  // Non-crossing between blocks <=> the blocks are exactly the connected
  // components of their union.
  NeighborhoodReport rep = sys.neighborhood(all);
  if (static_cast<int>(rep.components.size()) != n)
    return fail(error, "witness blocks cross each other");

  // Match ribbon components to blocks by curve sets.
  std::vector<int> comp_to_copy(n, -1);
  for (int ci = 0; ci < n; ++ci) {
    std::vector<int> curves = rep.components[ci].curves;
    std::sort(curves.begin(), curves.end());
    int found = -1;
    for (int bi = 0; bi < n; ++bi) {
      std::vector<int> blk = blocks[bi];
      std::sort(blk.begin(), blk.end());
      if (blk == curves) {
        found = bi;
        break;
      }
    }
    if (found < 0) return fail(error, "witness blocks do not match ribbon components");
    comp_to_copy[ci] = found;
  }

  state.copies.assign(n, {});
  for (int ci = 0; ci < n; ++ci) {
    ReplayPiece& p = state.copies[comp_to_copy[ci]];
    p.genus = rep.components[ci].genus;
  }
  state.regions.assign(rep.complement.size(), {});
  for (int ri = 0; ri < static_cast<int>(rep.complement.size()); ++ri)
    state.regions[ri].genus = rep.complement[ri].genus;

  state.sides.assign(rep.circles.size(), {-1, -1});
  for (int c = 0; c < static_cast<int>(rep.circles.size()); ++c) {
    int copy = comp_to_copy[rep.circles[c].ribbon_component];
    int region = rep.circles[c].complement_component;
    state.copies[copy].circles.push_back(c);
    state.regions[region].circles.push_back(c);
    state.sides[c] = {copy, region};
  }
  state.next_circle = static_cast<int>(rep.circles.size());
  return true;
}

bool replay_strip(ReplayState& state, const StripMove& mv, std::string* error) {
  if (mv.copy < 0 || mv.copy >= static_cast<int>(state.copies.size()))
    return fail(error, "strip references an unknown copy");
  if (mv.circle < 0 || mv.circle >= static_cast<int>(state.sides.size()))
    return fail(error, "strip references an unknown circle");
  auto [cside, rside] = state.sides[mv.circle];
  if (cside != mv.copy) return fail(error, "strip circle does not bound the stated copy");
  if (rside < 0) return fail(error, "strip circle has no region side");

  ReplayPiece& copy = state.copies[mv.copy];
  ReplayPiece& region = state.regions[rside];

  int c1 = state.next_circle++;
  int c2 = state.next_circle++;
  state.sides.push_back({mv.copy, -1});
  state.sides.push_back({mv.copy, -1});

  // Copy side: a band attached along one boundary circle of an oriented
  // surface always splits that circle in two.
  if (!remove_value(copy.circles, mv.circle)) return fail(error, "strip circle not on copy");
  copy.circles.push_back(c1);
  copy.circles.push_back(c2);

  if (mv.nonseparating) {
    if (region.genus < 1)
      return fail(error, "nonseparating strip through a planar region");
    if (!remove_value(region.circles, mv.circle)) return fail(error, "strip circle not on region");
    region.genus -= 1;
    region.circles.push_back(c1);
    region.circles.push_back(c2);
    state.sides[c1].second = rside;
    state.sides[c2].second = rside;
  } else {
    if (mv.genus_left < 0 || mv.genus_left > region.genus)
      return fail(error, "separating strip with invalid genus split");
    std::vector<int> rest = region.circles;
    if (!remove_value(rest, mv.circle)) return fail(error, "strip circle not on region");
    std::set<int> left_set(mv.left_circles.begin(), mv.left_circles.end());
    if (left_set.size() != mv.left_circles.size())
      return fail(error, "separating strip repeats a circle");
    std::vector<int> left, right;
    for (int c : rest) {
      if (left_set.count(c)) {
        left.push_back(c);
        left_set.erase(c);
      } else {
        right.push_back(c);
      }
    }
    if (!left_set.empty())
      return fail(error, "separating strip names a circle outside its region");

    int new_region = static_cast<int>(state.regions.size());
    ReplayPiece right_piece;
    right_piece.genus = region.genus - mv.genus_left;
    right_piece.circles = right;
    right_piece.circles.push_back(c2);

    ReplayPiece& left_piece = state.regions[rside];  // reuse slot
    left_piece.genus = mv.genus_left;
    left_piece.circles = left;
    left_piece.circles.push_back(c1);

    state.regions.push_back(std::move(right_piece));
    for (int c : state.regions[new_region].circles) state.sides[c].second = new_region;
    state.sides[c1].second = rside;
  }
  return true;
}

bool replay_final(const ReplayState& state, SubsurfaceType type, int n, std::string* error) {
  if (static_cast<int>(state.copies.size()) != n)
    return fail(error, "witness copy count mismatch");
  for (int i = 0; i < n; ++i) {
    const ReplayPiece& c = state.copies[i];
    if (c.genus != type.genus || static_cast<int>(c.circles.size()) != type.boundary)
      return fail(error, "copy " + std::to_string(i) + " has type (" + std::to_string(c.genus) +
                             "," + std::to_string(c.circles.size()) + ") instead of (" +
                             std::to_string(type.genus) + "," + std::to_string(type.boundary) +
                             ")");
  }

  // Complement of copy i: all regions plus the other copies, glued along
  // their shared circles. Check connectivity of that graph.
  int R = static_cast<int>(state.regions.size());
  for (int i = 0; i < n; ++i) {
    std::vector<int> node_mark(R + n, 0);
    std::vector<int> stack;
    int total = 0;
    for (int r = 0; r < R; ++r) ++total;
    for (int j = 0; j < n; ++j)
      if (j != i) ++total;
    if (total == 0) return fail(error, "copy " + std::to_string(i) + " has empty complement");

    int start = (R > 0) ? 0 : (i == 0 ? R + 1 : R);
    node_mark[start] = 1;
    stack.push_back(start);
    int seen = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      auto try_visit = [&](int w) {
        if (!node_mark[w]) {
          node_mark[w] = 1;
          ++seen;
          stack.push_back(w);
        }
      };
      if (v < R) {
        for (int c : state.regions[v].circles) {
          int copy = state.sides[c].first;
          if (copy != i) try_visit(R + copy);
        }
      } else {
        int copy = v - R;
        for (int c : state.copies[copy].circles) {
          int r = state.sides[c].second;
          if (r >= 0) try_visit(r);
        }
      }
    }
    if (seen != total)
      return fail(error, "complement of copy " + std::to_string(i) + " is disconnected");
  }
  return true;
}

bool replay_copies_witness(const LickorishSystem& sys, SubsurfaceType type, int n,
                           const CopiesWitness& w, std::string* error) {
  if (w.type.genus != type.genus || w.type.boundary != type.boundary)
    return fail(error, "witness type does not match the claim");
  if (static_cast<int>(w.blocks.size()) != n) return fail(error, "witness block count mismatch");
  ReplayState state;
  if (!replay_init(sys, w.blocks, state, error)) return false;
  for (const StripMove& mv : w.strips)
    if (!replay_strip(state, mv, error)) return false;
  return replay_final(state, type, n, error);
}

namespace {

// Block builders. Handles are 1-based; cursor is the first unused handle.
struct BlockPlan {
  std::vector<int> curves;
  int cursor_after = 0;
  int strips = 0;
};

// Base variants for one copy of type (h,b), ordered by preference.
struct Variant {
  int kind;  // 0: 2h-chain, 1: (2h+1)-chain, 2: single curve, 3: star
  int strips;
};

std::vector<Variant> variants_for(SubsurfaceType t) {
  std::vector<Variant> v;
  int h = t.genus, b = t.boundary;
  if (h == 0) {
    if (b >= 2) v.push_back({2, b - 2});
    return v;
  }
  if (b == 1) {
    v.push_back({0, 0});
  } else if (b == 2) {
    v.push_back({1, 0});
    v.push_back({0, 1});
  } else {
    if (h == 1 && b == 3) v.push_back({3, 0});
    v.push_back({1, b - 2});
    v.push_back({0, b - 1});
  }
  return v;
}

bool place_block(const LickorishSystem& sys, const Variant& var, SubsurfaceType t, int cursor,
                 BlockPlan& out) {
  int g = sys.genus();
  int h = t.genus;
  auto a = [&](int i) { return i - 1; };           // 1-based handle -> curve id
  auto b = [&](int i) { return g + i - 1; };
  auto c = [&](int i) { return 2 * g + i - 1; };   // c_i between handles i, i+1

  out = BlockPlan();
  out.strips = var.strips;
  switch (var.kind) {
    case 0: {  // 2h-chain: a_s b_s c_s b_{s+1} ... b_{s+h-1}
      int s = cursor;
      if (s + h - 1 > g) return false;
      out.curves.push_back(a(s));
      out.curves.push_back(b(s));
      for (int i = 1; i < h; ++i) {
        out.curves.push_back(c(s + i - 1));
        out.curves.push_back(b(s + i));
      }
      out.cursor_after = s + h;
      return true;
    }
    case 1: {  // (2h+1)-chain: b_s c_s b_{s+1} ... b_{s+h}
      int s = cursor;
      if (s + h > g) return false;
      out.curves.push_back(b(s));
      for (int i = 1; i <= h; ++i) {
        out.curves.push_back(c(s + i - 1));
        out.curves.push_back(b(s + i));
      }
      out.cursor_after = s + h + 1;
      return true;
    }
    case 2: {  // single curve
      int s = cursor;
      if (s > g) return false;
      out.curves.push_back(b(s));
      out.cursor_after = s + 1;
      return true;
    }
    case 3: {  // star at p = cursor+1: c_{p-1}, a_p, c_p, b_p
      int p = cursor + 1;
      if (p > g - 1) return false;
      out.curves.push_back(c(p - 1));
      out.curves.push_back(a(p));
      out.curves.push_back(c(p));
      out.curves.push_back(b(p));
      out.cursor_after = p + 2;
      return true;
    }
  }
  return false;
}

struct StripSearch {
  SubsurfaceType type;
  int n;
  long long budget = 20000;

  std::vector<StripMove> strips;

  bool dfs(ReplayState& state) {
    if (--budget < 0) return false;
    // Next copy below its boundary target.
    int copy = -1;
    for (int i = 0; i < n; ++i)
      if (static_cast<int>(state.copies[i].circles.size()) < type.boundary) {
        copy = i;
        break;
      }
    if (copy < 0) {
      std::string err;
      return replay_final(state, type, n, &err);
    }

    std::vector<int> circles = state.copies[copy].circles;
    for (int circle : circles) {
      int rside = state.sides[circle].second;
      // Snapshot: state is mutated and restored inside the loops below.
      int region_genus = state.regions[rside].genus;
      std::vector<int> region_circles = state.regions[rside].circles;

      if (region_genus >= 1) {
        StripMove mv;
        mv.copy = copy;
        mv.circle = circle;
        mv.nonseparating = true;
        ReplayState saved = state;
        std::string err;
        if (replay_strip(state, mv, &err)) {
          strips.push_back(mv);
          if (dfs(state)) return true;
          strips.pop_back();
        }
        state = saved;
      }

      // Separating bands: peel off one circle of another copy (keeps the new
      // region bridged), then general subsets as a fallback.
      std::vector<std::vector<int>> left_options;
      for (int c : region_circles)
        if (c != circle && state.sides[c].first != copy) left_options.push_back({c});
      if (static_cast<int>(region_circles.size()) <= 10) {
        std::vector<int> others;
        for (int c : region_circles)
          if (c != circle) others.push_back(c);
        int m = static_cast<int>(others.size());
        for (int s = 0; s < (1 << m); ++s) {
          std::vector<int> left;
          for (int i = 0; i < m; ++i)
            if (s >> i & 1) left.push_back(others[i]);
          if (left.size() == 1 && state.sides[left[0]].first != copy) continue;  // done above
          left_options.push_back(std::move(left));
        }
      }
      for (const std::vector<int>& left : left_options) {
        for (int gl = 0; gl <= region_genus; ++gl) {
          StripMove mv;
          mv.copy = copy;
          mv.circle = circle;
          mv.nonseparating = false;
          mv.genus_left = gl;
          mv.left_circles = left;
          ReplayState saved = state;
          std::string err;
          if (replay_strip(state, mv, &err)) {
            strips.push_back(mv);
            if (dfs(state)) return true;
            strips.pop_back();
          }
          state = saved;
        }
      }
    }
    return false;
  }
};

}  // namespace

std::optional<CopiesWitness> find_disjoint_copies(const LickorishSystem& sys,
                                                  SubsurfaceType type, int n) {
  if (n < 1 || type.genus < 0 || type.boundary < 1) return std::nullopt;
  if (type.genus == 0 && type.boundary == 1) return std::nullopt;  // disk: never essential

  std::vector<Variant> vars = variants_for(type);
  if (vars.empty()) return std::nullopt;
  int k = static_cast<int>(vars.size());

  // Multisets of variants over the n copies, preferring early variants.
  std::vector<std::vector<int>> combos;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == k - 1) {
      pick.push_back(left);
      combos.push_back(pick);
      pick.pop_back();
      return;
    }
    for (int take = left; take >= 0; --take) {
      pick.push_back(take);
      self(self, idx + 1, left - take);
      pick.pop_back();
    }
  };
  rec(rec, 0, n);

  for (const std::vector<int>& combo : combos) {
    std::vector<std::vector<int>> blocks;
    int cursor = 1;
    bool fits = true;
    int total_strips = 0;
    for (int vi = 0; vi < k && fits; ++vi) {
      for (int rep = 0; rep < combo[vi] && fits; ++rep) {
        BlockPlan plan;
        if (!place_block(sys, vars[vi], type, cursor, plan)) {
          fits = false;
          break;
        }
        blocks.push_back(plan.curves);
        cursor = plan.cursor_after;
        total_strips += plan.strips;
      }
    }
    if (!fits) continue;

    ReplayState state;
    std::string err;
    if (!replay_init(sys, blocks, state, &err)) continue;

    // Base types must already match when no strips are planned for a copy;
    // the strip search raises boundary counts to the target.
    bool base_ok = true;
    for (const ReplayPiece& c : state.copies) {
      if (c.genus != type.genus || static_cast<int>(c.circles.size()) > type.boundary) {
        base_ok = false;
        break;
      }
    }
    if (!base_ok) continue;

    StripSearch search;
    search.type = type;
    search.n = n;
    if (search.dfs(state)) {
      CopiesWitness w;
      w.type = type;
      w.blocks = blocks;
      w.strips = search.strips;
      std::string verr;
      if (replay_copies_witness(sys, type, n, w, &verr)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace cat0
