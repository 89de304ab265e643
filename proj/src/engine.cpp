#include "cat0/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace cat0 {

namespace {

std::vector<int> mask_indices(CurveMask mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

CurveMask indices_mask(const std::vector<int>& idx) {
  CurveMask m = 0;
  for (int i : idx) m |= CurveMask(1) << i;
  return m;
}

std::string subset_label(const LickorishSystem& sys, CurveMask mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < sys.curve_count(); ++i) {
    if (!(mask >> i & 1)) continue;
    if (!first) out += ",";
    out += sys.curves()[i].name;
    first = false;
  }
  out += "}";
  return out;
}

// Lexicographic m-combinations of {0..n-1}; returns false when exhausted.
bool next_combination(std::vector<int>& c, int n) {
  int m = static_cast<int>(c.size());
  for (int i = m - 1; i >= 0; --i) {
    if (c[i] < n - m + i) {
      ++c[i];
      for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All subsurface types admitting the subset, smallest first; the packing
// search below prefers cheap types.
std::vector<SubsurfaceType> achievable_types(int genus, const NeighborhoodReport& nb) {
  std::vector<SubsurfaceType> out;
  for (int h = 0; h <= genus; ++h)
    for (int b = 1; b <= genus - h + 1; ++b)
      if (enclosure_achievable(genus, nb, {h, b})) out.push_back({h, b});
  return out;
}

VerifyResult fail_fact(const FixFact& fact, std::string message) {
  return {false, static_cast<long long>(fact.id), std::move(message)};
}

// Exact premise-set check: the k-subsets of `subset` in lexicographic order
// must match `premises` id-for-id, and each premise must precede the fact.
VerifyResult check_subset_premises(const LickorishSystem& sys, const FactTable& table,
                                   const FixFact& fact, int k) {
  std::vector<int> idx = mask_indices(fact.subset);
  int m = static_cast<int>(idx.size());
  long long want = binomial(m, k);
  if (static_cast<long long>(fact.premises.size()) != want)
    return fail_fact(fact, "expected " + std::to_string(want) + " premises, found " +
                               std::to_string(fact.premises.size()));
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  std::size_t at = 0;
  do {
    CurveMask sub = 0;
    for (int i : comb) sub |= CurveMask(1) << idx[i];
    auto it = table.index.find(sub);
    if (it == table.index.end())
      return fail_fact(fact, "missing premise fact for subset " + subset_label(sys, sub));
    if (fact.premises[at] != it->second)
      return fail_fact(fact, "premise " + std::to_string(at) + " should be fact " +
                                 std::to_string(it->second) + " (subset " +
                                 subset_label(sys, sub) + "), found " +
                                 std::to_string(fact.premises[at]));
    if (fact.premises[at] >= fact.id)
      return fail_fact(fact, "premise " + std::to_string(fact.premises[at]) +
                                 " does not precede the fact");
    ++at;
  } while (next_combination(comb, m));
  return {};
}

}  // namespace

const char* rule_tag_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::BaseElliptic: return "BASE_ELLIPTIC";
    case RuleTag::SplitDisconnected: return "SPLIT_DISCONNECTED";
    case RuleTag::ConjBootstrap: return "CONJ_BOOTSTRAP";
    case RuleTag::Bootstrap: return "BOOTSTRAP";
    case RuleTag::HellyFinish: return "HELLY_FINISH";
  }
  return "UNKNOWN";
}

std::optional<RuleTag> rule_tag_from_name(const std::string& name) {
  if (name == "BASE_ELLIPTIC") return RuleTag::BaseElliptic;
  if (name == "SPLIT_DISCONNECTED") return RuleTag::SplitDisconnected;
  if (name == "CONJ_BOOTSTRAP") return RuleTag::ConjBootstrap;
  if (name == "BOOTSTRAP") return RuleTag::Bootstrap;
  if (name == "HELLY_FINISH") return RuleTag::HellyFinish;
  return std::nullopt;
}

std::string canonical_hypothesis() { return "no-neutral-parabolics"; }

std::string canonical_conclusion(int genus) {
  return "Mod(Sigma_" + std::to_string(genus) + ") fixes a point";
}

DeriveResult derive_fixpoint_certificate(int genus, int dim) {
  DeriveResult res;
  auto precondition = [&](std::string reason) {
    res.failure = DeriveFailure{"preconditions", {}, std::move(reason)};
    return res;
  };
  if (genus < 1) return precondition("genus must be at least 1");
  if (genus == 1)
    return precondition(
        "genus 1 is outside this derivation: the twist generators act on the "
        "hyperbolic plane and the fixed-point question is elementary");
  if (genus == 2)
    return precondition(
        "genus 2 is outside this derivation: the fixed-point property on trees "
        "is an independent result, not reproduced by these rules");
  if (genus > 10) return precondition("genus above 10 unsupported (32-bit curve masks)");
  if (dim < 0) return precondition("dimension bound must be non-negative");

  LickorishSystem sys(genus);
  int nc = sys.curve_count();
  CurveMask full = (CurveMask(1) << nc) - 1;

  Certificate cert;
  cert.context = {genus, dim, canonical_hypothesis()};
  cert.conclusion = canonical_conclusion(genus);

  std::unordered_map<CurveMask, std::uint32_t> index;
  std::map<std::tuple<int, int, int>, std::optional<CopiesWitness>> memo;

  int max_size = std::min(dim + 1, nc);
  for (int m = 1; m <= max_size; ++m) {
    std::vector<int> comb(m);
    for (int i = 0; i < m; ++i) comb[i] = i;
    do {
      CurveMask mask = indices_mask(comb);
      FixFact fact;
      fact.id = static_cast<std::uint32_t>(cert.facts.size());
      fact.subset = mask;

      if (m == 1) {
        fact.rule = RuleTag::BaseElliptic;
      } else if (!sys.subset_connected(mask)) {
        fact.rule = RuleTag::SplitDisconnected;
        CurveMask low = mask & (~mask + 1);
        CurveMask part = 0;
        for (CurveMask comp : sys.connected_components(mask))
          if (comp & low) part = comp;
        CurveMask rest = mask ^ part;
        fact.premises = {index.at(part), index.at(rest)};
        fact.split = SplitWitness{mask_indices(part), mask_indices(rest)};
      } else {
        int k = m - 1;
        int n = (dim + 1 + k - 1) / k;  // least n with dim <= n*k - 1
        NeighborhoodReport nb = sys.neighborhood(mask);
        const CopiesWitness* found = nullptr;
        for (SubsurfaceType t : achievable_types(genus, nb)) {
          auto key = std::make_tuple(t.genus, t.boundary, n);
          auto it = memo.find(key);
          if (it == memo.end()) it = memo.emplace(key, find_disjoint_copies(sys, t, n)).first;
          if (it->second) {
            found = &*it->second;
            break;
          }
        }
        if (!found) {
          res.failure = DeriveFailure{
              "disjoint-copies", mask_indices(mask),
              "no enclosing subsurface of " + subset_label(sys, mask) + " admits " +
                  std::to_string(n) +
                  " disjoint copies with connected complement (|S|=" + std::to_string(m) +
                  ", k=" + std::to_string(k) + ", need dim <= n*k-1 = " +
                  std::to_string(static_cast<long long>(n) * k - 1) + ")"};
          return res;
        }
        fact.rule = RuleTag::ConjBootstrap;
        fact.side.k = k;
        fact.side.n = n;
        fact.side.dim_bound = static_cast<long long>(n) * k - 1;
        fact.copies = *found;
        std::vector<int> sub(k);
        for (int i = 0; i < k; ++i) sub[i] = i;
        std::vector<int> idx = mask_indices(mask);
        do {
          CurveMask pm = 0;
          for (int i : sub) pm |= CurveMask(1) << idx[i];
          fact.premises.push_back(index.at(pm));
        } while (next_combination(sub, m));
      }

      index.emplace(mask, fact.id);
      cert.facts.push_back(std::move(fact));
    } while (next_combination(comb, nc));
  }

  if (!index.count(full)) {
    FixFact fact;
    fact.id = static_cast<std::uint32_t>(cert.facts.size());
    fact.subset = full;
    fact.rule = RuleTag::HellyFinish;
    fact.side.k = dim + 1;
    fact.side.subset_count = binomial(nc, dim + 1);
    cert.facts.push_back(std::move(fact));
  }

  res.ok = true;
  res.certificate = std::move(cert);
  return res;
}

VerifyResult verify_fact(const LickorishSystem& sys, const GeneratorContext& ctx,
                         const FactTable& table, const FixFact& fact) {
  CurveMask full = (CurveMask(1) << sys.curve_count()) - 1;
  int m = std::popcount(fact.subset);

  // Fields not used by the rule must be absent / zero.
  auto shape = [&](bool want_split, bool want_copies, bool k, bool n, bool dim_bound,
                   bool subset_count) -> std::optional<VerifyResult> {
    if (fact.split.has_value() != want_split)
      return fail_fact(fact, want_split ? "missing partition witness" : "unexpected partition witness");
    if (fact.copies.has_value() != want_copies)
      return fail_fact(fact, want_copies ? "missing copies witness" : "unexpected copies witness");
    if (!k && fact.side.k != 0) return fail_fact(fact, "side condition k not applicable");
    if (!n && fact.side.n != 0) return fail_fact(fact, "side condition n not applicable");
    if (!dim_bound && fact.side.dim_bound != 0)
      return fail_fact(fact, "side condition dim_bound not applicable");
    if (!subset_count && fact.side.subset_count != 0)
      return fail_fact(fact, "side condition subset_count not applicable");
    return std::nullopt;
  };

  switch (fact.rule) {
    case RuleTag::BaseElliptic: {
      if (auto bad = shape(false, false, false, false, false, false)) return *bad;
      if (m != 1) return fail_fact(fact, "base rule applies to single generators only");
      if (!fact.premises.empty()) return fail_fact(fact, "base rule takes no premises");
      return {};
    }

    case RuleTag::SplitDisconnected: {
      if (auto bad = shape(true, false, false, false, false, false)) return *bad;
      if (m < 2) return fail_fact(fact, "split rule needs at least two generators");
      std::vector<CurveMask> comps = sys.connected_components(fact.subset);
      if (comps.size() < 2) return fail_fact(fact, "subset is connected; split rule inapplicable");
      CurveMask low = fact.subset & (~fact.subset + 1);
      CurveMask part = 0;
      for (CurveMask comp : comps)
        if (comp & low) part = comp;
      CurveMask rest = fact.subset ^ part;
      if (indices_mask(fact.split->component) != part || indices_mask(fact.split->rest) != rest)
        return fail_fact(fact, "partition witness does not match the canonical component split");
      for (int i : fact.split->component)
        for (int j : fact.split->rest)
          if (sys.crossing_between(i, j) >= 0)
            return fail_fact(fact, "partition parts do not commute: " +
                                       std::string(sys.curves()[i].name) + " crosses " +
                                       sys.curves()[j].name);
      if (fact.premises.size() != 2) return fail_fact(fact, "split rule takes exactly two premises");
      auto pit = table.index.find(part);
      auto rit = table.index.find(rest);
      if (pit == table.index.end() || fact.premises[0] != pit->second)
        return fail_fact(fact, "first premise must be the fact for " + subset_label(sys, part));
      if (rit == table.index.end() || fact.premises[1] != rit->second)
        return fail_fact(fact, "second premise must be the fact for " + subset_label(sys, rest));
      if (fact.premises[0] >= fact.id || fact.premises[1] >= fact.id)
        return fail_fact(fact, "premise does not precede the fact");
      return {};
    }

    case RuleTag::ConjBootstrap: {
      if (auto bad = shape(false, true, true, true, true, false)) return *bad;
      if (m < 2) return fail_fact(fact, "conjugate rule needs at least two generators");
      if (!sys.subset_connected(fact.subset))
        return fail_fact(fact, "conjugate rule needs a connected subset");
      int k = m - 1;
      if (fact.side.k != k)
        return fail_fact(fact, "side condition k must equal |S|-1 = " + std::to_string(k));
      long long n = static_cast<long long>(fact.copies->blocks.size());
      if (n < 1) return fail_fact(fact, "copies witness is empty");
      if (fact.side.n != n)
        return fail_fact(fact, "side condition n must equal the number of copies = " +
                                   std::to_string(n));
      if (fact.side.dim_bound != n * k - 1)
        return fail_fact(fact, "side condition dim_bound must equal n*k-1 = " +
                                   std::to_string(n * k - 1));
      if (ctx.dim > fact.side.dim_bound)
        return fail_fact(fact, "dimension bound " + std::to_string(ctx.dim) +
                                   " exceeds n*k-1 = " + std::to_string(n * k - 1));
      NeighborhoodReport nb = sys.neighborhood(fact.subset);
      if (!enclosure_achievable(ctx.genus, nb, fact.copies->type))
        return fail_fact(fact, "subset does not embed in a subsurface of the witness type");
      std::string err;
      if (!replay_copies_witness(sys, fact.copies->type, static_cast<int>(n), *fact.copies, &err))
        return fail_fact(fact, "copies witness rejected: " + err);
      if (auto bad = check_subset_premises(sys, table, fact, k); !bad.valid) return bad;
      return {};
    }

    case RuleTag::Bootstrap: {
      if (auto bad = shape(false, false, true, false, false, false)) return *bad;
      if (m < 1) return fail_fact(fact, "empty subset");
      long long k = fact.side.k;
      if (k < 1 || k > m)
        return fail_fact(fact, "side condition k must lie in [1, |S|]");
      if (ctx.dim > k - 1)
        return fail_fact(fact, "dimension bound " + std::to_string(ctx.dim) +
                                   " exceeds k-1 = " + std::to_string(k - 1));
      if (auto bad = check_subset_premises(sys, table, fact, static_cast<int>(k)); !bad.valid)
        return bad;
      return {};
    }

    case RuleTag::HellyFinish: {
      if (auto bad = shape(false, false, true, false, false, true)) return *bad;
      if (fact.subset != full)
        return fail_fact(fact, "closure rule must cover the full generating set");
      if (!fact.premises.empty())
        return fail_fact(fact, "closure rule premises are implicit; none may be listed");
      long long k = ctx.dim + 1;
      if (fact.side.k != k)
        return fail_fact(fact, "side condition k must equal dim+1 = " + std::to_string(k));
      long long count = binomial(sys.curve_count(), static_cast<int>(k));
      if (fact.side.subset_count != count)
        return fail_fact(fact, "side condition subset_count must equal " + std::to_string(count));
      if (k <= sys.curve_count()) {
        std::vector<int> comb(static_cast<int>(k));
        for (int i = 0; i < k; ++i) comb[i] = i;
        do {
          CurveMask sub = indices_mask(comb);
          auto it = table.index.find(sub);
          if (it == table.index.end())
            return fail_fact(fact, "missing fact for the " + std::to_string(k) + "-subset " +
                                       subset_label(sys, sub));
          if (it->second >= fact.id)
            return fail_fact(fact, "fact for " + subset_label(sys, sub) +
                                       " does not precede the closure");
        } while (next_combination(comb, sys.curve_count()));
      }
      return {};
    }
  }
  return fail_fact(fact, "unknown rule");
}

VerifyResult verify_certificate(const Certificate& cert) {
  if (cert.version != 1)
    return {false, -1, "unsupported certificate version " + std::to_string(cert.version)};
  if (cert.context.genus < 1 || cert.context.genus > 10)
    return {false, -1, "context genus out of range [1, 10]"};
  if (cert.context.dim < 0) return {false, -1, "context dimension bound is negative"};
  if (cert.context.hypothesis != canonical_hypothesis())
    return {false, -1, "context hypothesis must be \"" + canonical_hypothesis() + "\""};
  if (cert.conclusion != canonical_conclusion(cert.context.genus))
    return {false, -1, "conclusion must be \"" + canonical_conclusion(cert.context.genus) + "\""};
  if (cert.facts.empty()) return {false, -1, "certificate contains no facts"};

  LickorishSystem sys(cert.context.genus);
  CurveMask full = (CurveMask(1) << sys.curve_count()) - 1;

  FactTable table;
  table.masks.reserve(cert.facts.size());
  for (std::size_t i = 0; i < cert.facts.size(); ++i) {
    const FixFact& fact = cert.facts[i];
    if (fact.id != i)
      return {false, static_cast<long long>(i), "fact id must equal its position"};
    if (fact.subset == 0) return fail_fact(fact, "empty subset");
    if (fact.subset & ~full) return fail_fact(fact, "subset references unknown curves");
    if (!table.index.emplace(fact.subset, fact.id).second)
      return fail_fact(fact, "duplicate subset: already derived as fact " +
                                 std::to_string(table.index.at(fact.subset)));
    table.masks.push_back(fact.subset);
  }

  if (cert.facts.back().subset != full)
    return {false, static_cast<long long>(cert.facts.size()) - 1,
            "final fact must cover the full generating set"};

  for (const FixFact& fact : cert.facts) {
    VerifyResult r = verify_fact(sys, cert.context, table, fact);
    if (!r.valid) return r;
  }
  return {};
}

}  // namespace cat0
