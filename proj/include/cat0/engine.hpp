#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cat0/surfaces.hpp"
#include "cat0/witness.hpp"

namespace cat0 {

// Derivation rules. Every fact asserts that the twists in its curve subset
// have a common fixed point, given the context hypothesis.
enum class RuleTag {
  BaseElliptic,       // singleton: generator twists are elliptic under the hypothesis
  SplitDisconnected,  // commuting partition into a connected component and the rest
  ConjBootstrap,      // disjoint conjugate copies of an enclosing subsurface
  Bootstrap,          // single-set finite-subsets rule (no conjugates involved)
  HellyFinish         // dimension-bounded Helly closure over (d+1)-subsets
};

const char* rule_tag_name(RuleTag tag);
std::optional<RuleTag> rule_tag_from_name(const std::string& name);

struct SideConditions {
  long long k = 0;
  long long n = 0;
  long long dim_bound = 0;
  long long subset_count = 0;

  bool operator==(const SideConditions&) const = default;
};

struct SplitWitness {
  std::vector<int> component;  // connected component holding the lowest curve index
  std::vector<int> rest;
};

struct FixFact {
  std::uint32_t id = 0;
  CurveMask subset = 0;
  RuleTag rule = RuleTag::BaseElliptic;
  std::vector<std::uint32_t> premises;
  SideConditions side;
  std::optional<SplitWitness> split;    // SplitDisconnected only
  std::optional<CopiesWitness> copies;  // ConjBootstrap only
};

struct GeneratorContext {
  int genus = 0;
  int dim = 0;  // covering dimension of the space is at most dim
  std::string hypothesis;
};

struct Certificate {
  int version = 1;
  GeneratorContext context;
  std::vector<FixFact> facts;
  std::string conclusion;
};

struct DeriveFailure {
  std::string stage;        // "preconditions" | "disjoint-copies"
  std::vector<int> subset;  // offending curve subset (empty for preconditions)
  std::string reason;
};

struct DeriveResult {
  bool ok = false;
  std::optional<Certificate> certificate;
  std::optional<DeriveFailure> failure;
};

// Derives a global-fixed-point certificate for the genus-g mapping class
// group acting on a space of dimension at most dim. Facts are enumerated by
// (size, lexicographic subset) order over subsets of size 1..dim+1, then
// closed with the Helly rule. Failures are structured results, not errors:
// the search reports the first subset it cannot justify.
DeriveResult derive_fixpoint_certificate(int genus, int dim);

struct VerifyResult {
  bool valid = true;
  long long fact = -1;  // offending fact id; -1 for certificate-level issues
  std::string message;
};

// id -> subset table used for premise lookups during verification.
struct FactTable {
  std::vector<CurveMask> masks;
  std::unordered_map<CurveMask, std::uint32_t> index;
};

// Re-checks one fact against its context and the subset table: rule shape,
// recomputed side conditions, exact premise sets, witness replay, and
// premise-id acyclicity. Independent of the derivation search.
VerifyResult verify_fact(const LickorishSystem& sys, const GeneratorContext& ctx,
                         const FactTable& table, const FixFact& fact);

VerifyResult verify_certificate(const Certificate& cert);

std::string canonical_hypothesis();
std::string canonical_conclusion(int genus);

// certificate_io.cpp: streamed writer and SAX loader (certificates reach
// hundreds of thousands of facts; no DOM is built).
void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

}  // namespace cat0
