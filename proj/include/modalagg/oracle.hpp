#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "modalagg/aggregation.hpp"
#include "modalagg/covering.hpp"
#include "modalagg/residue.hpp"

namespace modalagg::oracle {

// Ground-truth consistency by exhausting every valuation of the cycle.
// Guard: r <= 20. The parallel entry point splits the valuation space across
// threads; the serial twin is the straight loop the tests compare against.
bool brute_consistent(const JudgmentPair& jp, const FrameSpec& spec);
bool brute_consistent_serial(const JudgmentPair& jp, const FrameSpec& spec);

// The pair is inconsistent and every proper subset of its literals is
// consistent, everything decided by exhaustive valuation search.
// Guards: r <= 14 and |jp| <= 16.
bool brute_min_inconsistent(const JudgmentPair& jp, const FrameSpec& spec);

// Ground truth for the strict conditional order: P_u sits below P_v when
// some sign-fragment over the other indices makes {fragment, P_u, not P_v}
// minimally inconsistent while {fragment, not P_u, P_v} stays consistent.
// Guard: r <= 8.
bool brute_lt0(std::int64_t u, std::int64_t v, const FrameSpec& spec);

// Every complete consistent pair, in lexicographic order of the accepted
// member list. Internally computed twice (covering criterion and valuation
// scan) and cross-checked. Guard: r <= 14.
std::vector<JudgmentPair> enumerate_rational_sets(const FrameSpec& spec);
std::vector<JudgmentPair> enumerate_rational_sets_serial(const FrameSpec& spec);

// An aggregation rule under test: maps the individuals' complete rational
// sets to a complete collective pair. Must be pure; it is called from
// several threads at once.
using AggregationRule = std::function<JudgmentPair(const std::vector<JudgmentPair>&)>;

// A profile in an axiom counterexample, as indices into the rational-set
// list of the report.
struct ProfileRef {
  std::uint64_t profile_id = 0;
  std::vector<std::uint32_t> set_indices;
};

struct UnanimityViolation {
  ProfileRef profile;
  std::uint32_t index = 0;
  bool positive = true;  // the unanimously held literal the rule dropped
};

struct PairViolation {
  ProfileRef f;
  ProfileRef g;
  std::uint32_t index = 0;
};

struct RationalityViolation {
  ProfileRef profile;
};

// Exhaustive axiom audit of a rule over all |rational sets|^n profiles.
// Guard: that power <= 10^6.
struct AxiomReport {
  std::uint32_t n = 0;
  std::uint64_t profile_count = 0;
  std::vector<JudgmentPair> rational_sets;

  // Positive side: a unanimously accepted index is collectively accepted.
  bool unanimity = true;
  std::optional<UnanimityViolation> unanimity_cx;

  // Both polarities: additionally, a unanimously rejected index is
  // collectively rejected. Strictly stronger than `unanimity`.
  bool unanimity_full = true;
  std::optional<UnanimityViolation> unanimity_full_cx;

  bool independence = true;
  std::optional<PairViolation> independence_cx;

  bool pn_neutrality = true;
  std::optional<PairViolation> pn_neutrality_cx;

  // Lowest 1-based individual the rule copies on every profile, if any.
  std::optional<std::uint32_t> dictator;

  bool rationality = true;
  std::optional<RationalityViolation> rationality_cx;

  std::vector<JudgmentPair> profile_sets(const ProfileRef& ref) const;
};

AxiomReport check_axioms(const AggregationRule& rule, const FrameSpec& spec, std::uint32_t n);

}  // namespace modalagg::oracle
