#pragma once

#include <cstdint>
#include <vector>

#include "modalagg/covering.hpp"
#include "modalagg/residue.hpp"

namespace modalagg {

// Acceptance counts per index for a panel of n individuals. Optionally keeps
// the explicit rational judgment sets the counts came from.
class Profile {
public:
  static Profile from_counts(std::uint32_t n, std::vector<std::uint32_t> counts);
  // Validates that every individual set is complete and consistent.
  static Profile from_judgments(const FrameSpec& spec, std::vector<JudgmentPair> sets);

  std::uint32_t n() const { return n_; }
  std::uint32_t r() const { return static_cast<std::uint32_t>(counts_.size()); }
  std::uint32_t count(std::uint32_t w) const { return counts_[w]; }
  const std::vector<std::uint32_t>& counts() const { return counts_; }

  bool has_judgments() const { return !judgments_.empty(); }
  const std::vector<JudgmentPair>& judgments() const { return judgments_; }

private:
  Profile(std::uint32_t n, std::vector<std::uint32_t> counts, std::vector<JudgmentPair> sets)
      : n_(n), counts_(std::move(counts)), judgments_(std::move(sets)) {}

  std::uint32_t n_;
  std::vector<std::uint32_t> counts_;
  std::vector<JudgmentPair> judgments_;
};

// Visit order over the r issues; a bijection on [0, r).
class IssueOrder {
public:
  static IssueOrder identity(std::uint32_t r);
  static IssueOrder from_permutation(std::vector<std::uint32_t> order);

  std::uint32_t size() const { return static_cast<std::uint32_t>(order_.size()); }
  std::uint32_t at(std::uint32_t m) const { return order_[m]; }
  const std::vector<std::uint32_t>& order() const { return order_; }

private:
  explicit IssueOrder(std::vector<std::uint32_t> order) : order_(std::move(order)) {}
  std::vector<std::uint32_t> order_;
};

struct HornResult {
  ResidueSet valuation;   // union of the majority winners' translates
  JudgmentPair outcome;   // indices whose translate the valuation absorbs
};

// One-shot rule: translate-union of the indices with weak majority support,
// read back through the indexed propositions. Always consistent.
HornResult horn_aggregate(const Profile& profile, const FrameSpec& spec);

enum class Strategy {
  Reference,  // re-derives both forcing checks from the covering criterion
  General,    // incremental coverage array, works for any successor set
  Interval,   // distance tables, requires A = [0, k]
};

// Primitive-operation tally for scaling measurements: every read or write of
// a per-index table entry counts one.
struct OpCounts {
  std::uint64_t index_ops = 0;
};

// Running state of the sequential rule: decided issues plus the incremental
// structures the chosen strategy maintains.
class SeqState {
public:
  SeqState(const FrameSpec& spec, Strategy strategy);

  const FrameSpec& spec() const { return spec_; }
  Strategy strategy() const { return strategy_; }
  bool decided(std::uint32_t w) const { return in_plus_[w] || in_minus_[w]; }
  bool accepted(std::uint32_t w) const { return in_plus_[w] != 0; }
  bool rejected(std::uint32_t w) const { return in_minus_[w] != 0; }

  void accept(std::uint32_t w, OpCounts* counts = nullptr);
  void reject(std::uint32_t w, OpCounts* counts = nullptr);

  JudgmentPair to_pair() const;

  // Strategy internals, exposed for invariant tests.
  const std::vector<std::uint8_t>& cover() const { return cover_; }
  const std::vector<std::uint32_t>& left_distance() const { return cvle_; }
  const std::vector<std::uint32_t>& right_distance() const { return cvri_; }

private:
  friend bool check_accept_forced(const SeqState&, std::uint32_t, OpCounts*);
  friend bool check_reject_forced(const SeqState&, std::uint32_t, OpCounts*);

  FrameSpec spec_;
  Strategy strategy_;
  std::vector<std::uint8_t> in_plus_;
  std::vector<std::uint8_t> in_minus_;
  std::vector<std::uint32_t> plus_members_;
  std::vector<std::uint8_t> cover_;   // general: marked translate union
  std::vector<std::uint32_t> cvle_;   // interval: distance to nearest accepted index at or left
  std::vector<std::uint32_t> cvri_;   // interval: same to the right
  std::vector<std::uint32_t> diffs_;  // general: nonzero pairwise member differences of A
};

// Accepting the issue is forced: rejecting it would contradict the decisions
// already taken.
bool check_accept_forced(const SeqState& state, std::uint32_t issue, OpCounts* counts = nullptr);

// Rejecting the issue is forced: accepting it would contradict the decisions
// already taken.
bool check_reject_forced(const SeqState& state, std::uint32_t issue, OpCounts* counts = nullptr);

// How a single issue got decided.
enum class SeqDecision : std::uint8_t {
  ForcedAccept,
  ForcedReject,
  MajorityAccept,
  MajorityReject,
};

struct SeqTraceEntry {
  std::uint32_t issue = 0;
  SeqDecision decision = SeqDecision::MajorityAccept;
};

// Sequential majority: visit issues in the given order; apply a forced
// decision when one exists, otherwise weak majority (ties accept). The
// result is complete and consistent for every profile and order. When given,
// `trace` receives one entry per issue in visiting order.
JudgmentPair seq_majority(const Profile& profile, const FrameSpec& spec, const IssueOrder& order,
                          Strategy strategy, OpCounts* counts = nullptr,
                          std::vector<SeqTraceEntry>* trace = nullptr);

// Proposition-wise weak majority, no repair. Complete but possibly
// inconsistent; the discursive-dilemma baseline.
JudgmentPair majority_outcome(const Profile& profile, const FrameSpec& spec);

// A three-judge profile of rational sets whose proposition-wise majority is
// inconsistent, built around the minimally inconsistent pair at index 0.
struct ParadoxWitness {
  Profile profile;
  JudgmentPair base;     // the minimally inconsistent pair the judges straddle
  JudgmentPair outcome;  // proposition-wise majority of the profile
};

ParadoxWitness paradox_witness(const FrameSpec& spec);

}  // namespace modalagg
