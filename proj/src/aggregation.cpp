#include "modalagg/aggregation.hpp"

#include <algorithm>
#include <stdexcept>

namespace modalagg {

namespace {

inline void tally(OpCounts* counts, std::uint64_t ops) {
  if (counts) counts->index_ops += ops;
}

}  // namespace

Profile Profile::from_counts(std::uint32_t n, std::vector<std::uint32_t> counts) {
  if (n == 0) throw ParameterError("profile needs at least one individual");
  if (counts.size() < 2) throw ParameterError("profile needs at least two issues");
  for (std::uint32_t c : counts) {
    if (c > n) throw ParameterError("acceptance count exceeds the panel size");
  }
  return Profile(n, std::move(counts), {});
}

Profile Profile::from_judgments(const FrameSpec& spec, std::vector<JudgmentPair> sets) {
  if (sets.empty()) throw ParameterError("profile needs at least one individual");
  std::vector<std::uint32_t> counts(spec.r(), 0);
  for (const JudgmentPair& jp : sets) {
    if (jp.modulus() != spec.r()) throw ParameterError("judgment modulus does not match frame");
    if (!jp.complete()) throw ParameterError("individual judgment sets must be complete");
    if (!is_consistent(jp, spec)) {
      throw ParameterError("individual judgment sets must be consistent");
    }
    for (std::uint32_t w : jp.plus().members()) ++counts[w];
  }
  const auto n = static_cast<std::uint32_t>(sets.size());
  return Profile(n, std::move(counts), std::move(sets));
}

IssueOrder IssueOrder::identity(std::uint32_t r) {
  std::vector<std::uint32_t> order(r);
  for (std::uint32_t i = 0; i < r; ++i) order[i] = i;
  return IssueOrder(std::move(order));
}

IssueOrder IssueOrder::from_permutation(std::vector<std::uint32_t> order) {
  std::vector<std::uint8_t> seen(order.size(), 0);
  for (std::uint32_t v : order) {
    if (v >= order.size() || seen[v]) throw ParameterError("issue order must be a bijection");
    seen[v] = 1;
  }
  return IssueOrder(std::move(order));
}

HornResult horn_aggregate(const Profile& profile, const FrameSpec& spec) {
  const std::uint32_t r = spec.r();
  const std::uint32_t n = profile.n();
  if (profile.r() != r) throw ParameterError("profile issue count does not match frame");
  std::vector<std::uint8_t> marked(r, 0);
  for (std::uint32_t w = 0; w < r; ++w) {
    if (2ull * profile.count(w) >= n) {
      for (std::uint32_t a : spec.A().members()) marked[add_mod(w, a, r)] = 1;
    }
  }
  std::vector<std::int64_t> vmembers, plus, minus;
  for (std::uint32_t u = 0; u < r; ++u) {
    if (marked[u]) vmembers.push_back(u);
  }
  for (std::uint32_t w = 0; w < r; ++w) {
    bool inside = true;
    for (std::uint32_t a : spec.A().members()) {
      if (!marked[add_mod(w, a, r)]) {
        inside = false;
        break;
      }
    }
    (inside ? plus : minus).push_back(w);
  }
  return HornResult{ResidueSet::from_members(r, vmembers),
                    JudgmentPair(ResidueSet::from_members(r, plus),
                                 ResidueSet::from_members(r, minus))};
}

SeqState::SeqState(const FrameSpec& spec, Strategy strategy)
    : spec_(spec), strategy_(strategy) {
  const std::uint32_t r = spec_.r();
  in_plus_.assign(r, 0);
  in_minus_.assign(r, 0);
  if (strategy_ == Strategy::Interval) {
    const std::uint32_t k = spec_.k();
    if (spec_.A() != ResidueSet::interval(r, 0, k)) {
      throw ParameterError("interval strategy requires A = [0, k]");
    }
    cvle_.assign(r, k + 1);
    cvri_.assign(r, k + 1);
  } else if (strategy_ == Strategy::General) {
    cover_.assign(r, 0);
    const auto& a = spec_.A().members();
    std::vector<std::uint8_t> seen(r, 0);
    for (std::uint32_t a1 : a) {
      for (std::uint32_t a0 : a) {
        std::uint32_t d = sub_mod(a1, a0, r);
        if (d != 0 && !seen[d]) {
          seen[d] = 1;
          diffs_.push_back(d);
        }
      }
    }
    std::sort(diffs_.begin(), diffs_.end());
  }
}

void SeqState::accept(std::uint32_t w, OpCounts* counts) {
  const std::uint32_t r = spec_.r();
  if (w >= r) throw ParameterError("issue index out of range");
  if (decided(w)) throw ParameterError("issue already decided");
  in_plus_[w] = 1;
  plus_members_.push_back(w);
  if (strategy_ == Strategy::General) {
    for (std::uint32_t a : spec_.A().members()) cover_[add_mod(w, a, r)] = 1;
    tally(counts, spec_.A().size());
  } else if (strategy_ == Strategy::Interval) {
    const std::uint32_t k = spec_.k();
    for (std::uint32_t t = 0; t <= k; ++t) {
      std::uint32_t right = add_mod(w, t, r);
      if (cvle_[right] > t) cvle_[right] = t;
      std::uint32_t left = sub_mod(w, t, r);
      if (cvri_[left] > t) cvri_[left] = t;
    }
    tally(counts, 2ull * (k + 1));
  }
}

void SeqState::reject(std::uint32_t w, OpCounts* counts) {
  if (w >= spec_.r()) throw ParameterError("issue index out of range");
  if (decided(w)) throw ParameterError("issue already decided");
  in_minus_[w] = 1;
  tally(counts, 1);
}

JudgmentPair SeqState::to_pair() const {
  const std::uint32_t r = spec_.r();
  std::vector<std::int64_t> plus, minus;
  for (std::uint32_t w = 0; w < r; ++w) {
    if (in_plus_[w]) plus.push_back(w);
    if (in_minus_[w]) minus.push_back(w);
  }
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

namespace {

JudgmentPair state_pair_with(const SeqState& state, std::uint32_t extra, bool extra_positive) {
  const std::uint32_t r = state.spec().r();
  std::vector<std::int64_t> plus, minus;
  for (std::uint32_t w = 0; w < r; ++w) {
    if (state.accepted(w)) plus.push_back(w);
    if (state.rejected(w)) minus.push_back(w);
  }
  (extra_positive ? plus : minus).push_back(extra);
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

}  // namespace

bool check_accept_forced(const SeqState& state, std::uint32_t issue, OpCounts* counts) {
  const FrameSpec& spec = state.spec_;
  const std::uint32_t r = spec.r();
  if (issue >= r) throw ParameterError("issue index out of range");
  if (state.decided(issue)) throw ParameterError("issue already decided");
  switch (state.strategy_) {
    case Strategy::Reference:
      return !is_consistent(state_pair_with(state, issue, false), spec);
    case Strategy::General: {
      for (std::uint32_t a : spec.A().members()) {
        tally(counts, 1);
        if (!state.cover_[add_mod(issue, a, r)]) return false;
      }
      return true;
    }
    case Strategy::Interval: {
      tally(counts, 2);
      return state.cvle_[issue] + state.cvri_[issue] <= spec.k() + 1;
    }
  }
  throw std::logic_error("unreachable strategy");
}

bool check_reject_forced(const SeqState& state, std::uint32_t issue, OpCounts* counts) {
  const FrameSpec& spec = state.spec_;
  const std::uint32_t r = spec.r();
  if (issue >= r) throw ParameterError("issue index out of range");
  if (state.decided(issue)) throw ParameterError("issue already decided");
  switch (state.strategy_) {
    case Strategy::Reference:
      return !is_consistent(state_pair_with(state, issue, true), spec);
    case Strategy::General: {
      // Accepting `issue` can only swallow rejected indices whose translate
      // meets the new one, i.e. indices at a pairwise member difference.
      for (std::uint32_t d : state.diffs_) {
        std::uint32_t w0 = add_mod(issue, d, r);
        tally(counts, 1);
        if (!state.in_minus_[w0]) continue;
        bool swallowed = true;
        for (std::uint32_t a : spec.A().members()) {
          std::uint32_t u = add_mod(w0, a, r);
          tally(counts, 1);
          if (!state.cover_[u] && !spec.A().contains_canonical(sub_mod(u, issue, r))) {
            swallowed = false;
            break;
          }
        }
        if (swallowed) return true;
      }
      return false;
    }
    case Strategy::Interval: {
      const std::uint32_t k = spec.k();
      for (std::uint32_t t = 1; t <= k; ++t) {
        std::uint32_t left = sub_mod(issue, t, r);  // issue - left == t
        tally(counts, 2);
        if (state.in_minus_[left] &&
            state.cvle_[left] + std::min(state.cvri_[left], t) <= k + 1) {
          return true;
        }
        std::uint32_t right = add_mod(issue, t, r);  // right - issue == t
        tally(counts, 2);
        if (state.in_minus_[right] &&
            std::min(state.cvle_[right], t) + state.cvri_[right] <= k + 1) {
          return true;
        }
      }
      return false;
    }
  }
  throw std::logic_error("unreachable strategy");
}

JudgmentPair seq_majority(const Profile& profile, const FrameSpec& spec, const IssueOrder& order,
                          Strategy strategy, OpCounts* counts,
                          std::vector<SeqTraceEntry>* trace) {
  const std::uint32_t r = spec.r();
  if (profile.r() != r) throw ParameterError("profile issue count does not match frame");
  if (order.size() != r) throw ParameterError("issue order length does not match frame");
  if (trace) {
    trace->clear();
    trace->reserve(r);
  }
  SeqState state(spec, strategy);
  for (std::uint32_t m = 0; m < r; ++m) {
    std::uint32_t w = order.at(m);
    bool fa = check_accept_forced(state, w, counts);
    bool fr = check_reject_forced(state, w, counts);
    if (fa && fr) {
      throw std::logic_error("both decisions forced; running state is inconsistent");
    }
    SeqDecision decision;
    if (fa) {
      state.accept(w, counts);
      decision = SeqDecision::ForcedAccept;
    } else if (fr) {
      state.reject(w, counts);
      decision = SeqDecision::ForcedReject;
    } else if (2ull * profile.count(w) >= profile.n()) {
      state.accept(w, counts);
      decision = SeqDecision::MajorityAccept;
    } else {
      state.reject(w, counts);
      decision = SeqDecision::MajorityReject;
    }
    if (trace) trace->push_back({w, decision});
  }
  return state.to_pair();
}

JudgmentPair majority_outcome(const Profile& profile, const FrameSpec& spec) {
  const std::uint32_t r = spec.r();
  if (profile.r() != r) throw ParameterError("profile issue count does not match frame");
  std::vector<std::int64_t> plus, minus;
  for (std::uint32_t w = 0; w < r; ++w) {
    (2ull * profile.count(w) >= profile.n() ? plus : minus).push_back(w);
  }
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

ParadoxWitness paradox_witness(const FrameSpec& spec) {
  PointedMinimalCover pmc = find_pointed_minimal_cover(0, spec);
  JudgmentPair base = min_inconsistent_from_pmc(pmc, spec);
  const std::uint32_t r = spec.r();

  // Elements of the base pair, negative literal first; judge i flips the
  // i-th one and keeps the rest, which stays consistent by minimality.
  struct Literal {
    bool positive;
    std::uint32_t index;
  };
  std::vector<Literal> literals;
  for (std::uint32_t w : base.minus().members()) literals.push_back({false, w});
  for (std::uint32_t w : base.plus().members()) literals.push_back({true, w});
  if (literals.size() < 3) throw Error("base pair too small for a three-judge paradox");

  std::vector<JudgmentPair> judges;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<std::int64_t> plus, minus;
    for (std::size_t j = 0; j < literals.size(); ++j) {
      bool sign = j == i ? !literals[j].positive : literals[j].positive;
      (sign ? plus : minus).push_back(literals[j].index);
    }
    JudgmentPair partial(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
    judges.push_back(complete_judgment(partial, spec));
  }
  Profile profile = Profile::from_judgments(spec, std::move(judges));
  JudgmentPair outcome = majority_outcome(profile, spec);
  return ParadoxWitness{std::move(profile), std::move(base), std::move(outcome)};
}

}  // namespace modalagg
