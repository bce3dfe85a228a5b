#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "modalagg/aggregation.hpp"
#include "modalagg/errors.hpp"
#include "modalagg/oracle.hpp"

using namespace modalagg;

namespace {

FrameSpec spec_r4() { return FrameSpec::make(FrameKind::Frame2, 4, 1, {0, 1}); }
FrameSpec spec_r6() { return FrameSpec::make(FrameKind::Frame2, 6, 1, {0, 1}); }
FrameSpec spec_r10() { return FrameSpec::make(FrameKind::Frame2, 10, 3, {0, 1, 2, 3}); }

JudgmentPair pair_of(std::uint32_t r, std::vector<std::int64_t> plus,
                     std::vector<std::int64_t> minus) {
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

std::vector<std::uint32_t> random_counts(std::uint32_t r, std::uint32_t n,
                                         std::mt19937_64& rng) {
  std::vector<std::uint32_t> c(r);
  for (auto& v : c) v = static_cast<std::uint32_t>(rng() % (n + 1));
  return c;
}

IssueOrder random_order(std::uint32_t r, std::mt19937_64& rng) {
  std::vector<std::uint32_t> order(r);
  for (std::uint32_t i = 0; i < r; ++i) order[i] = i;
  for (std::uint32_t i = r; i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::uint32_t>(rng() % i)]);
  }
  return IssueOrder::from_permutation(std::move(order));
}

}  // namespace

TEST_CASE("profile construction validates") {
  CHECK_THROWS_AS(Profile::from_counts(0, {1, 1}), ParameterError);
  CHECK_THROWS_AS(Profile::from_counts(3, {4}), ParameterError);
  CHECK_THROWS_AS(Profile::from_counts(3, {2, 4}), ParameterError);
  auto p = Profile::from_counts(3, {2, 1, 1, 0, 0, 0});
  CHECK(p.n() == 3);
  CHECK(p.r() == 6);
  CHECK(!p.has_judgments());

  auto spec = spec_r6();
  CHECK_THROWS_AS(Profile::from_judgments(spec, {}), ParameterError);
  CHECK_THROWS_AS(Profile::from_judgments(spec, {pair_of(6, {0}, {})}), ParameterError);
  // complete but inconsistent: {0,1} = A+0 is swallowed by (A+1) | (A+5)
  CHECK_THROWS_AS(Profile::from_judgments(spec, {pair_of(6, {1, 5}, {0, 2, 3, 4})}),
                  ParameterError);
  auto q = Profile::from_judgments(
      spec, {pair_of(6, {0}, {1, 2, 3, 4, 5}), pair_of(6, {1}, {0, 2, 3, 4, 5})});
  CHECK(q.n() == 2);
  CHECK(q.counts() == std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0});
  CHECK(q.has_judgments());
}

TEST_CASE("issue order validates bijections") {
  CHECK(IssueOrder::identity(4).order() == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK_THROWS_AS(IssueOrder::from_permutation({0, 0, 1}), ParameterError);
  CHECK_THROWS_AS(IssueOrder::from_permutation({0, 3}), ParameterError);
  CHECK(IssueOrder::from_permutation({2, 0, 1}).at(0) == 2);
}

TEST_CASE("one-shot majority rule goldens") {
  auto spec = spec_r6();
  auto res = horn_aggregate(Profile::from_counts(3, {2, 1, 1, 0, 0, 0}), spec);
  CHECK(res.valuation == ResidueSet::from_members(6, {0, 1}));
  CHECK(res.outcome == pair_of(6, {0}, {1, 2, 3, 4, 5}));
  CHECK(is_consistent(res.outcome, spec));

  auto all = horn_aggregate(Profile::from_counts(3, {3, 3, 3, 3, 3, 3}), spec);
  CHECK(all.valuation == ResidueSet::full_set(6));
  CHECK(all.outcome.plus() == ResidueSet::full_set(6));

  auto none = horn_aggregate(Profile::from_counts(3, {0, 0, 0, 0, 0, 0}), spec);
  CHECK(none.valuation.empty());
  CHECK(none.outcome.minus() == ResidueSet::full_set(6));

  CHECK_THROWS_AS(horn_aggregate(Profile::from_counts(3, {3, 3}), spec), ParameterError);
}

TEST_CASE("one-shot rule equals the unit-propagation fixpoint") {
  std::mt19937_64 rng(7);
  for (auto spec : {spec_r6(), spec_r10(), FrameSpec::make(FrameKind::Frame2, 20, 4, {0, 4})}) {
    const std::uint32_t r = spec.r();
    for (int trial = 0; trial < 50; ++trial) {
      auto profile = Profile::from_counts(5, random_counts(r, 5, rng));
      auto res = horn_aggregate(profile, spec);
      // Fixpoint: winners seed the valuation; accept anything whose translate
      // is swallowed; iterate until stable.
      std::vector<std::uint8_t> val(r, 0), acc(r, 0);
      for (std::uint32_t w = 0; w < r; ++w) {
        if (2ull * profile.count(w) >= profile.n()) {
          for (std::uint32_t a : spec.A().members()) val[add_mod(w, a, r)] = 1;
        }
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::uint32_t w = 0; w < r; ++w) {
          if (acc[w]) continue;
          bool inside = true;
          for (std::uint32_t a : spec.A().members()) {
            if (!val[add_mod(w, a, r)]) inside = false;
          }
          if (inside) {
            acc[w] = 1;
            changed = true;
            for (std::uint32_t a : spec.A().members()) val[add_mod(w, a, r)] = 1;
          }
        }
      }
      for (std::uint32_t w = 0; w < r; ++w) {
        CHECK(acc[w] == (res.outcome.plus().contains(w) ? 1 : 0));
        CHECK(val[w] == (res.valuation.contains(w) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("sequential majority goldens with traces") {
  auto spec = spec_r4();
  std::vector<SeqTraceEntry> trace;
  auto out = seq_majority(Profile::from_counts(3, {3, 3, 0, 0}), spec, IssueOrder::identity(4),
                          Strategy::Interval, nullptr, &trace);
  CHECK(out == pair_of(4, {0, 1}, {2, 3}));
  REQUIRE(trace.size() == 4);
  CHECK(trace[0].decision == SeqDecision::MajorityAccept);
  CHECK(trace[1].decision == SeqDecision::MajorityAccept);
  CHECK(trace[2].decision == SeqDecision::MajorityReject);
  CHECK(trace[3].decision == SeqDecision::ForcedReject);
  CHECK(trace[3].issue == 3);

  auto spec7 = FrameSpec::make(FrameKind::Frame2, 7, 2, {0, 1, 2});
  auto order = IssueOrder::from_permutation({0, 2, 4, 1, 3, 5, 6});
  auto out7 = seq_majority(Profile::from_counts(3, {3, 0, 3, 0, 3, 0, 0}), spec7, order,
                           Strategy::General, nullptr, &trace);
  CHECK(out7.plus() == ResidueSet::full_set(7));
  CHECK(trace[3].issue == 1);
  CHECK(trace[3].decision == SeqDecision::ForcedAccept);
  for (std::size_t m = 4; m < 7; ++m) CHECK(trace[m].decision == SeqDecision::ForcedAccept);

  // Unanimous profiles accept everything under any order.
  auto uni = Profile::from_counts(2, {2, 2, 2, 2, 2, 2, 2});
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    auto o = random_order(7, rng);
    CHECK(seq_majority(uni, spec7, o, Strategy::Reference).plus() == ResidueSet::full_set(7));
  }
}

TEST_CASE("forced-decision checks against hand-set states") {
  auto spec = spec_r10();
  for (auto strat : {Strategy::Reference, Strategy::General, Strategy::Interval}) {
    SeqState state(spec, strat);
    state.accept(0);
    state.accept(3);
    CHECK(check_accept_forced(state, 1));
    CHECK(!check_accept_forced(state, 5));
    CHECK(!check_reject_forced(state, 5));
    if (strat == Strategy::Interval) {
      CHECK(state.left_distance()[1] == 1);
      CHECK(state.right_distance()[1] == 2);
      CHECK(state.left_distance()[0] == 0);
      CHECK(state.right_distance()[0] == 0);
    }
  }
  auto spec4 = spec_r4();
  for (auto strat : {Strategy::Reference, Strategy::General, Strategy::Interval}) {
    SeqState state(spec4, strat);
    state.accept(0);
    state.accept(1);
    state.reject(2);
    CHECK(check_reject_forced(state, 3));
    CHECK(!check_accept_forced(state, 3));
  }
  auto spec7 = FrameSpec::make(FrameKind::Frame2, 7, 2, {0, 1, 2});
  for (auto strat : {Strategy::Reference, Strategy::General, Strategy::Interval}) {
    SeqState state(spec7, strat);
    state.accept(0);
    state.reject(1);
    CHECK(check_reject_forced(state, 2));
  }
  // Nothing is forced against an empty state.
  SeqState fresh(spec, Strategy::General);
  CHECK(!check_accept_forced(fresh, 0));
  CHECK(!check_reject_forced(fresh, 0));
  CHECK_THROWS_AS(check_accept_forced(fresh, 10), ParameterError);
}

TEST_CASE("state guards") {
  auto spec = spec_r4();
  SeqState state(spec, Strategy::General);
  state.accept(0);
  CHECK_THROWS_AS(state.accept(0), ParameterError);
  CHECK_THROWS_AS(state.reject(0), ParameterError);
  CHECK_THROWS_AS(state.accept(4), ParameterError);
  CHECK_THROWS_AS(check_accept_forced(state, 0), ParameterError);
  CHECK_THROWS_AS(SeqState(FrameSpec::make(FrameKind::Frame2, 6, 2, {0, 2}), Strategy::Interval),
                  ParameterError);
  CHECK_THROWS_AS(seq_majority(Profile::from_counts(2, {2, 2, 2, 2, 2, 2}),
                               FrameSpec::make(FrameKind::Frame2, 6, 2, {0, 2}),
                               IssueOrder::identity(6), Strategy::Interval),
                  ParameterError);
  CHECK_THROWS_AS(seq_majority(Profile::from_counts(2, {2, 2}), spec, IssueOrder::identity(4),
                               Strategy::General),
                  ParameterError);
  CHECK_THROWS_AS(seq_majority(Profile::from_counts(2, {2, 2, 2, 2}), spec,
                               IssueOrder::identity(3), Strategy::General),
                  ParameterError);
}

TEST_CASE("strategy internals match their defining formulas") {
  auto spec = FrameSpec::make(FrameKind::Frame2, 50, 5, {0, 1, 2, 3, 4, 5});
  const std::uint32_t r = spec.r();
  const std::uint32_t k = spec.k();
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    SeqState ref(spec, Strategy::Reference);
    SeqState gen(spec, Strategy::General);
    SeqState itv(spec, Strategy::Interval);
    auto order = random_order(r, rng);
    for (std::uint32_t m = 0; m < r; ++m) {
      std::uint32_t w = order.at(m);
      bool fa = check_accept_forced(ref, w);
      bool fr = check_reject_forced(ref, w);
      CHECK(check_accept_forced(gen, w) == fa);
      CHECK(check_reject_forced(gen, w) == fr);
      CHECK(check_accept_forced(itv, w) == fa);
      CHECK(check_reject_forced(itv, w) == fr);
      bool take = fa || (!fr && rng() % 2 == 0);
      for (SeqState* s : {&ref, &gen, &itv}) {
        if (take) {
          s->accept(w);
        } else {
          s->reject(w);
        }
      }
      // Re-derive the incremental tables from the accepted set.
      std::vector<std::uint8_t> cover(r, 0);
      for (std::uint32_t x = 0; x < r; ++x) {
        if (!gen.accepted(x)) continue;
        for (std::uint32_t a : spec.A().members()) cover[add_mod(x, a, r)] = 1;
      }
      REQUIRE(gen.cover() == cover);
      for (std::uint32_t x = 0; x < r; ++x) {
        std::uint32_t le = k + 1, ri = k + 1;
        for (std::uint32_t t = 0; t <= k; ++t) {
          if (le == k + 1 && itv.accepted(sub_mod(x, t, r))) le = t;
          if (ri == k + 1 && itv.accepted(add_mod(x, t, r))) ri = t;
        }
        REQUIRE(itv.left_distance()[x] == le);
        REQUIRE(itv.right_distance()[x] == ri);
      }
    }
    CHECK(ref.to_pair() == gen.to_pair());
    CHECK(ref.to_pair() == itv.to_pair());
    CHECK(is_consistent(ref.to_pair(), spec));
  }
}

TEST_CASE("strategies agree on random profiles and orders") {
  std::mt19937_64 rng(31);
  for (auto spec : {spec_r10(), FrameSpec::make(FrameKind::Frame2, 23, 4, {0, 1, 2, 3, 4}),
                    FrameSpec::make(FrameKind::Frame2, 50, 5, {0, 1, 2, 3, 4, 5})}) {
    const std::uint32_t r = spec.r();
    for (int trial = 0; trial < 60; ++trial) {
      auto profile = Profile::from_counts(5, random_counts(r, 5, rng));
      auto order = random_order(r, rng);
      auto a = seq_majority(profile, spec, order, Strategy::Reference);
      auto b = seq_majority(profile, spec, order, Strategy::General);
      auto c = seq_majority(profile, spec, order, Strategy::Interval);
      REQUIRE(a == b);
      REQUIRE(a == c);
      CHECK(a.complete());
      CHECK(is_consistent(a, spec));
    }
  }
  // Gapped successor sets: no interval strategy, but the other two still agree.
  auto gapped = FrameSpec::make(FrameKind::Frame2, 12, 3, {0, 3});
  for (int trial = 0; trial < 60; ++trial) {
    auto profile = Profile::from_counts(5, random_counts(12, 5, rng));
    auto order = random_order(12, rng);
    auto a = seq_majority(profile, gapped, order, Strategy::Reference);
    auto b = seq_majority(profile, gapped, order, Strategy::General);
    REQUIRE(a == b);
    CHECK(is_consistent(a, gapped));
  }
}

TEST_CASE("interval strategy stays within its per-issue op budget") {
  auto spec = FrameSpec::make(FrameKind::Frame2, 200, 8, {0, 1, 2, 3, 4, 5, 6, 7, 8});
  std::mt19937_64 rng(41);
  auto profile = Profile::from_counts(5, random_counts(200, 5, rng));
  OpCounts ops;
  seq_majority(profile, spec, IssueOrder::identity(200), Strategy::Interval, &ops);
  CHECK(ops.index_ops > 0);
  CHECK(ops.index_ops <= 200ull * (6 * 8 + 6));
}

TEST_CASE("proposition-wise majority and the paradox witness") {
  auto spec = spec_r6();
  auto maj = majority_outcome(Profile::from_counts(3, {2, 1, 1, 0, 0, 0}), spec);
  CHECK(maj == pair_of(6, {0}, {1, 2, 3, 4, 5}));
  CHECK(maj.complete());

  for (auto s : {spec_r6(), spec_r10()}) {
    auto wit = paradox_witness(s);
    CHECK(wit.profile.n() == 3);
    REQUIRE(wit.profile.has_judgments());
    for (const auto& judge : wit.profile.judgments()) {
      CHECK(judge.complete());
      CHECK(is_consistent(judge, s));
    }
    CHECK(oracle::brute_min_inconsistent(wit.base, s));
    CHECK(wit.outcome == majority_outcome(wit.profile, s));
    CHECK(wit.outcome.complete());
    CHECK(!is_consistent(wit.outcome, s));
    CHECK(!oracle::brute_consistent(wit.outcome, s));
  }
  auto wit6 = paradox_witness(spec_r6());
  CHECK(wit6.base == pair_of(6, {1, 5}, {0}));
}

TEST_CASE("unanimity and rationality over the exhaustive two-judge grid") {
  auto spec = spec_r4();
  auto sets = oracle::enumerate_rational_sets(spec);
  REQUIRE(sets.size() == 10);
  for (const auto& s1 : sets) {
    for (const auto& s2 : sets) {
      auto profile = Profile::from_judgments(spec, {s1, s2});
      auto out = seq_majority(profile, spec, IssueOrder::identity(4), Strategy::General);
      CHECK(out.complete());
      CHECK(is_consistent(out, spec));
      for (std::uint32_t w = 0; w < 4; ++w) {
        if (s1.plus().contains(w) && s2.plus().contains(w)) CHECK(out.plus().contains(w));
      }
      auto horn = horn_aggregate(profile, spec);
      for (std::uint32_t w = 0; w < 4; ++w) {
        if (s1.plus().contains(w) && s2.plus().contains(w)) CHECK(horn.outcome.plus().contains(w));
      }
    }
  }
}
