#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "modalagg/aggregation.hpp"
#include "modalagg/covering.hpp"
#include "modalagg/errors.hpp"
#include "modalagg/oracle.hpp"

using namespace modalagg;

namespace {

FrameSpec spec_r4() { return FrameSpec::make(FrameKind::Frame2, 4, 1, {0, 1}); }
FrameSpec spec_r6() { return FrameSpec::make(FrameKind::Frame2, 6, 1, {0, 1}); }

JudgmentPair pair_of(std::uint32_t r, std::vector<std::int64_t> plus,
                     std::vector<std::int64_t> minus) {
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

// Independent route: filter every complete pair through the valuation scan.
std::vector<JudgmentPair> filtered_complete_pairs(const FrameSpec& spec) {
  const std::uint32_t r = spec.r();
  std::vector<std::vector<std::int64_t>> plus_lists;
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::vector<std::int64_t> plus, minus;
    for (std::uint32_t w = 0; w < r; ++w) {
      ((mask >> w) & 1 ? plus : minus).push_back(w);
    }
    if (oracle::brute_consistent_serial(pair_of(r, plus, minus), spec)) {
      plus_lists.push_back(std::move(plus));
    }
  }
  std::sort(plus_lists.begin(), plus_lists.end());
  std::vector<JudgmentPair> out;
  for (const auto& plus : plus_lists) {
    ResidueSet p = ResidueSet::from_members(r, plus);
    out.emplace_back(p, p.complement());
  }
  return out;
}

std::uint32_t acceptance_coalition(const std::vector<JudgmentPair>& sets, std::uint32_t w) {
  std::uint32_t coal = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].plus().contains(w)) coal |= std::uint32_t{1} << i;
  }
  return coal;
}

oracle::AggregationRule seqmaj_rule(const FrameSpec& spec) {
  return [spec](const std::vector<JudgmentPair>& sets) {
    auto profile = Profile::from_judgments(spec, sets);
    return seq_majority(profile, spec, IssueOrder::identity(spec.r()), Strategy::General);
  };
}

}  // namespace

TEST_CASE("rational-set enumeration at r = 4 is the frozen ten") {
  auto sets = oracle::enumerate_rational_sets(spec_r4());
  std::vector<std::vector<std::uint32_t>> expected{
      {}, {0}, {0, 1}, {0, 1, 2, 3}, {0, 3}, {1}, {1, 2}, {2}, {2, 3}, {3}};
  REQUIRE(sets.size() == expected.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    CHECK(sets[i].plus().members() == expected[i]);
    CHECK(sets[i].complete());
  }
}

TEST_CASE("enumeration equals the brute-filtered complete pairs") {
  for (auto spec : {spec_r4(), spec_r6(), FrameSpec::make(FrameKind::Frame2, 7, 2, {0, 1, 2}),
                    FrameSpec::make(FrameKind::Frame2, 8, 1, {0, 1}),
                    FrameSpec::make(FrameKind::Frame2, 8, 3, {0, 1, 2, 3})}) {
    auto sets = oracle::enumerate_rational_sets(spec);
    auto expected = filtered_complete_pairs(spec);
    REQUIRE(sets.size() == expected.size());
    for (std::size_t i = 0; i < sets.size(); ++i) REQUIRE(sets[i] == expected[i]);
    auto serial = oracle::enumerate_rational_sets_serial(spec);
    REQUIRE(sets.size() == serial.size());
    for (std::size_t i = 0; i < sets.size(); ++i) REQUIRE(sets[i] == serial[i]);
  }
}

TEST_CASE("rational sets ignore the frame kind") {
  auto f1 = oracle::enumerate_rational_sets(FrameSpec::make(FrameKind::Frame1, 6, 1, {0, 1}));
  auto f2 = oracle::enumerate_rational_sets(spec_r6());
  REQUIRE(f1.size() == f2.size());
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(f1[i] == f2[i]);
}

TEST_CASE("brute consistency agrees with its serial twin on random pairs") {
  auto spec = FrameSpec::make(FrameKind::Frame2, 12, 3, {0, 1, 2, 3});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::int64_t> plus, minus;
    for (std::uint32_t w = 0; w < 12; ++w) {
      switch (rng() % 3) {
        case 1: plus.push_back(w); break;
        case 2: minus.push_back(w); break;
        default: break;
      }
    }
    auto jp = pair_of(12, plus, minus);
    CHECK(oracle::brute_consistent(jp, spec) == oracle::brute_consistent_serial(jp, spec));
  }
}

TEST_CASE("minimal-inconsistency oracle goldens") {
  CHECK(oracle::brute_min_inconsistent(pair_of(6, {1, 5}, {0}), spec_r6()));
  CHECK(oracle::brute_min_inconsistent(
      pair_of(10, {3, 9}, {0}), FrameSpec::make(FrameKind::Frame2, 10, 3, {0, 1, 2, 3})));
  CHECK(!oracle::brute_min_inconsistent(pair_of(6, {1}, {0}), spec_r6()));
  CHECK(!oracle::brute_min_inconsistent(pair_of(6, {1, 2, 5}, {0}), spec_r6()));
  CHECK(!oracle::brute_min_inconsistent(pair_of(6, {0, 1, 2, 3, 4, 5}, {}), spec_r6()));
}

TEST_CASE("strict-order oracle: constructed edges verify, reflexivity never") {
  auto spec = spec_r6();
  for (std::uint32_t w = 0; w < 6; ++w) {
    CHECK(oracle::brute_lt0(w + 1, w, spec));
    CHECK(!oracle::brute_lt0(w, w, spec));
  }
  auto spec7 = FrameSpec::make(FrameKind::Frame2, 7, 2, {0, 1, 2});
  CHECK(oracle::brute_lt0(2, 0, spec7));
  for (std::uint32_t w = 0; w < 7; ++w) {
    auto wit = lt0_witness(w, spec7);
    CHECK(verify_lt0_witness(wit, spec7));
    CHECK(oracle::brute_lt0(wit.u, wit.v, spec7));
  }
}

TEST_CASE("resource guards throw instead of grinding") {
  auto big = [](std::uint32_t r) { return FrameSpec::make(FrameKind::Frame2, r, 1, {0, 1}); };
  auto jp21 = JudgmentPair(ResidueSet::from_members(21, {0}), ResidueSet::empty_set(21));
  CHECK_THROWS_AS(oracle::brute_consistent(jp21, big(21)), ResourceError);
  CHECK_THROWS_AS(oracle::brute_consistent_serial(jp21, big(21)), ResourceError);
  auto jp15 = JudgmentPair(ResidueSet::from_members(15, {0}), ResidueSet::empty_set(15));
  CHECK_THROWS_AS(oracle::brute_min_inconsistent(jp15, big(15)), ResourceError);
  CHECK_THROWS_AS(oracle::brute_lt0(1, 0, big(9)), ResourceError);
  CHECK_THROWS_AS(oracle::enumerate_rational_sets(big(15)), ResourceError);
  auto copy_first = [](const std::vector<JudgmentPair>& sets) { return sets[0]; };
  CHECK_THROWS_AS(oracle::check_axioms(copy_first, spec_r4(), 7), ResourceError);
  CHECK_THROWS_AS(oracle::check_axioms(copy_first, spec_r4(), 0), ParameterError);
}

TEST_CASE("rules must return complete pairs") {
  auto truncated = [](const std::vector<JudgmentPair>& sets) {
    auto r = sets[0].modulus();
    return JudgmentPair(ResidueSet::empty_set(r), ResidueSet::from_members(r, {0}));
  };
  CHECK_THROWS_AS(oracle::check_axioms(truncated, spec_r4(), 1), ParameterError);
}

TEST_CASE("axiom audit: dictatorship passes everything and is spotted") {
  auto dict2 = [](const std::vector<JudgmentPair>& sets) { return sets[2]; };
  auto rep = oracle::check_axioms(dict2, spec_r4(), 3);
  CHECK(rep.profile_count == 1000);
  CHECK(rep.rational_sets.size() == 10);
  CHECK(rep.unanimity);
  CHECK(rep.unanimity_full);
  CHECK(rep.independence);
  CHECK(rep.pn_neutrality);
  CHECK(rep.rationality);
  REQUIRE(rep.dictator.has_value());
  CHECK(*rep.dictator == 3);

  auto ident = [](const std::vector<JudgmentPair>& sets) { return sets[0]; };
  auto rep1 = oracle::check_axioms(ident, spec_r4(), 1);
  CHECK(rep1.dictator == 1);
  CHECK(rep1.rationality);
}

TEST_CASE("axiom audit: proposition-wise majority is rational-breaking only") {
  auto spec = spec_r4();
  auto maj = [spec](const std::vector<JudgmentPair>& sets) {
    return majority_outcome(Profile::from_judgments(spec, sets), spec);
  };
  auto rep = oracle::check_axioms(maj, spec, 3);
  CHECK(rep.unanimity);
  CHECK(rep.unanimity_full);
  CHECK(rep.independence);
  CHECK(rep.pn_neutrality);
  CHECK(!rep.dictator.has_value());
  CHECK(!rep.rationality);
  REQUIRE(rep.rationality_cx.has_value());
  auto sets = rep.profile_sets(rep.rationality_cx->profile);
  auto out = maj(sets);
  CHECK(!oracle::brute_consistent(out, spec));
}

TEST_CASE("axiom audit: sequential majority trades independence for rationality") {
  auto spec = spec_r4();
  auto rule = seqmaj_rule(spec);
  auto rep = oracle::check_axioms(rule, spec, 2);
  CHECK(rep.profile_count == 100);
  CHECK(rep.unanimity);
  CHECK(rep.rationality);
  CHECK(!rep.dictator.has_value());

  CHECK(!rep.independence);
  REQUIRE(rep.independence_cx.has_value());
  {
    auto f = rep.profile_sets(rep.independence_cx->f);
    auto g = rep.profile_sets(rep.independence_cx->g);
    std::uint32_t w = rep.independence_cx->index;
    CHECK(acceptance_coalition(f, w) == acceptance_coalition(g, w));
    CHECK(rule(f).plus().contains(w) != rule(g).plus().contains(w));
  }

  // Ties toward acceptance can cascade into accepting a unanimously
  // rejected index, so only the positive side of unanimity survives.
  CHECK(!rep.unanimity_full);
  REQUIRE(rep.unanimity_full_cx.has_value());
  {
    auto sets = rep.profile_sets(rep.unanimity_full_cx->profile);
    std::uint32_t w = rep.unanimity_full_cx->index;
    CHECK(!rep.unanimity_full_cx->positive);
    for (const auto& s : sets) CHECK(s.minus().contains(w));
    CHECK(rule(sets).plus().contains(w));
  }
}

TEST_CASE("pn-neutrality counterexamples replay") {
  // Constant rules break pn-neutrality as blatantly as possible.
  auto spec = spec_r4();
  auto sets = oracle::enumerate_rational_sets(spec);
  auto all_reject = sets[0];
  auto constant = [all_reject](const std::vector<JudgmentPair>&) { return all_reject; };
  auto rep = oracle::check_axioms(constant, spec, 2);
  CHECK(!rep.pn_neutrality);
  REQUIRE(rep.pn_neutrality_cx.has_value());
  auto f = rep.profile_sets(rep.pn_neutrality_cx->f);
  auto g = rep.profile_sets(rep.pn_neutrality_cx->g);
  std::uint32_t w = rep.pn_neutrality_cx->index;
  std::uint32_t full = (1u << 2) - 1;
  CHECK(acceptance_coalition(f, w) == (full & ~acceptance_coalition(g, w)));
  CHECK(constant(f).plus().contains(w) == constant(g).plus().contains(w));
  CHECK(!rep.unanimity);
  CHECK(rep.independence);
}
