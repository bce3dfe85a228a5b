#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "modalagg/covering.hpp"
#include "modalagg/oracle.hpp"
#include "modalagg/sweeps.hpp"

using namespace modalagg;

namespace {

JudgmentPair pair_of(std::uint32_t r, std::vector<std::int64_t> plus,
                     std::vector<std::int64_t> minus) {
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

}  // namespace

TEST_CASE("parallel valuation scan matches the serial loop on complete pairs") {
  auto spec = FrameSpec::make(FrameKind::Frame2, 10, 3, {0, 1, 2, 3});
  for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
    std::vector<std::int64_t> plus, minus;
    for (std::uint32_t w = 0; w < 10; ++w) {
      ((mask >> w) & 1 ? plus : minus).push_back(w);
    }
    auto jp = pair_of(10, plus, minus);
    bool serial = oracle::brute_consistent_serial(jp, spec);
    REQUIRE(oracle::brute_consistent(jp, spec) == serial);
    REQUIRE(is_consistent(jp, spec) == serial);
  }
}

TEST_CASE("parallel valuation scan matches the serial loop on random partial pairs") {
  auto spec = FrameSpec::make(FrameKind::Frame2, 16, 5, {0, 1, 4, 5});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> plus, minus;
    for (std::uint32_t w = 0; w < 16; ++w) {
      switch (rng() % 4) {
        case 1: plus.push_back(w); break;
        case 2: minus.push_back(w); break;
        default: break;
      }
    }
    auto jp = pair_of(16, plus, minus);
    bool serial = oracle::brute_consistent_serial(jp, spec);
    REQUIRE(oracle::brute_consistent(jp, spec) == serial);
    REQUIRE(is_consistent(jp, spec) == serial);
  }
}

TEST_CASE("parallel enumeration matches the serial twin") {
  for (auto spec : {FrameSpec::make(FrameKind::Frame2, 10, 3, {0, 3}),
                    FrameSpec::make(FrameKind::Frame2, 11, 2, {0, 1, 2}),
                    FrameSpec::make(FrameKind::Frame2, 12, 1, {0, 1})}) {
    auto par = oracle::enumerate_rational_sets(spec);
    auto ser = oracle::enumerate_rational_sets_serial(spec);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) REQUIRE(par[i] == ser[i]);
  }
}

TEST_CASE("parallel sweeps match the serial twins") {
  auto ap = sweeps::absorption_sweep(4, 7, 2);
  auto as = sweeps::absorption_sweep_serial(4, 7, 2);
  CHECK(ap.cases == as.cases);
  CHECK(ap.mismatches == as.mismatches);
  CHECK(ap.mismatches == 0);

  auto op = sweeps::oneside_sweep(4, 7, 2);
  auto os = sweeps::oneside_sweep_serial(4, 7, 2);
  CHECK(op.cases == os.cases);
  CHECK(op.mismatches == os.mismatches);
  CHECK(op.mismatches == 0);
}

TEST_CASE("impossibility verification is deterministic across runs") {
  auto spec = FrameSpec::make(FrameKind::Frame2, 11, 3, {0, 1, 2, 3});
  auto a = verify_impossibility_frame(spec);
  auto b = verify_impossibility_frame(spec);
  CHECK(a.impossibility_frame);
  CHECK(a.impossibility_frame == b.impossibility_frame);
  REQUIRE(a.lt0_edges.size() == b.lt0_edges.size());
  for (std::size_t i = 0; i < a.lt0_edges.size(); ++i) {
    CHECK(a.lt0_edges[i].u == b.lt0_edges[i].u);
    CHECK(a.lt0_edges[i].v == b.lt0_edges[i].v);
    CHECK(a.lt0_edges[i].context == b.lt0_edges[i].context);
  }
  CHECK(a.min_inconsistent_witness == b.min_inconsistent_witness);
}
