#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modalagg/aggregation.hpp"
#include "modalagg/residue.hpp"

namespace modalagg::bench {

struct BenchConfig {
  FrameKind kind = FrameKind::Frame2;
  std::vector<std::uint32_t> r_values;
  std::uint32_t k = 8;
  std::uint32_t n = 5;
  std::uint32_t trials = 3;
  std::uint64_t seed = 0;
  double density = 0.5;  // per-world probability when sampling valuations
  std::vector<Strategy> strategies{Strategy::General, Strategy::Interval};
};

struct BenchSample {
  std::uint32_t r = 0;
  std::uint32_t k = 0;
  Strategy strategy = Strategy::General;
  std::uint32_t trial = 0;
  double wall_ms = 0.0;
  std::uint64_t index_ops = 0;
  std::uint64_t accepted = 0;
};

struct StrategyFit {
  Strategy strategy = Strategy::General;
  bool valid = false;     // needs at least two distinct r values
  double exponent = 0.0;  // least-squares slope of log mean ops against log r
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchSample> samples;
  std::vector<StrategyFit> fits;
};

// Deterministic profile for a seeded generator: for small r each individual
// draws uniformly from the rational sets; for large r each individual draws
// a random valuation and reads off the induced rational set.
Profile random_profile(const FrameSpec& spec, std::uint32_t n, std::mt19937_64& rng,
                       double density = 0.5);

// Runs the sequential rule over the (r, strategy, trial) grid on seeded
// random profiles, recording wall time and primitive-operation counts, and
// fits the operation-count scaling exponent per strategy.
BenchReport run_bench(const BenchConfig& config);

}  // namespace modalagg::bench
