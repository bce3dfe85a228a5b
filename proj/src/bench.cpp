#include "modalagg/bench.hpp"

#include <chrono>
#include <cmath>

#include "modalagg/covering.hpp"
#include "modalagg/errors.hpp"
#include "modalagg/oracle.hpp"

namespace modalagg::bench {

namespace {

// Threshold below which the full list of rational sets is enumerable.
constexpr std::uint32_t kEnumerableR = 14;

std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;  // modulo bias is irrelevant here, determinism is not
}

bool draw_bit(std::mt19937_64& rng, double density) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < density;
}

std::vector<std::uint32_t> induced_counts(const FrameSpec& spec,
                                          const std::vector<std::uint8_t>& valuation) {
  const std::uint32_t r = spec.r();
  std::vector<std::uint32_t> plus;
  plus.reserve(r / 4);
  for (std::uint32_t w = 0; w < r; ++w) {
    bool all = true;
    for (std::uint32_t a : spec.A().members()) {
      if (!valuation[add_mod(w, a, r)]) {
        all = false;
        break;
      }
    }
    if (all) plus.push_back(w);
  }
  return plus;
}

}  // namespace

Profile random_profile(const FrameSpec& spec, std::uint32_t n, std::mt19937_64& rng,
                       double density) {
  const std::uint32_t r = spec.r();
  std::vector<std::uint32_t> counts(r, 0);
  if (r <= kEnumerableR) {
    const auto sets = oracle::enumerate_rational_sets(spec);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto& pair = sets[static_cast<std::size_t>(draw_index(rng, sets.size()))];
      for (std::uint32_t w : pair.plus().members()) ++counts[w];
    }
  } else {
    std::vector<std::uint8_t> valuation(r, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t w = 0; w < r; ++w) valuation[w] = draw_bit(rng, density) ? 1 : 0;
      for (std::uint32_t w : induced_counts(spec, valuation)) ++counts[w];
    }
  }
  return Profile::from_counts(n, counts);
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.r_values.empty()) throw ParameterError("bench requires at least one r value");
  if (config.trials == 0) throw ParameterError("bench requires at least one trial");
  if (config.strategies.empty()) throw ParameterError("bench requires at least one strategy");

  BenchReport report;
  report.config = config;

  std::vector<std::int64_t> window(config.k + 1);
  for (std::uint32_t a = 0; a <= config.k; ++a) window[a] = a;

  for (std::uint32_t r : config.r_values) {
    const auto spec = FrameSpec::make(config.kind, r, config.k, window);
    for (std::uint32_t trial = 0; trial < config.trials; ++trial) {
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                        static_cast<std::uint32_t>(config.seed >> 32), r, trial};
      std::mt19937_64 rng(seq);
      const Profile profile = random_profile(spec, config.n, rng, config.density);
      for (Strategy strategy : config.strategies) {
        OpCounts ops;
        const auto start = std::chrono::steady_clock::now();
        const JudgmentPair outcome =
            seq_majority(profile, spec, IssueOrder::identity(r), strategy, &ops);
        const auto stop = std::chrono::steady_clock::now();
        BenchSample sample;
        sample.r = r;
        sample.k = config.k;
        sample.strategy = strategy;
        sample.trial = trial;
        sample.wall_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        sample.index_ops = ops.index_ops;
        sample.accepted = outcome.plus().members().size();
        report.samples.push_back(sample);
      }
    }
  }

  for (Strategy strategy : config.strategies) {
    StrategyFit fit;
    fit.strategy = strategy;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::uint32_t r : config.r_values) {
      double total = 0.0;
      std::uint32_t hits = 0;
      for (const auto& s : report.samples) {
        if (s.r == r && s.strategy == strategy) {
          total += static_cast<double>(s.index_ops);
          ++hits;
        }
      }
      if (hits == 0) continue;
      const double mean = total / hits;
      if (mean <= 0.0) continue;
      xs.push_back(std::log(static_cast<double>(r)));
      ys.push_back(std::log(mean));
    }
    if (xs.size() >= 2) {
      double mx = 0.0;
      double my = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
      }
      mx /= static_cast<double>(xs.size());
      my /= static_cast<double>(xs.size());
      double num = 0.0;
      double den = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
      }
      if (den > 0.0) {
        fit.exponent = num / den;
        fit.valid = true;
      }
    }
    report.fits.push_back(fit);
  }
  return report;
}

}  // namespace modalagg::bench
