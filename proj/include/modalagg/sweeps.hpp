#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modalagg/residue.hpp"

namespace modalagg::sweeps {

// One failing case of a law sweep, identified by its full coordinates.
struct Mismatch {
  std::uint32_t r = 0;
  std::uint32_t k = 0;
  std::vector<std::uint32_t> a_members;
  std::uint32_t valuation_mask = 0;
  std::string formula;
  std::uint32_t world = 0;
};

struct SweepResult {
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::optional<Mismatch> first;
};

// Exhausts Frame 2 instances for r in [r_min, r_max]: every k in [1, r-1],
// every k-symmetric A with {0, k} within [0, k], every valuation, every
// world, every formula with operator prefix up to `max_suffix_depth` and both
// polarities. Checks the absorption law: box-diamond-box truth at w equals
// box truth at w + k.
SweepResult absorption_sweep(std::uint32_t r_min, std::uint32_t r_max,
                             std::uint32_t max_suffix_depth);
SweepResult absorption_sweep_serial(std::uint32_t r_min, std::uint32_t r_max,
                                    std::uint32_t max_suffix_depth);

// Same instance space, one-sided laws: truth at w + k pushes forward to
// box-diamond truth at w, and diamond-box truth at w pulls back to w + k.
SweepResult oneside_sweep(std::uint32_t r_min, std::uint32_t r_max,
                          std::uint32_t max_suffix_depth);
SweepResult oneside_sweep_serial(std::uint32_t r_min, std::uint32_t r_max,
                                 std::uint32_t max_suffix_depth);

// Counterexample search for the converse of the one-sided laws on a fixed
// spec: returns a case where box-diamond truth at w holds but truth at w + k
// fails, if one exists.
std::optional<Mismatch> oneside_converse_counterexample(const FrameSpec& spec,
                                                        std::uint32_t max_suffix_depth);

// The k-symmetric successor sets with {0, k} within [0, k], as member lists.
std::vector<std::vector<std::int64_t>> symmetric_sets(std::uint32_t r, std::uint32_t k);

}  // namespace modalagg::sweeps
