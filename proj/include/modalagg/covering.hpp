#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modalagg/residue.hpp"

namespace modalagg {

// A partial assignment over the indexed propositions: accepted indices in
// `plus`, rejected indices in `minus`. The two sides are disjoint.
class JudgmentPair {
public:
  JudgmentPair(ResidueSet plus, ResidueSet minus);

  const ResidueSet& plus() const { return plus_; }
  const ResidueSet& minus() const { return minus_; }
  std::uint32_t modulus() const { return plus_.modulus(); }
  std::size_t size() const { return plus_.size() + minus_.size(); }
  bool complete() const { return size() == modulus(); }

  friend bool operator==(const JudgmentPair& a, const JudgmentPair& b) {
    return a.plus_ == b.plus_ && a.minus_ == b.minus_;
  }
  friend bool operator!=(const JudgmentPair& a, const JudgmentPair& b) { return !(a == b); }

private:
  ResidueSet plus_;
  ResidueSet minus_;
};

// Satisfiability of the pair: some valuation makes every accepted index true
// and every rejected index false. Equivalent, by the covering criterion, to
// no rejected translate being swallowed by the union of accepted translates.
bool is_consistent(const JudgmentPair& jp, const FrameSpec& spec);

// Extends a consistent pair to a complete consistent pair using the witness
// valuation (the union of the accepted translates).
JudgmentPair complete_judgment(const JudgmentPair& jp, const FrameSpec& spec);

// A target index w0, a distinguished cover element w1, and a cover set s0
// with w1 in s0 and |s0| >= 2.
class PointedMinimalCover {
public:
  PointedMinimalCover(std::int64_t w0, std::int64_t w1, ResidueSet s0);

  std::uint32_t w0() const { return w0_; }
  std::uint32_t w1() const { return w1_; }
  const ResidueSet& s0() const { return s0_; }

private:
  std::uint32_t w0_;
  std::uint32_t w1_;
  ResidueSet s0_;
};

// Checks the three defining conditions: s0's translates cover A + w0, no
// proper subset of s0 still covers, and A + w1 escapes the translates of
// (s0 minus w1) together with w0.
bool is_pointed_minimal_cover(const PointedMinimalCover& pmc, const FrameSpec& spec);

// Deterministic construction of a pointed minimal cover at w under the
// structural parameter conditions; the distinguished element is w + k.
PointedMinimalCover find_pointed_minimal_cover(std::int64_t w, const FrameSpec& spec);

// The minimally inconsistent pair induced by a verified pointed minimal
// cover: accept every s0 member, reject w0. Re-verifies minimality over all
// proper subsets before returning.
JudgmentPair min_inconsistent_from_pmc(const PointedMinimalCover& pmc, const FrameSpec& spec);

// A certificate that accepting P_u is conditionally stronger than accepting
// P_v: together with the positive context, P_u forces P_v (the set
// {context, P_u, not P_v} is minimally inconsistent) while the mirrored set
// {context, not P_u, P_v} stays consistent.
struct Lt0Witness {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  ResidueSet context;

  Lt0Witness(std::uint32_t u_, std::uint32_t v_, ResidueSet ctx)
      : u(u_), v(v_), context(std::move(ctx)) {}
};

// Builds the witness that P_{w+k} sits strictly below P_w, using the pointed
// minimal cover at w.
Lt0Witness lt0_witness(std::int64_t w, const FrameSpec& spec);

// Independent re-check of a witness against the covering criterion.
bool verify_lt0_witness(const Lt0Witness& wit, const FrameSpec& spec);

// Outcome of the two structural checks that make a frame carry the
// impossibility argument: some minimally inconsistent set of size >= 3
// exists, and the strict-order edges chain every pair of indices together.
struct ImpossibilityReport {
  std::uint32_t r = 0;
  std::uint32_t k = 0;
  ParamReport params;

  bool minimally_connected = false;
  std::optional<JudgmentPair> min_inconsistent_witness;

  // edge_ok[w] records whether the edge P_{w+k} below P_w verified.
  std::vector<std::uint8_t> edge_ok;
  std::vector<Lt0Witness> lt0_edges;

  bool strongly_path_connected = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> first_unconnected;

  bool impossibility_frame = false;

  // Length of the shortest edge chain from P_u to P_v (0 when u == v),
  // walking only verified edges; nullopt when unreachable.
  std::optional<std::uint64_t> chain_length(std::uint32_t u, std::uint32_t v) const;
};

// Runs both checks on the given frame. Failures are reported, never thrown:
// parameter conditions are evaluated but the construction is attempted
// regardless, so near-miss frames show exactly which half breaks.
ImpossibilityReport verify_impossibility_frame(const FrameSpec& spec);

}  // namespace modalagg
