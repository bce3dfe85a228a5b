#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "modalagg/formula.hpp"
#include "modalagg/residue.hpp"

namespace modalagg {

// A pointed-free Kripke model: finite world set, successor relation,
// valuation of the single proposition p. Worlds are dense ids [0, n).
// Frame-backed models derive successors from the FrameSpec; explicit models
// store an adjacency list.
class KripkeModel {
public:
  // Frame 1 worlds are the cycle ids [0, r) plus the apex x at id r; Frame 2
  // worlds are [0, r). `valuation` lists the cycle worlds where p holds;
  // `p_at_x` gives p's value at the apex (ignored for Frame 2).
  static KripkeModel from_spec(const FrameSpec& spec, const ResidueSet& valuation,
                               bool p_at_x = false);
  static KripkeModel from_graph(std::uint32_t worlds,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                const std::vector<std::uint32_t>& valuation);

  std::uint32_t world_count() const { return world_count_; }
  bool p_holds(std::uint32_t w) const { return p_[w] != 0; }
  // Appends successors of w to out (out is cleared first).
  void successors(std::uint32_t w, std::vector<std::uint32_t>& out) const;

private:
  KripkeModel() = default;

  bool frame_backed_ = false;
  FrameKind kind_ = FrameKind::Frame2;
  std::uint32_t r_ = 0;
  std::uint32_t k_ = 0;
  std::vector<std::uint32_t> a_members_;

  std::uint32_t world_count_ = 0;
  std::vector<std::uint8_t> p_;
  // Explicit adjacency, CSR layout.
  std::vector<std::uint32_t> adj_heads_;
  std::vector<std::uint32_t> adj_;
};

// Truth of f at world w. Boxes quantify over all successors and hold
// vacuously at dead ends; diamonds require a witness successor.
bool eval(const KripkeModel& model, std::uint32_t world, const ModalFormula& f);

// Truth of f at every world in one pass; result[w] == eval(model, w, f).
std::vector<bool> eval_all_worlds(const KripkeModel& model, const ModalFormula& f);

// One application of the box-diamond absorption law on Frame 2 with
// k-symmetric A: truth of f (whose prefix starts Box Diamond Box) at w equals
// truth of f with the leading Box Diamond removed at w + k.
std::pair<Residue, ModalFormula> reduce_step(const FrameSpec& spec, std::int64_t w,
                                             const ModalFormula& f);

// A literal over the indexed propositions: sign applied to "A + index is
// contained in the valuation".
struct IndexedProposition {
  bool positive = true;
  std::uint32_t index = 0;

  friend bool operator==(const IndexedProposition& a, const IndexedProposition& b) {
    return a.positive == b.positive && a.index == b.index;
  }
};

// Collapses an agenda formula to its indexed proposition at the designated
// world: Frame 1 takes B^j p (j >= 1) to index (j-1)k; Frame 2 takes
// (BD)^j B p (j >= 0) to index jk. Negation carries through to the sign.
IndexedProposition reduce_agenda_formula(const FrameSpec& spec, const ModalFormula& f);

// Truth of the indexed proposition under valuation v.
bool indexed_truth(const FrameSpec& spec, const ResidueSet& v, const IndexedProposition& prop);

}  // namespace modalagg
