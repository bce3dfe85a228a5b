#include "modalagg/sweeps.hpp"

#include <algorithm>

#include "modalagg/formula.hpp"
#include "modalagg/kripke.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modalagg::sweeps {

namespace {

// All positive operator strings up to the given depth. Negation lives only
// at the outermost position in this language, so the laws quantify over
// these; the negated variants follow by flipping both sides.
std::vector<ModalFormula> positive_formulas(std::uint32_t max_depth) {
  std::vector<ModalFormula> out;
  for (std::uint32_t d = 0; d <= max_depth; ++d) {
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << d); ++bits) {
      std::vector<ModalOp> prefix(d);
      for (std::uint32_t i = 0; i < d; ++i) {
        prefix[i] = (bits >> i) & 1 ? ModalOp::Diamond : ModalOp::Box;
      }
      out.emplace_back(false, std::move(prefix));
    }
  }
  return out;
}

ResidueSet mask_to_set(std::uint32_t r, std::uint32_t mask) {
  std::vector<std::int64_t> members;
  for (std::uint32_t w = 0; w < r; ++w) {
    if ((mask >> w) & 1) members.push_back(w);
  }
  return ResidueSet::from_members(r, members);
}

void merge_min(SweepResult& into, const SweepResult& part, std::uint64_t part_order,
               std::uint64_t& best_order) {
  into.cases += part.cases;
  into.mismatches += part.mismatches;
  if (part.first && part_order < best_order) {
    best_order = part_order;
    into.first = part.first;
  }
}

// Shared driver: enumerates (r, k, A, V) instances and hands each model to
// the checker, which contributes case and mismatch counts.
template <bool Parallel, typename Checker>
SweepResult run_sweep(std::uint32_t r_min, std::uint32_t r_max, std::uint32_t max_depth,
                      Checker&& check) {
  if (r_min < 2 || r_max < r_min || r_max > 16) {
    throw ParameterError("sweep range must satisfy 2 <= r_min <= r_max <= 16");
  }
  std::vector<ModalFormula> formulas = positive_formulas(max_depth);

  struct Instance {
    std::uint32_t r;
    std::uint32_t k;
    std::vector<std::int64_t> a;
  };
  std::vector<Instance> instances;
  for (std::uint32_t r = r_min; r <= r_max; ++r) {
    for (std::uint32_t k = 1; k < r; ++k) {
      for (auto& a : symmetric_sets(r, k)) instances.push_back({r, k, std::move(a)});
    }
  }

  SweepResult total;
  std::uint64_t best_order = ~std::uint64_t{0};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (Parallel)
#endif
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(instances.size()); ++idx) {
    const Instance& inst = instances[idx];
    FrameSpec spec = FrameSpec::make(FrameKind::Frame2, inst.r, inst.k, inst.a);
    SweepResult local;
    const std::uint32_t vend = std::uint32_t{1} << inst.r;
    for (std::uint32_t vmask = 0; vmask < vend; ++vmask) {
      KripkeModel model = KripkeModel::from_spec(spec, mask_to_set(inst.r, vmask));
      check(spec, model, vmask, formulas, local);
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    merge_min(total, local, static_cast<std::uint64_t>(idx), best_order);
  }
  return total;
}

void record_mismatch(SweepResult& res, const FrameSpec& spec, std::uint32_t vmask,
                     const ModalFormula& f, std::uint32_t w) {
  ++res.mismatches;
  if (!res.first) {
    std::vector<std::uint32_t> a(spec.A().members());
    res.first = Mismatch{spec.r(), spec.k(), std::move(a), vmask, render(f), w};
  }
}

void check_absorption(const FrameSpec& spec, const KripkeModel& model, std::uint32_t vmask,
                      const std::vector<ModalFormula>& formulas, SweepResult& res) {
  const std::uint32_t r = spec.r();
  const std::uint32_t k = spec.k();
  for (const ModalFormula& f : formulas) {
    ModalFormula shorter = f.prefixed({ModalOp::Box});
    ModalFormula longer = shorter.prefixed({ModalOp::Box, ModalOp::Diamond});
    std::vector<bool> lhs = eval_all_worlds(model, longer);
    std::vector<bool> rhs = eval_all_worlds(model, shorter);
    for (std::uint32_t w = 0; w < r; ++w) {
      ++res.cases;
      if (lhs[w] != rhs[add_mod(w, k, r)]) record_mismatch(res, spec, vmask, longer, w);
    }
  }
}

void check_oneside(const FrameSpec& spec, const KripkeModel& model, std::uint32_t vmask,
                   const std::vector<ModalFormula>& formulas, SweepResult& res) {
  const std::uint32_t r = spec.r();
  const std::uint32_t k = spec.k();
  for (const ModalFormula& f : formulas) {
    std::vector<bool> base = eval_all_worlds(model, f);
    std::vector<bool> fwd = eval_all_worlds(model, f.prefixed({ModalOp::Box, ModalOp::Diamond}));
    std::vector<bool> bwd = eval_all_worlds(model, f.prefixed({ModalOp::Diamond, ModalOp::Box}));
    for (std::uint32_t w = 0; w < r; ++w) {
      std::uint32_t wk = add_mod(w, k, r);
      ++res.cases;
      if (base[wk] && !fwd[w]) record_mismatch(res, spec, vmask, f, w);
      ++res.cases;
      if (bwd[w] && !base[wk]) record_mismatch(res, spec, vmask, f, w);
    }
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> symmetric_sets(std::uint32_t r, std::uint32_t k) {
  if (k < 1 || k >= r) throw ParameterError("sets require 1 <= k < r");
  // Interior orbits {a, k - a} for a in [1, k-1]; each orbit is in or out.
  std::vector<std::vector<std::int64_t>> orbits;
  std::vector<std::uint8_t> used(k, 0);
  for (std::uint32_t a = 1; a < k; ++a) {
    if (used[a]) continue;
    std::uint32_t b = k - a;
    used[a] = 1;
    if (b < k) used[b] = 1;
    if (a == b) {
      orbits.push_back({a});
    } else {
      orbits.push_back({a, b});
    }
  }
  std::vector<std::vector<std::int64_t>> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << orbits.size()); ++bits) {
    std::vector<std::int64_t> a{0, k};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if ((bits >> i) & 1) a.insert(a.end(), orbits[i].begin(), orbits[i].end());
    }
    std::sort(a.begin(), a.end());
    out.push_back(std::move(a));
  }
  return out;
}

SweepResult absorption_sweep(std::uint32_t r_min, std::uint32_t r_max,
                             std::uint32_t max_suffix_depth) {
  return run_sweep<true>(r_min, r_max, max_suffix_depth, check_absorption);
}

SweepResult absorption_sweep_serial(std::uint32_t r_min, std::uint32_t r_max,
                                    std::uint32_t max_suffix_depth) {
  return run_sweep<false>(r_min, r_max, max_suffix_depth, check_absorption);
}

SweepResult oneside_sweep(std::uint32_t r_min, std::uint32_t r_max,
                          std::uint32_t max_suffix_depth) {
  return run_sweep<true>(r_min, r_max, max_suffix_depth, check_oneside);
}

SweepResult oneside_sweep_serial(std::uint32_t r_min, std::uint32_t r_max,
                                 std::uint32_t max_suffix_depth) {
  return run_sweep<false>(r_min, r_max, max_suffix_depth, check_oneside);
}

std::optional<Mismatch> oneside_converse_counterexample(const FrameSpec& spec,
                                                        std::uint32_t max_suffix_depth) {
  if (spec.r() > 16) throw ParameterError("counterexample search limited to r <= 16");
  std::vector<ModalFormula> formulas = positive_formulas(max_suffix_depth);
  const std::uint32_t r = spec.r();
  const std::uint32_t k = spec.k();
  const std::uint32_t vend = std::uint32_t{1} << r;
  for (std::uint32_t vmask = 0; vmask < vend; ++vmask) {
    KripkeModel model = KripkeModel::from_spec(spec, mask_to_set(r, vmask));
    for (const ModalFormula& f : formulas) {
      std::vector<bool> base = eval_all_worlds(model, f);
      std::vector<bool> fwd = eval_all_worlds(model, f.prefixed({ModalOp::Box, ModalOp::Diamond}));
      for (std::uint32_t w = 0; w < r; ++w) {
        if (fwd[w] && !base[add_mod(w, k, r)]) {
          std::vector<std::uint32_t> a(spec.A().members());
          return Mismatch{r, k, std::move(a), vmask, render(f), w};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace modalagg::sweeps
