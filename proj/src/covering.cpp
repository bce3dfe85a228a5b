#include "modalagg/covering.hpp"

#include <algorithm>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modalagg {

namespace {

// Sorted list of all residues reachable as s + a for s in shifts, a in A.
std::vector<std::uint32_t> covered_values(const FrameSpec& spec,
                                          const std::vector<std::uint32_t>& shifts) {
  std::vector<std::uint32_t> out;
  out.reserve(shifts.size() * spec.A().size());
  for (std::uint32_t s : shifts) {
    for (std::uint32_t a : spec.A().members()) out.push_back(add_mod(s, a, spec.r()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool covers_target(const FrameSpec& spec, const std::vector<std::uint32_t>& shifts,
                   std::uint32_t target) {
  std::vector<std::uint32_t> u = covered_values(spec, shifts);
  for (std::uint32_t a : spec.A().members()) {
    if (!std::binary_search(u.begin(), u.end(), add_mod(target, a, spec.r()))) return false;
  }
  return true;
}

bool consistent_members(const FrameSpec& spec, const std::vector<std::uint32_t>& plus,
                        const std::vector<std::uint32_t>& minus) {
  std::vector<std::uint32_t> u = covered_values(spec, plus);
  for (std::uint32_t w0 : minus) {
    bool swallowed = true;
    for (std::uint32_t a : spec.A().members()) {
      if (!std::binary_search(u.begin(), u.end(), add_mod(w0, a, spec.r()))) {
        swallowed = false;
        break;
      }
    }
    if (swallowed) return false;
  }
  return true;
}

// Every proper subset of (plus, minus) is consistent. Consistency is closed
// under subsets, so the maximal proper subsets decide it.
bool proper_subsets_consistent(const FrameSpec& spec, const std::vector<std::uint32_t>& plus,
                               const std::vector<std::uint32_t>& minus) {
  for (std::size_t drop = 0; drop < plus.size(); ++drop) {
    std::vector<std::uint32_t> p = plus;
    p.erase(p.begin() + drop);
    if (!consistent_members(spec, p, minus)) return false;
  }
  for (std::size_t drop = 0; drop < minus.size(); ++drop) {
    std::vector<std::uint32_t> m = minus;
    m.erase(m.begin() + drop);
    if (!consistent_members(spec, plus, m)) return false;
  }
  return true;
}

// Candidate cover of A + w, before minimization: w + k together with
// w + a - k for the other members of A.
std::vector<std::uint32_t> raw_candidates(const FrameSpec& spec, std::uint32_t w) {
  std::uint32_t r = spec.r();
  std::uint32_t k = spec.k();
  std::vector<std::uint32_t> c;
  c.reserve(spec.A().size());
  for (std::uint32_t a : spec.A().members()) {
    if (a == k) continue;
    c.push_back(add_mod(w, sub_mod(a, k, r), r));
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  // The distinguished element goes last so removal is attempted on the
  // others first; it is never removable.
  c.push_back(add_mod(w, k, r));
  return c;
}

// Greedy minimization from the candidate cover; returns the surviving
// shifts or nullopt when the candidates do not cover A + w at all.
std::optional<std::vector<std::uint32_t>> minimize_cover(const FrameSpec& spec,
                                                         std::uint32_t w) {
  std::vector<std::uint32_t> cand = raw_candidates(spec, w);
  if (!covers_target(spec, cand, w)) return std::nullopt;
  std::vector<std::uint32_t> kept = cand;
  for (std::uint32_t c : cand) {
    if (kept.size() <= 1) break;
    std::vector<std::uint32_t> trial;
    trial.reserve(kept.size() - 1);
    for (std::uint32_t x : kept) {
      if (x != c) trial.push_back(x);
    }
    if (covers_target(spec, trial, w)) kept.swap(trial);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

struct EdgeAttempt {
  bool ok = false;
  std::vector<std::uint32_t> s0;
};

// Builds and fully verifies the cover, the induced minimally inconsistent
// pair, and the strict-order certificate at w. No parameter guard: callers
// that want the guarantee check the params themselves.
EdgeAttempt attempt_edge(const FrameSpec& spec, std::uint32_t w) {
  EdgeAttempt res;
  std::uint32_t r = spec.r();
  std::uint32_t w1 = add_mod(w, spec.k(), r);
  auto s0 = minimize_cover(spec, w);
  if (!s0) return res;
  if (s0->size() < 2) return res;
  if (!std::binary_search(s0->begin(), s0->end(), w1)) return res;
  if (std::binary_search(s0->begin(), s0->end(), w)) return res;
  PointedMinimalCover pmc(w, w1, ResidueSet::from_members(
                                     r, std::vector<std::int64_t>(s0->begin(), s0->end())));
  if (!is_pointed_minimal_cover(pmc, spec)) return res;

  std::vector<std::uint32_t> context;
  for (std::uint32_t s : *s0) {
    if (s != w1) context.push_back(s);
  }
  // {context, P_{w+k}, not P_w} minimally inconsistent.
  std::vector<std::uint32_t> plus = context;
  plus.push_back(w1);
  std::sort(plus.begin(), plus.end());
  if (consistent_members(spec, plus, {w})) return res;
  if (!proper_subsets_consistent(spec, plus, {w})) return res;
  // {context, not P_{w+k}, P_w} consistent.
  std::vector<std::uint32_t> swapped = context;
  swapped.push_back(w);
  std::sort(swapped.begin(), swapped.end());
  if (!consistent_members(spec, swapped, {w1})) return res;

  res.ok = true;
  res.s0 = std::move(*s0);
  return res;
}

}  // namespace

JudgmentPair::JudgmentPair(ResidueSet plus, ResidueSet minus)
    : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (plus_.modulus() != minus_.modulus()) {
    throw ParameterError("judgment pair moduli differ");
  }
  if (plus_.intersects(minus_)) {
    throw ParameterError("judgment pair sides must be disjoint");
  }
}

bool is_consistent(const JudgmentPair& jp, const FrameSpec& spec) {
  if (jp.modulus() != spec.r()) throw ParameterError("judgment pair modulus does not match frame");
  return consistent_members(spec, jp.plus().members(), jp.minus().members());
}

JudgmentPair complete_judgment(const JudgmentPair& jp, const FrameSpec& spec) {
  if (!is_consistent(jp, spec)) {
    throw ConsistencyError("cannot complete an inconsistent judgment pair");
  }
  std::uint32_t r = spec.r();
  std::vector<std::uint32_t> v = covered_values(spec, jp.plus().members());
  std::vector<std::int64_t> plus, minus;
  for (std::uint32_t w = 0; w < r; ++w) {
    bool inside = true;
    for (std::uint32_t a : spec.A().members()) {
      if (!std::binary_search(v.begin(), v.end(), add_mod(w, a, r))) {
        inside = false;
        break;
      }
    }
    (inside ? plus : minus).push_back(w);
  }
  return JudgmentPair(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
}

PointedMinimalCover::PointedMinimalCover(std::int64_t w0, std::int64_t w1, ResidueSet s0)
    : s0_(std::move(s0)) {
  w0_ = normalize_value(w0, s0_.modulus());
  w1_ = normalize_value(w1, s0_.modulus());
  if (!s0_.contains_canonical(w1_)) {
    throw ParameterError("distinguished element w1 must lie in the cover set");
  }
  if (s0_.size() < 2) {
    throw ParameterError("cover set needs at least two elements");
  }
}

bool is_pointed_minimal_cover(const PointedMinimalCover& pmc, const FrameSpec& spec) {
  if (pmc.s0().modulus() != spec.r()) {
    throw ParameterError("cover modulus does not match frame");
  }
  const std::vector<std::uint32_t>& s0 = pmc.s0().members();
  if (!covers_target(spec, s0, pmc.w0())) return false;
  // Covering is monotone in the shift set, so minimality reduces to the
  // maximal proper subsets.
  for (std::size_t drop = 0; drop < s0.size(); ++drop) {
    std::vector<std::uint32_t> trial;
    trial.reserve(s0.size() - 1);
    for (std::size_t i = 0; i < s0.size(); ++i) {
      if (i != drop) trial.push_back(s0[i]);
    }
    if (covers_target(spec, trial, pmc.w0())) return false;
  }
  std::vector<std::uint32_t> others;
  for (std::uint32_t s : s0) {
    if (s != pmc.w1()) others.push_back(s);
  }
  others.push_back(pmc.w0());
  if (covers_target(spec, others, pmc.w1())) return false;
  return true;
}

PointedMinimalCover find_pointed_minimal_cover(std::int64_t w, const FrameSpec& spec) {
  ParamReport params = check_theorem_params(spec);
  if (!params.pass) {
    throw ParameterError("frame parameters outside the covering construction regime");
  }
  std::uint32_t r = spec.r();
  std::uint32_t wc = normalize_value(w, r);
  auto s0 = minimize_cover(spec, wc);
  if (!s0) throw Error("candidate translates fail to cover despite valid parameters");
  PointedMinimalCover pmc(wc, add_mod(wc, spec.k(), r),
                          ResidueSet::from_members(
                              r, std::vector<std::int64_t>(s0->begin(), s0->end())));
  if (!is_pointed_minimal_cover(pmc, spec)) {
    throw Error("constructed cover failed verification despite valid parameters");
  }
  return pmc;
}

JudgmentPair min_inconsistent_from_pmc(const PointedMinimalCover& pmc, const FrameSpec& spec) {
  if (!is_pointed_minimal_cover(pmc, spec)) {
    throw ParameterError("pointed minimal cover does not verify on this frame");
  }
  std::uint32_t r = spec.r();
  const std::vector<std::uint32_t>& s0 = pmc.s0().members();
  std::vector<std::uint32_t> elems(s0.begin(), s0.end());  // positive literals
  const std::size_t total = elems.size() + 1;              // plus the negative literal on w0

  // Full pair inconsistent, every proper subset consistent; checked over the
  // whole subset lattice.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    std::vector<std::uint32_t> plus, minus;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) plus.push_back(elems[i]);
    }
    if (mask & (std::uint64_t{1} << elems.size())) minus.push_back(pmc.w0());
    bool cons = consistent_members(spec, plus, minus);
    bool full = mask + 1 == (std::uint64_t{1} << total);
    if (full ? cons : !cons) {
      throw ParameterError("cover did not induce a minimally inconsistent pair");
    }
  }
  return JudgmentPair(pmc.s0(),
                      ResidueSet::from_members(r, {static_cast<std::int64_t>(pmc.w0())}));
}

Lt0Witness lt0_witness(std::int64_t w, const FrameSpec& spec) {
  ParamReport params = check_theorem_params(spec);
  if (!params.pass) {
    throw ParameterError("frame parameters outside the covering construction regime");
  }
  std::uint32_t r = spec.r();
  std::uint32_t wc = normalize_value(w, r);
  EdgeAttempt attempt = attempt_edge(spec, wc);
  if (!attempt.ok) {
    throw Error("strict-order certificate failed verification despite valid parameters");
  }
  std::vector<std::int64_t> ctx;
  std::uint32_t w1 = add_mod(wc, spec.k(), r);
  for (std::uint32_t s : attempt.s0) {
    if (s != w1) ctx.push_back(s);
  }
  return Lt0Witness(w1, wc, ResidueSet::from_members(r, ctx));
}

bool verify_lt0_witness(const Lt0Witness& wit, const FrameSpec& spec) {
  if (wit.context.modulus() != spec.r()) {
    throw ParameterError("witness modulus does not match frame");
  }
  if (wit.u == wit.v) return false;
  if (wit.context.contains_canonical(wit.u) || wit.context.contains_canonical(wit.v)) {
    return false;
  }
  std::vector<std::uint32_t> plus = wit.context.members();
  plus.push_back(wit.u);
  std::sort(plus.begin(), plus.end());
  if (consistent_members(spec, plus, {wit.v})) return false;
  if (!proper_subsets_consistent(spec, plus, {wit.v})) return false;
  std::vector<std::uint32_t> swapped = wit.context.members();
  swapped.push_back(wit.v);
  std::sort(swapped.begin(), swapped.end());
  return consistent_members(spec, swapped, {wit.u});
}

std::optional<std::uint64_t> ImpossibilityReport::chain_length(std::uint32_t u,
                                                               std::uint32_t v) const {
  if (u >= r || v >= r) return std::nullopt;
  if (u == v) return 0;
  std::uint32_t cur = u;
  for (std::uint64_t steps = 1; steps <= r; ++steps) {
    std::uint32_t next = sub_mod(cur, k % r, r);
    if (!edge_ok[next]) return std::nullopt;
    if (next == v) return steps;
    if (next == u) return std::nullopt;  // closed the cycle without hitting v
    cur = next;
  }
  return std::nullopt;
}

ImpossibilityReport verify_impossibility_frame(const FrameSpec& spec) {
  ImpossibilityReport rep;
  rep.r = spec.r();
  rep.k = spec.k();
  rep.params = check_theorem_params(spec);

  const std::uint32_t r = spec.r();
  const std::uint32_t k = spec.k();
  rep.edge_ok.assign(r, 0);
  std::vector<std::vector<std::uint32_t>> s0_per_w(r);

  // Each edge is certified independently; the per-w attempts are disjoint
  // and read-only on the spec, so they parallelize without coordination.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::int64_t w = 0; w < static_cast<std::int64_t>(r); ++w) {
    EdgeAttempt attempt = attempt_edge(spec, static_cast<std::uint32_t>(w));
    if (attempt.ok) {
      rep.edge_ok[w] = 1;
      s0_per_w[w] = std::move(attempt.s0);
    }
  }

  for (std::uint32_t w = 0; w < r; ++w) {
    if (!rep.edge_ok[w]) continue;
    std::uint32_t w1 = add_mod(w, k, r);
    std::vector<std::int64_t> ctx;
    for (std::uint32_t s : s0_per_w[w]) {
      if (s != w1) ctx.push_back(s);
    }
    rep.lt0_edges.emplace_back(w1, w, ResidueSet::from_members(r, ctx));
  }

  // Minimal connectedness: the pair induced at w = 0 when its cover holds.
  if (rep.edge_ok[0]) {
    PointedMinimalCover pmc(0, k, ResidueSet::from_members(
                                      r, std::vector<std::int64_t>(s0_per_w[0].begin(),
                                                                   s0_per_w[0].end())));
    JudgmentPair witness = min_inconsistent_from_pmc(pmc, spec);
    if (witness.size() >= 3) {
      rep.minimally_connected = true;
      rep.min_inconsistent_witness = witness;
    }
  }

  // Strong path-connectedness over the verified edges. The edge map is a
  // partial function w+k -> w, so reachability from u is the walk u, u-k, ...
  bool all_edges = std::all_of(rep.edge_ok.begin(), rep.edge_ok.end(),
                               [](std::uint8_t b) { return b != 0; });
  rep.strongly_path_connected = true;
  if (all_edges) {
    // Single walk from 0; the edge map is a total permutation, so one cycle
    // through all r indices connects every ordered pair.
    std::uint32_t visited = 0;
    std::uint32_t cur = 0;
    do {
      cur = sub_mod(cur, k, r);
      ++visited;
    } while (cur != 0 && visited <= r);
    if (visited < r) {
      rep.strongly_path_connected = false;
      std::uint32_t probe = sub_mod(0, k, r);
      std::vector<std::uint8_t> reach(r, 0);
      reach[0] = 1;
      while (!reach[probe]) {
        reach[probe] = 1;
        probe = sub_mod(probe, k, r);
      }
      for (std::uint32_t v = 0; v < r; ++v) {
        if (!reach[v]) {
          rep.first_unconnected = {0u, v};
          break;
        }
      }
    }
  } else {
    for (std::uint32_t u = 0; u < r && rep.strongly_path_connected; ++u) {
      std::vector<std::uint8_t> reach(r, 0);
      reach[u] = 1;
      std::uint32_t cur = u;
      for (std::uint32_t steps = 0; steps < r; ++steps) {
        std::uint32_t next = sub_mod(cur, k, r);
        if (!rep.edge_ok[next] || reach[next]) break;
        reach[next] = 1;
        cur = next;
      }
      for (std::uint32_t v = 0; v < r; ++v) {
        if (!reach[v]) {
          rep.strongly_path_connected = false;
          rep.first_unconnected = {u, v};
          break;
        }
      }
    }
  }

  rep.impossibility_frame = rep.minimally_connected && rep.strongly_path_connected;
  return rep;
}

}  // namespace modalagg
