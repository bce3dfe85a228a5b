#include "modalagg/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modalagg::oracle {

namespace {

constexpr std::uint32_t kBruteConsistentMaxR = 20;
constexpr std::uint32_t kMinInconsistentMaxR = 14;
constexpr std::size_t kMinInconsistentMaxSize = 16;
constexpr std::uint32_t kLt0MaxR = 8;
constexpr std::uint32_t kEnumerateMaxR = 14;
constexpr std::uint64_t kAxiomMaxProfiles = 1'000'000;

// Bitmask of A + w over the cycle; valid for r <= 32.
std::vector<std::uint32_t> translate_masks(const FrameSpec& spec) {
  std::vector<std::uint32_t> t(spec.r(), 0);
  for (std::uint32_t w = 0; w < spec.r(); ++w) {
    for (std::uint32_t a : spec.A().members()) {
      t[w] |= std::uint32_t{1} << add_mod(w, a, spec.r());
    }
  }
  return t;
}

struct Literal {
  bool positive;
  std::uint32_t index;
};

std::vector<Literal> pair_literals(const JudgmentPair& jp) {
  std::vector<Literal> lits;
  lits.reserve(jp.size());
  for (std::uint32_t w : jp.plus().members()) lits.push_back({true, w});
  for (std::uint32_t w : jp.minus().members()) lits.push_back({false, w});
  return lits;
}

bool valuation_satisfies(std::uint32_t v, const Literal& lit,
                         const std::vector<std::uint32_t>& tmask) {
  bool inside = (tmask[lit.index] & ~v) == 0;
  return lit.positive ? inside : !inside;
}

// Consistency over the subset lattice of `lits`: marks[S] says some valuation
// satisfies every literal in S. Built from one exhaustive valuation pass and
// a downward closure, so each entry equals the brute-force answer.
std::vector<std::uint8_t> subset_consistency(const std::vector<Literal>& lits,
                                             const FrameSpec& spec,
                                             const std::vector<std::uint32_t>& tmask) {
  const std::size_t nlits = lits.size();
  std::vector<std::uint8_t> marks(std::size_t{1} << nlits, 0);
  const std::uint32_t vend = std::uint32_t{1} << spec.r();
  for (std::uint32_t v = 0; v < vend; ++v) {
    std::uint32_t sat = 0;
    for (std::size_t i = 0; i < nlits; ++i) {
      if (valuation_satisfies(v, lits[i], tmask)) sat |= std::uint32_t{1} << i;
    }
    marks[sat] = 1;
  }
  for (std::size_t b = 0; b < nlits; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t s = 0; s < marks.size(); ++s) {
      if ((s & bit) && marks[s]) marks[s & ~bit] = 1;
    }
  }
  return marks;
}

bool elems_consistent(const std::vector<Literal>& lits, const FrameSpec& spec,
                      const std::vector<std::uint32_t>& tmask) {
  const std::uint32_t vend = std::uint32_t{1} << spec.r();
  for (std::uint32_t v = 0; v < vend; ++v) {
    bool all = true;
    for (const Literal& lit : lits) {
      if (!valuation_satisfies(v, lit, tmask)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool elems_min_inconsistent(const std::vector<Literal>& lits, const FrameSpec& spec,
                            const std::vector<std::uint32_t>& tmask) {
  std::vector<std::uint8_t> marks = subset_consistency(lits, spec, tmask);
  const std::size_t full = marks.size() - 1;
  if (marks[full]) return false;
  for (std::size_t s = 0; s < full; ++s) {
    if (!marks[s]) return false;
  }
  return true;
}

void check_frame_pair(const JudgmentPair& jp, const FrameSpec& spec) {
  if (jp.modulus() != spec.r()) throw ParameterError("judgment pair modulus does not match frame");
}

}  // namespace

bool brute_consistent_serial(const JudgmentPair& jp, const FrameSpec& spec) {
  check_frame_pair(jp, spec);
  if (spec.r() > kBruteConsistentMaxR) {
    throw ResourceError("brute_consistent limited to r <= 20");
  }
  std::vector<std::uint32_t> tmask = translate_masks(spec);
  std::uint32_t need = 0;
  for (std::uint32_t w : jp.plus().members()) need |= tmask[w];
  const std::uint32_t vend = std::uint32_t{1} << spec.r();
  for (std::uint32_t v = 0; v < vend; ++v) {
    if ((need & ~v) != 0) continue;
    bool ok = true;
    for (std::uint32_t w0 : jp.minus().members()) {
      if ((tmask[w0] & ~v) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool brute_consistent(const JudgmentPair& jp, const FrameSpec& spec) {
  check_frame_pair(jp, spec);
  if (spec.r() > kBruteConsistentMaxR) {
    throw ResourceError("brute_consistent limited to r <= 20");
  }
  std::vector<std::uint32_t> tmask = translate_masks(spec);
  std::uint32_t need = 0;
  for (std::uint32_t w : jp.plus().members()) need |= tmask[w];
  const std::int64_t vend = std::int64_t{1} << spec.r();
  std::atomic<bool> found{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t v = 0; v < vend; ++v) {
    if (found.load(std::memory_order_relaxed)) continue;
    std::uint32_t vv = static_cast<std::uint32_t>(v);
    if ((need & ~vv) != 0) continue;
    bool ok = true;
    for (std::uint32_t w0 : jp.minus().members()) {
      if ((tmask[w0] & ~vv) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) found.store(true, std::memory_order_relaxed);
  }
  return found.load();
}

bool brute_min_inconsistent(const JudgmentPair& jp, const FrameSpec& spec) {
  check_frame_pair(jp, spec);
  if (spec.r() > kMinInconsistentMaxR) {
    throw ResourceError("brute_min_inconsistent limited to r <= 14");
  }
  if (jp.size() > kMinInconsistentMaxSize) {
    throw ResourceError("brute_min_inconsistent limited to 16 literals");
  }
  std::vector<std::uint32_t> tmask = translate_masks(spec);
  return elems_min_inconsistent(pair_literals(jp), spec, tmask);
}

bool brute_lt0(std::int64_t u, std::int64_t v, const FrameSpec& spec) {
  if (spec.r() > kLt0MaxR) throw ResourceError("brute_lt0 limited to r <= 8");
  const std::uint32_t r = spec.r();
  const std::uint32_t uc = normalize_value(u, r);
  const std::uint32_t vc = normalize_value(v, r);
  std::vector<std::uint32_t> tmask = translate_masks(spec);
  std::vector<std::uint32_t> others;
  for (std::uint32_t w = 0; w < r; ++w) {
    if (w != uc && w != vc) others.push_back(w);
  }
  // Ternary odometer over the context: each remaining index is absent,
  // accepted, or rejected.
  std::vector<std::uint8_t> state(others.size(), 0);
  while (true) {
    std::vector<Literal> forced{{true, uc}, {false, vc}};
    std::vector<Literal> mirrored{{false, uc}, {true, vc}};
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (state[i] == 0) continue;
      Literal lit{state[i] == 1, others[i]};
      forced.push_back(lit);
      mirrored.push_back(lit);
    }
    if (elems_min_inconsistent(forced, spec, tmask) &&
        elems_consistent(mirrored, spec, tmask)) {
      return true;
    }
    std::size_t i = 0;
    for (; i < state.size(); ++i) {
      if (++state[i] <= 2) break;
      state[i] = 0;
    }
    if (i == state.size()) break;
  }
  return false;
}

namespace {

std::vector<JudgmentPair> masks_to_pairs(const FrameSpec& spec,
                                         std::vector<std::uint32_t> masks) {
  const std::uint32_t r = spec.r();
  std::vector<std::vector<std::int64_t>> plus_lists;
  plus_lists.reserve(masks.size());
  for (std::uint32_t m : masks) {
    std::vector<std::int64_t> plus;
    for (std::uint32_t w = 0; w < r; ++w) {
      if (m & (std::uint32_t{1} << w)) plus.push_back(w);
    }
    plus_lists.push_back(std::move(plus));
  }
  std::sort(plus_lists.begin(), plus_lists.end());
  std::vector<JudgmentPair> out;
  out.reserve(plus_lists.size());
  for (const auto& plus : plus_lists) {
    ResidueSet p = ResidueSet::from_members(r, plus);
    out.emplace_back(p, p.complement());
  }
  return out;
}

// Valuation-scan route: a complete pair is rational exactly when its
// accepted set is induced by some valuation.
std::vector<std::uint32_t> rational_masks_by_valuation(const FrameSpec& spec,
                                                       const std::vector<std::uint32_t>& tmask) {
  const std::uint32_t r = spec.r();
  const std::uint32_t vend = std::uint32_t{1} << r;
  std::vector<std::uint8_t> present(vend, 0);
  for (std::uint32_t v = 0; v < vend; ++v) {
    std::uint32_t induced = 0;
    for (std::uint32_t w = 0; w < r; ++w) {
      if ((tmask[w] & ~v) == 0) induced |= std::uint32_t{1} << w;
    }
    present[induced] = 1;
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < vend; ++m) {
    if (present[m]) masks.push_back(m);
  }
  return masks;
}

template <bool Parallel>
std::vector<JudgmentPair> enumerate_rational_impl(const FrameSpec& spec) {
  if (spec.r() > kEnumerateMaxR) {
    throw ResourceError("enumerate_rational_sets limited to r <= 14");
  }
  const std::uint32_t r = spec.r();
  const std::int64_t mend = std::int64_t{1} << r;
  std::vector<std::uint32_t> tmask = translate_masks(spec);

  // Covering-criterion route over every complete pair.
  std::vector<std::uint8_t> keep(mend, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (std::int64_t m = 0; m < mend; ++m) {
    std::uint32_t mask = static_cast<std::uint32_t>(m);
    std::vector<std::int64_t> plus, minus;
    for (std::uint32_t w = 0; w < r; ++w) {
      ((mask >> w) & 1 ? plus : minus).push_back(w);
    }
    JudgmentPair jp(ResidueSet::from_members(r, plus), ResidueSet::from_members(r, minus));
    keep[m] = is_consistent(jp, spec) ? 1 : 0;
  }
  std::vector<std::uint32_t> by_criterion;
  for (std::int64_t m = 0; m < mend; ++m) {
    if (keep[m]) by_criterion.push_back(static_cast<std::uint32_t>(m));
  }

  std::vector<std::uint32_t> by_valuation = rational_masks_by_valuation(spec, tmask);
  if (by_criterion != by_valuation) {
    throw Error("rational-set routes disagree; covering criterion or scan is wrong");
  }
  return masks_to_pairs(spec, std::move(by_criterion));
}

}  // namespace

std::vector<JudgmentPair> enumerate_rational_sets(const FrameSpec& spec) {
  return enumerate_rational_impl<true>(spec);
}

std::vector<JudgmentPair> enumerate_rational_sets_serial(const FrameSpec& spec) {
  return enumerate_rational_impl<false>(spec);
}

std::vector<JudgmentPair> AxiomReport::profile_sets(const ProfileRef& ref) const {
  std::vector<JudgmentPair> out;
  out.reserve(ref.set_indices.size());
  for (std::uint32_t idx : ref.set_indices) out.push_back(rational_sets[idx]);
  return out;
}

namespace {

std::vector<std::uint32_t> profile_digits(std::uint64_t id, std::uint32_t n, std::size_t s) {
  std::vector<std::uint32_t> digits(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    digits[i] = static_cast<std::uint32_t>(id % s);
    id /= s;
  }
  return digits;
}

ProfileRef make_ref(std::uint64_t id, std::uint32_t n, std::size_t s) {
  return ProfileRef{id, profile_digits(id, n, s)};
}

}  // namespace

AxiomReport check_axioms(const AggregationRule& rule, const FrameSpec& spec, std::uint32_t n) {
  if (n == 0) throw ParameterError("axiom check needs at least one individual");
  AxiomReport rep;
  rep.n = n;
  rep.rational_sets = enumerate_rational_sets(spec);
  const std::size_t s = rep.rational_sets.size();
  std::uint64_t profiles = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    profiles *= s;
    if (profiles > kAxiomMaxProfiles) {
      throw ResourceError("axiom check limited to 10^6 profiles");
    }
  }
  rep.profile_count = profiles;

  const std::uint32_t r = spec.r();
  std::vector<std::uint32_t> jmask(s, 0);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::uint32_t w : rep.rational_sets[j].plus().members()) {
      jmask[j] |= std::uint32_t{1} << w;
    }
  }
  std::vector<std::uint32_t> tmask = translate_masks(spec);

  // Rule evaluation is the expensive part; each profile is independent.
  std::vector<std::uint32_t> outcome(profiles, 0);
  std::vector<std::uint8_t> incomplete(profiles, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(profiles); ++p) {
    std::vector<std::uint32_t> digits = profile_digits(p, n, s);
    std::vector<JudgmentPair> sets;
    sets.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) sets.push_back(rep.rational_sets[digits[i]]);
    JudgmentPair out = rule(sets);
    if (out.modulus() != r || !out.complete()) {
      incomplete[p] = 1;
      continue;
    }
    std::uint32_t mask = 0;
    for (std::uint32_t w : out.plus().members()) mask |= std::uint32_t{1} << w;
    outcome[p] = mask;
  }
  for (std::uint64_t p = 0; p < profiles; ++p) {
    if (incomplete[p]) {
      throw ParameterError("rule under test returned an incomplete judgment pair");
    }
  }

  const std::uint32_t full_coalition = (n >= 32) ? 0xffffffffu : ((std::uint32_t{1} << n) - 1);

  // Coalition buckets: for each (index, acceptance coalition), the first
  // profile seen with each collective verdict.
  struct Bucket {
    std::int64_t first[2] = {-1, -1};
  };
  std::unordered_map<std::uint64_t, Bucket> buckets;
  buckets.reserve(std::min<std::uint64_t>(profiles * r, 1u << 22));

  std::uint64_t dictators = (n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  for (std::uint64_t p = 0; p < profiles; ++p) {
    std::vector<std::uint32_t> digits = profile_digits(p, n, s);
    // Dictatorship: eliminate individuals the outcome deviates from.
    if (dictators) {
      for (std::uint32_t i = 0; i < n; ++i) {
        if ((dictators >> i) & 1) {
          if (jmask[digits[i]] != outcome[p]) dictators &= ~(std::uint64_t{1} << i);
        }
      }
    }
    // Rationality: the collective pair must be consistent.
    if (rep.rationality) {
      std::uint32_t v = 0;
      for (std::uint32_t w = 0; w < r; ++w) {
        if ((outcome[p] >> w) & 1) v |= tmask[w];
      }
      for (std::uint32_t w = 0; w < r; ++w) {
        if (!((outcome[p] >> w) & 1) && (tmask[w] & ~v) == 0) {
          rep.rationality = false;
          rep.rationality_cx = RationalityViolation{make_ref(p, n, s)};
          break;
        }
      }
    }
    for (std::uint32_t w = 0; w < r; ++w) {
      std::uint32_t coal = 0;
      for (std::uint32_t i = 0; i < n; ++i) {
        if ((jmask[digits[i]] >> w) & 1) coal |= std::uint32_t{1} << i;
      }
      std::uint32_t verdict = (outcome[p] >> w) & 1;
      if (rep.unanimity && coal == full_coalition && verdict == 0) {
        rep.unanimity = false;
        rep.unanimity_cx = UnanimityViolation{make_ref(p, n, s), w, true};
      }
      if (rep.unanimity_full) {
        if (coal == full_coalition && verdict == 0) {
          rep.unanimity_full = false;
          rep.unanimity_full_cx = UnanimityViolation{make_ref(p, n, s), w, true};
        } else if (coal == 0 && verdict == 1) {
          rep.unanimity_full = false;
          rep.unanimity_full_cx = UnanimityViolation{make_ref(p, n, s), w, false};
        }
      }
      Bucket& b = buckets[(std::uint64_t{w} << 32) | coal];
      if (b.first[verdict] < 0) b.first[verdict] = static_cast<std::int64_t>(p);
    }
  }
  if (dictators) {
    std::uint32_t lowest = 0;
    while (!((dictators >> lowest) & 1)) ++lowest;
    rep.dictator = lowest + 1;
  }

  // Deterministic scan order over the buckets.
  std::vector<std::uint64_t> keys;
  keys.reserve(buckets.size());
  for (const auto& [key, bucket] : buckets) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  // Independence: same coalition for the index, different verdicts.
  for (std::uint64_t key : keys) {
    const Bucket& b = buckets.at(key);
    if (b.first[0] >= 0 && b.first[1] >= 0) {
      std::uint64_t pf = static_cast<std::uint64_t>(std::min(b.first[0], b.first[1]));
      std::uint64_t pg = static_cast<std::uint64_t>(std::max(b.first[0], b.first[1]));
      rep.independence = false;
      rep.independence_cx =
          PairViolation{make_ref(pf, n, s), make_ref(pg, n, s),
                        static_cast<std::uint32_t>(key >> 32)};
      break;
    }
  }

  // Positive-negative neutrality: coalition for the index in f equals the
  // coalition for its negation in g, yet the verdicts coincide.
  for (std::uint64_t key : keys) {
    std::uint32_t w = static_cast<std::uint32_t>(key >> 32);
    std::uint32_t coal = static_cast<std::uint32_t>(key);
    std::uint32_t partner_coal = full_coalition & ~coal;
    if (coal > partner_coal) continue;
    auto it = buckets.find((std::uint64_t{w} << 32) | partner_coal);
    if (it == buckets.end()) continue;
    const Bucket& b = buckets.at(key);
    const Bucket& pb = it->second;
    for (int verdict = 0; verdict < 2 && rep.pn_neutrality; ++verdict) {
      if (b.first[verdict] >= 0 && pb.first[verdict] >= 0) {
        rep.pn_neutrality = false;
        rep.pn_neutrality_cx =
            PairViolation{make_ref(static_cast<std::uint64_t>(b.first[verdict]), n, s),
                          make_ref(static_cast<std::uint64_t>(pb.first[verdict]), n, s), w};
      }
    }
    if (!rep.pn_neutrality) break;
  }

  return rep;
}

}  // namespace modalagg::oracle
