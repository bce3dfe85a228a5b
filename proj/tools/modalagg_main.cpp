#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modalagg/aggregation.hpp"
#include "modalagg/bench.hpp"
#include "modalagg/covering.hpp"
#include "modalagg/errors.hpp"
#include "modalagg/formula.hpp"
#include "modalagg/json_io.hpp"
#include "modalagg/kripke.hpp"
#include "modalagg/oracle.hpp"
#include "modalagg/residue.hpp"
#include "modalagg/sweeps.hpp"

namespace {

using modalagg::FrameKind;
using modalagg::FrameSpec;
using modalagg::IssueOrder;
using modalagg::JudgmentPair;
using modalagg::Profile;
using modalagg::ResidueSet;
using modalagg::Strategy;
namespace io = modalagg::io;

struct FrameFlags {
  int kind = 2;
  std::int64_t r = 0;
  std::int64_t k = 0;
  std::vector<std::int64_t> a;
};

void add_frame_flags(CLI::App* cmd, FrameFlags& flags) {
  cmd->add_option("--kind", flags.kind, "Frame kind (1 or 2)")->default_val(2);
  cmd->add_option("--r", flags.r, "Cycle length r")->required();
  cmd->add_option("--k", flags.k, "Step parameter k")->required();
  cmd->add_option("--A", flags.a, "Step set A, comma separated")
      ->required()
      ->delimiter(',');
}

FrameSpec make_spec(const FrameFlags& flags) {
  if (flags.kind != 1 && flags.kind != 2) {
    throw modalagg::ParameterError("kind must be 1 or 2");
  }
  return FrameSpec::make(flags.kind == 1 ? FrameKind::Frame1 : FrameKind::Frame2, flags.r,
                         flags.k, flags.a);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MODALAGG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw modalagg::ParseError("MODALAGG_SEED must be an unsigned integer");
    }
  }
  return 0;
}

void emit(const io::json& payload, const std::string& format) {
  if (format == "table") {
    std::cout << io::to_table(payload);
  } else {
    std::cout << io::dump(payload);
  }
}

// Deterministic permutation draw; std::shuffle is implementation-defined.
IssueOrder random_order(std::uint32_t r, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(r);
  for (std::uint32_t i = 0; i < r; ++i) perm[i] = i;
  for (std::uint32_t i = r; i > 1; --i) {
    std::uint32_t j = static_cast<std::uint32_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return IssueOrder::from_permutation(std::move(perm));
}

const char* decision_name(modalagg::SeqDecision d) {
  switch (d) {
    case modalagg::SeqDecision::ForcedAccept: return "forced-accept";
    case modalagg::SeqDecision::ForcedReject: return "forced-reject";
    case modalagg::SeqDecision::MajorityAccept: return "majority-accept";
    case modalagg::SeqDecision::MajorityReject: return "majority-reject";
  }
  return "unknown";
}

int run(int argc, char** argv) {
  CLI::App app{"Modal judgment aggregation on cyclic frames"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->default_val("json");

  // check-frame
  auto* check = app.add_subcommand("check-frame", "Verify the impossibility-frame properties");
  check->fallthrough();
  FrameFlags check_flags;
  add_frame_flags(check, check_flags);
  bool check_witnesses = false;
  bool check_strict = false;
  check->add_flag("--witnesses", check_witnesses, "Include witness sets and edges");
  check->add_flag("--strict", check_strict, "Exit 1 when the frame fails verification");

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "Run an aggregation procedure on a profile");
  agg->fallthrough();
  FrameFlags agg_flags;
  add_frame_flags(agg, agg_flags);
  std::string method = "seqmaj";
  std::string strategy_name = "general";
  std::vector<std::int64_t> counts;
  std::string judgments_file;
  bool random_profile_flag = false;
  std::int64_t agg_n = 0;
  std::vector<std::int64_t> order_literal;
  bool random_order_flag = false;
  std::uint64_t seed = 0;
  double density = 0.5;
  bool trace_flag = false;
  bool agg_strict = false;
  agg->add_option("--method", method, "horn or seqmaj")
      ->check(CLI::IsMember({"horn", "seqmaj"}))
      ->default_val("seqmaj");
  agg->add_option("--strategy", strategy_name, "Consistency-check strategy for seqmaj")
      ->check(CLI::IsMember({"reference", "general", "interval"}))
      ->default_val("general");
  agg->add_option("--counts", counts, "Per-issue acceptance counts, comma separated")
      ->delimiter(',');
  agg->add_option("--judgments-file", judgments_file, "JSON profile document to load");
  agg->add_flag("--random", random_profile_flag, "Draw a random rational profile");
  agg->add_option("--n", agg_n, "Number of individuals");
  agg->add_option("--order", order_literal, "Issue order as a permutation literal")
      ->delimiter(',');
  agg->add_flag("--random-order", random_order_flag, "Draw the issue order from the seed");
  auto* seed_opt = agg->add_option("--seed", seed, "Random seed (default MODALAGG_SEED or 0)");
  agg->add_option("--density", density, "Valuation density for large-r random profiles")
      ->default_val(0.5);
  agg->add_flag("--trace", trace_flag, "Emit the per-issue decision trace");
  agg->add_flag("--strict", agg_strict, "Exit 1 when the self-check fails");

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduce an agenda formula to an indexed proposition");
  red->fallthrough();
  FrameFlags red_flags;
  add_frame_flags(red, red_flags);
  std::string formula_text;
  red->add_option("--formula", formula_text, "Formula over B/D/p, e.g. BDBp or !BBp")
      ->required();

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force cross-checks at desk scale");
  orc->fallthrough();
  orc->require_subcommand(1);

  auto* orc_cons = orc->add_subcommand("consistent", "Brute-force vs covering consistency");
  orc_cons->fallthrough();
  FrameFlags cons_flags;
  add_frame_flags(orc_cons, cons_flags);
  std::vector<std::int64_t> accept_list, reject_list;
  orc_cons->add_option("--accept", accept_list, "Accepted indices")->delimiter(',');
  orc_cons->add_option("--reject", reject_list, "Rejected indices")->delimiter(',');

  auto* orc_min = orc->add_subcommand("min-inconsistent", "Minimal inconsistency check");
  orc_min->fallthrough();
  FrameFlags min_flags;
  add_frame_flags(orc_min, min_flags);
  std::vector<std::int64_t> min_accept, min_reject;
  orc_min->add_option("--accept", min_accept, "Accepted indices")->delimiter(',');
  orc_min->add_option("--reject", min_reject, "Rejected indices")->delimiter(',');

  auto* orc_lt0 = orc->add_subcommand("lt0", "Conditional-entailment edge check");
  orc_lt0->fallthrough();
  FrameFlags lt0_flags;
  add_frame_flags(orc_lt0, lt0_flags);
  std::int64_t lt0_u = 0, lt0_v = 0;
  orc_lt0->add_option("--u", lt0_u, "Lower index")->required();
  orc_lt0->add_option("--v", lt0_v, "Upper index")->required();

  auto* orc_rat = orc->add_subcommand("rational-sets", "Enumerate the rational judgment sets");
  orc_rat->fallthrough();
  FrameFlags rat_flags;
  add_frame_flags(orc_rat, rat_flags);

  auto* orc_ax = orc->add_subcommand("axioms", "Axiom audit of a built-in rule");
  orc_ax->fallthrough();
  FrameFlags ax_flags;
  add_frame_flags(orc_ax, ax_flags);
  std::string rule_name = "seqmaj";
  std::int64_t ax_n = 2;
  std::int64_t dictator_index = 1;
  orc_ax->add_option("--rule", rule_name, "dictator, majority, or seqmaj")
      ->check(CLI::IsMember({"dictator", "majority", "seqmaj"}))
      ->default_val("seqmaj");
  orc_ax->add_option("--n", ax_n, "Number of individuals")->default_val(2);
  orc_ax->add_option("--dictator-index", dictator_index, "1-based index for the dictator rule")
      ->default_val(1);

  // sweep
  auto* swp = app.add_subcommand("sweep", "Exhaustive absorption / one-sided law sweeps");
  swp->fallthrough();
  std::string law = "absorption";
  std::int64_t sweep_rmin = 4, sweep_rmax = 9, sweep_depth = 3;
  swp->add_option("--law", law, "absorption or oneside")
      ->check(CLI::IsMember({"absorption", "oneside"}))
      ->default_val("absorption");
  swp->add_option("--r-min", sweep_rmin, "Smallest r")->default_val(4);
  swp->add_option("--r-max", sweep_rmax, "Largest r")->default_val(9);
  swp->add_option("--depth", sweep_depth, "Maximum suffix prefix length")->default_val(3);

  // bench
  auto* ben = app.add_subcommand("bench", "Scaling benchmark of the sequential strategies");
  ben->fallthrough();
  modalagg::bench::BenchConfig bench_config;
  std::vector<std::uint32_t> bench_r{10000, 100000, 1000000};
  std::vector<std::string> bench_strategies{"general", "interval"};
  std::uint64_t bench_seed = 0;
  ben->add_option("--r", bench_r, "Grid of r values")->delimiter(',');
  ben->add_option("--k", bench_config.k, "Fixed k")->default_val(8);
  ben->add_option("--n", bench_config.n, "Individuals per profile")->default_val(5);
  ben->add_option("--trials", bench_config.trials, "Profiles per grid point")->default_val(3);
  auto* bench_seed_opt = ben->add_option("--seed", bench_seed, "Random seed");
  ben->add_option("--density", bench_config.density, "Valuation density")->default_val(0.5);
  ben->add_option("--strategies", bench_strategies, "Strategies to time")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*check) {
      const FrameSpec spec = make_spec(check_flags);
      const auto report = modalagg::verify_impossibility_frame(spec);
      io::json payload = io::impossibility_to_json(report, check_witnesses);
      payload["frame"] = io::frame_to_json(spec);
      emit(payload, format);
      return (check_strict && !report.impossibility_frame) ? 1 : 0;
    }

    if (*agg) {
      const FrameSpec spec = make_spec(agg_flags);
      const std::uint64_t effective_seed = seed_opt->count() ? seed : default_seed();
      std::mt19937_64 rng(effective_seed);

      std::optional<Profile> profile;
      int sources = (counts.empty() ? 0 : 1) + (judgments_file.empty() ? 0 : 1) +
                    (random_profile_flag ? 1 : 0);
      if (sources != 1) {
        throw modalagg::ParameterError(
            "exactly one of --counts, --judgments-file, --random is required");
      }
      if (!counts.empty()) {
        if (agg_n <= 0) throw modalagg::ParameterError("--counts requires --n");
        std::vector<std::uint32_t> c;
        c.reserve(counts.size());
        for (std::int64_t v : counts) {
          if (v < 0) throw modalagg::ParameterError("counts must be non-negative");
          c.push_back(static_cast<std::uint32_t>(v));
        }
        profile = Profile::from_counts(static_cast<std::uint32_t>(agg_n), std::move(c));
      } else if (!judgments_file.empty()) {
        std::ifstream in(judgments_file);
        if (!in) throw modalagg::ParseError("cannot open " + judgments_file);
        io::json doc = io::json::parse(in, nullptr, true);
        profile = io::profile_from_json(doc, spec);
      } else {
        if (agg_n <= 0) throw modalagg::ParameterError("--random requires --n");
        profile = modalagg::bench::random_profile(spec, static_cast<std::uint32_t>(agg_n), rng,
                                                  density);
      }

      IssueOrder order = IssueOrder::identity(spec.r());
      if (!order_literal.empty() && random_order_flag) {
        throw modalagg::ParameterError("--order and --random-order are mutually exclusive");
      }
      if (!order_literal.empty()) {
        std::vector<std::uint32_t> perm;
        perm.reserve(order_literal.size());
        for (std::int64_t v : order_literal) {
          if (v < 0) throw modalagg::ParameterError("order entries must be non-negative");
          perm.push_back(static_cast<std::uint32_t>(v));
        }
        order = IssueOrder::from_permutation(std::move(perm));
      } else if (random_order_flag) {
        order = random_order(spec.r(), rng);
      }

      io::json payload;
      payload["frame"] = io::frame_to_json(spec);
      payload["method"] = method;
      if (random_profile_flag || trace_flag) payload["profile"] = io::profile_to_json(*profile);

      JudgmentPair outcome =
          JudgmentPair(ResidueSet::empty_set(spec.r()), ResidueSet::empty_set(spec.r()));
      if (method == "horn") {
        const auto result = modalagg::horn_aggregate(*profile, spec);
        payload["valuation"] = io::json::array();
        for (std::uint32_t w : result.valuation.members()) payload["valuation"].push_back(w);
        outcome = result.outcome;
      } else {
        payload["strategy"] = strategy_name;
        payload["order"] = order.order();
        std::vector<modalagg::SeqTraceEntry> trace;
        outcome = modalagg::seq_majority(*profile, spec, order,
                                         io::strategy_from_name(strategy_name), nullptr,
                                         trace_flag ? &trace : nullptr);
        if (trace_flag) {
          io::json rows = io::json::array();
          for (const auto& t : trace) {
            rows.push_back({{"issue", t.issue}, {"decision", decision_name(t.decision)}});
          }
          payload["trace"] = rows;
        }
      }

      const bool self_check = modalagg::is_consistent(outcome, spec);
      payload["outcome"] = io::outcome_to_json(outcome, self_check);
      emit(payload, format);
      return (agg_strict && !self_check) ? 1 : 0;
    }

    if (*red) {
      const FrameSpec spec = make_spec(red_flags);
      const auto formula = modalagg::parse(formula_text);
      const auto prop = modalagg::reduce_agenda_formula(spec, formula);
      io::json payload;
      payload["frame"] = io::frame_to_json(spec);
      payload["input"] = modalagg::render(formula);
      payload["index"] = prop.index;
      payload["positive"] = prop.positive;
      if (spec.kind() == FrameKind::Frame2) {
        io::json steps = io::json::array();
        modalagg::Residue world(spec.designated_world(), spec.r());
        modalagg::ModalFormula cur = formula.negated() ? formula.negation() : formula;
        steps.push_back({{"world", world.value()}, {"formula", modalagg::render(cur)}});
        while (cur.depth() > 1) {
          auto [next_world, next_formula] = modalagg::reduce_step(spec, world.value(), cur);
          world = next_world;
          cur = next_formula;
          steps.push_back({{"world", world.value()}, {"formula", modalagg::render(cur)}});
        }
        payload["steps"] = steps;
      }
      emit(payload, format);
      return 0;
    }

    if (*orc) {
      if (*orc_cons) {
        const FrameSpec spec = make_spec(cons_flags);
        const JudgmentPair jp(ResidueSet::from_members(spec.r(), accept_list),
                              ResidueSet::from_members(spec.r(), reject_list));
        const bool covering = modalagg::is_consistent(jp, spec);
        const bool brute = modalagg::oracle::brute_consistent(jp, spec);
        io::json payload;
        payload["frame"] = io::frame_to_json(spec);
        payload["pair"] = io::pair_to_json(jp);
        payload["covering"] = covering;
        payload["brute"] = brute;
        payload["agree"] = covering == brute;
        emit(payload, format);
        return 0;
      }
      if (*orc_min) {
        const FrameSpec spec = make_spec(min_flags);
        const JudgmentPair jp(ResidueSet::from_members(spec.r(), min_accept),
                              ResidueSet::from_members(spec.r(), min_reject));
        io::json payload;
        payload["frame"] = io::frame_to_json(spec);
        payload["pair"] = io::pair_to_json(jp);
        payload["minimally_inconsistent"] = modalagg::oracle::brute_min_inconsistent(jp, spec);
        emit(payload, format);
        return 0;
      }
      if (*orc_lt0) {
        const FrameSpec spec = make_spec(lt0_flags);
        io::json payload;
        payload["frame"] = io::frame_to_json(spec);
        payload["u"] = lt0_u;
        payload["v"] = lt0_v;
        payload["lt0"] = modalagg::oracle::brute_lt0(lt0_u, lt0_v, spec);
        emit(payload, format);
        return 0;
      }
      if (*orc_rat) {
        const FrameSpec spec = make_spec(rat_flags);
        const auto sets = modalagg::oracle::enumerate_rational_sets(spec);
        io::json payload;
        payload["frame"] = io::frame_to_json(spec);
        payload["count"] = sets.size();
        io::json rows = io::json::array();
        for (const auto& s : sets) rows.push_back(io::pair_to_json(s));
        payload["sets"] = rows;
        emit(payload, format);
        return 0;
      }
      if (*orc_ax) {
        const FrameSpec spec = make_spec(ax_flags);
        if (ax_n < 1) throw modalagg::ParameterError("--n must be positive");
        const auto n = static_cast<std::uint32_t>(ax_n);
        modalagg::oracle::AggregationRule rule;
        if (rule_name == "dictator") {
          if (dictator_index < 1 || dictator_index > ax_n) {
            throw modalagg::ParameterError("--dictator-index must be in [1, n]");
          }
          const auto idx = static_cast<std::size_t>(dictator_index - 1);
          rule = [idx](const std::vector<JudgmentPair>& sets) { return sets[idx]; };
        } else if (rule_name == "majority") {
          rule = [&spec, n](const std::vector<JudgmentPair>& sets) {
            return modalagg::majority_outcome(Profile::from_judgments(spec, sets), spec);
          };
        } else {
          rule = [&spec](const std::vector<JudgmentPair>& sets) {
            return modalagg::seq_majority(Profile::from_judgments(spec, sets), spec,
                                          IssueOrder::identity(spec.r()), Strategy::General);
          };
        }
        const auto report = modalagg::oracle::check_axioms(rule, spec, n);
        io::json payload = io::axioms_to_json(report);
        payload["frame"] = io::frame_to_json(spec);
        payload["rule"] = rule_name;
        emit(payload, format);
        return 0;
      }
    }

    if (*swp) {
      if (sweep_rmin < 2 || sweep_rmax < sweep_rmin || sweep_depth < 0) {
        throw modalagg::ParameterError("invalid sweep range");
      }
      const auto result =
          law == "absorption"
              ? modalagg::sweeps::absorption_sweep(
                    static_cast<std::uint32_t>(sweep_rmin), static_cast<std::uint32_t>(sweep_rmax),
                    static_cast<std::uint32_t>(sweep_depth))
              : modalagg::sweeps::oneside_sweep(
                    static_cast<std::uint32_t>(sweep_rmin), static_cast<std::uint32_t>(sweep_rmax),
                    static_cast<std::uint32_t>(sweep_depth));
      io::json payload = io::sweep_to_json(result);
      payload["law"] = law;
      emit(payload, format);
      return 0;
    }

    if (*ben) {
      bench_config.r_values = bench_r;
      bench_config.seed = bench_seed_opt->count() ? bench_seed : default_seed();
      bench_config.strategies.clear();
      for (const auto& name : bench_strategies) {
        bench_config.strategies.push_back(io::strategy_from_name(name));
      }
      const auto report = modalagg::bench::run_bench(bench_config);
      emit(io::bench_to_json(report), format);
      return 0;
    }
  } catch (const modalagg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
