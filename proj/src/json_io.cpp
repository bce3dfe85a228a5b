#include "modalagg/json_io.hpp"

#include <sstream>

#include "modalagg/errors.hpp"

namespace modalagg::io {

namespace {

json members_to_json(const ResidueSet& s) {
  json arr = json::array();
  for (std::uint32_t w : s.members()) arr.push_back(w);
  return arr;
}

std::vector<std::int64_t> int_list(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be an array");
  std::vector<std::int64_t> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(field) + " must hold integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

std::int64_t int_field(const json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field: ") + field);
  if (!j.at(field).is_number_integer())
    throw ParseError(std::string(field) + " must be an integer");
  return j.at(field).get<std::int64_t>();
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    bool scalar = true;
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        scalar = false;
        break;
      }
    }
    if (scalar) {
      out << prefix << "  ";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",";
        out << j[i].dump();
      }
      out << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) {
        flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
      }
    }
  } else {
    out << prefix << "  " << j.dump() << "\n";
  }
}

}  // namespace

json frame_to_json(const FrameSpec& spec) {
  json j;
  j["kind"] = static_cast<int>(spec.kind());
  j["r"] = spec.r();
  j["k"] = spec.k();
  j["A"] = members_to_json(spec.A());
  return j;
}

FrameSpec frame_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("frame must be a JSON object");
  const std::int64_t kind = int_field(j, "kind");
  if (kind != 1 && kind != 2) throw ParseError("kind must be 1 or 2");
  if (!j.contains("A")) throw ParseError("missing field: A");
  return FrameSpec::make(kind == 1 ? FrameKind::Frame1 : FrameKind::Frame2,
                         int_field(j, "r"), int_field(j, "k"), int_list(j.at("A"), "A"));
}

json pair_to_json(const JudgmentPair& jp) {
  json j;
  j["accept"] = members_to_json(jp.plus());
  j["reject"] = members_to_json(jp.minus());
  return j;
}

JudgmentPair pair_from_json(const json& j, std::uint32_t r) {
  if (!j.is_object()) throw ParseError("judgment pair must be a JSON object");
  if (!j.contains("accept") || !j.contains("reject"))
    throw ParseError("judgment pair needs accept and reject arrays");
  return JudgmentPair(ResidueSet::from_members(r, int_list(j.at("accept"), "accept")),
                      ResidueSet::from_members(r, int_list(j.at("reject"), "reject")));
}

json outcome_to_json(const JudgmentPair& jp, bool consistent) {
  json j = pair_to_json(jp);
  j["consistent"] = consistent;
  return j;
}

json profile_to_json(const Profile& profile) {
  json j;
  j["n"] = profile.n();
  if (profile.has_judgments()) {
    json sets = json::array();
    for (const auto& jp : profile.judgments()) sets.push_back(pair_to_json(jp));
    j["judgments"] = sets;
  } else {
    j["counts"] = profile.counts();
  }
  return j;
}

Profile profile_from_json(const json& j, const FrameSpec& spec) {
  if (!j.is_object()) throw ParseError("profile must be a JSON object");
  const std::int64_t n = int_field(j, "n");
  if (n < 1) throw ParseError("n must be positive");
  if (j.contains("counts")) {
    const auto raw = int_list(j.at("counts"), "counts");
    std::vector<std::uint32_t> counts;
    counts.reserve(raw.size());
    for (std::int64_t c : raw) {
      if (c < 0) throw ParseError("counts must be non-negative");
      counts.push_back(static_cast<std::uint32_t>(c));
    }
    return Profile::from_counts(static_cast<std::uint32_t>(n), std::move(counts));
  }
  if (j.contains("judgments")) {
    const auto& sets = j.at("judgments");
    if (!sets.is_array()) throw ParseError("judgments must be an array");
    if (sets.size() != static_cast<std::size_t>(n))
      throw ParseError("judgments length must equal n");
    std::vector<JudgmentPair> pairs;
    pairs.reserve(sets.size());
    for (const auto& s : sets) pairs.push_back(pair_from_json(s, spec.r()));
    return Profile::from_judgments(spec, std::move(pairs));
  }
  throw ParseError("profile needs counts or judgments");
}

json params_to_json(const ParamReport& rep) {
  json j;
  j["coprime"] = rep.coprime;
  j["k_small"] = rep.k_small;
  j["a_contains_ends"] = rep.a_contains_ends;
  j["a_within_window"] = rep.a_within_window;
  j["k_symmetric"] = rep.k_symmetric;
  j["pass"] = rep.pass;
  return j;
}

json impossibility_to_json(const ImpossibilityReport& rep, bool witnesses) {
  json j;
  j["r"] = rep.r;
  j["k"] = rep.k;
  j["params"] = params_to_json(rep.params);
  j["minimally_connected"] = rep.minimally_connected;
  j["strongly_path_connected"] = rep.strongly_path_connected;
  j["impossibility_frame"] = rep.impossibility_frame;
  std::uint64_t verified = 0;
  for (std::uint8_t ok : rep.edge_ok) verified += ok;
  j["edges_verified"] = verified;
  j["edges_total"] = rep.edge_ok.size();
  if (rep.first_unconnected) {
    j["first_unconnected"] = {rep.first_unconnected->first, rep.first_unconnected->second};
  } else {
    j["first_unconnected"] = nullptr;
  }
  if (witnesses) {
    if (rep.min_inconsistent_witness) {
      j["min_inconsistent_witness"] = pair_to_json(*rep.min_inconsistent_witness);
    } else {
      j["min_inconsistent_witness"] = nullptr;
    }
    json edges = json::array();
    for (const auto& e : rep.lt0_edges) {
      json edge;
      edge["below"] = e.u;
      edge["above"] = e.v;
      edge["context"] = members_to_json(e.context);
      edges.push_back(edge);
    }
    j["lt0_edges"] = edges;
  }
  return j;
}

namespace {

json profile_ref_to_json(const oracle::ProfileRef& ref) {
  json j;
  j["profile_id"] = ref.profile_id;
  j["set_indices"] = ref.set_indices;
  return j;
}

}  // namespace

json axioms_to_json(const oracle::AxiomReport& rep) {
  json j;
  j["n"] = rep.n;
  j["profile_count"] = rep.profile_count;
  j["rational_set_count"] = rep.rational_sets.size();
  j["unanimity"] = rep.unanimity;
  if (rep.unanimity_cx) {
    json cx = profile_ref_to_json(rep.unanimity_cx->profile);
    cx["index"] = rep.unanimity_cx->index;
    cx["positive"] = rep.unanimity_cx->positive;
    j["unanimity_counterexample"] = cx;
  }
  j["unanimity_full"] = rep.unanimity_full;
  if (rep.unanimity_full_cx) {
    json cx = profile_ref_to_json(rep.unanimity_full_cx->profile);
    cx["index"] = rep.unanimity_full_cx->index;
    cx["positive"] = rep.unanimity_full_cx->positive;
    j["unanimity_full_counterexample"] = cx;
  }
  j["independence"] = rep.independence;
  if (rep.independence_cx) {
    json cx;
    cx["f"] = profile_ref_to_json(rep.independence_cx->f);
    cx["g"] = profile_ref_to_json(rep.independence_cx->g);
    cx["index"] = rep.independence_cx->index;
    j["independence_counterexample"] = cx;
  }
  j["pn_neutrality"] = rep.pn_neutrality;
  if (rep.pn_neutrality_cx) {
    json cx;
    cx["f"] = profile_ref_to_json(rep.pn_neutrality_cx->f);
    cx["g"] = profile_ref_to_json(rep.pn_neutrality_cx->g);
    cx["index"] = rep.pn_neutrality_cx->index;
    j["pn_neutrality_counterexample"] = cx;
  }
  if (rep.dictator) {
    j["dictator"] = *rep.dictator;
  } else {
    j["dictator"] = nullptr;
  }
  j["rationality"] = rep.rationality;
  if (rep.rationality_cx) {
    j["rationality_counterexample"] = profile_ref_to_json(rep.rationality_cx->profile);
  }
  return j;
}

json paradox_to_json(const ParadoxWitness& wit) {
  json j;
  j["profile"] = profile_to_json(wit.profile);
  j["base"] = pair_to_json(wit.base);
  j["majority_outcome"] = pair_to_json(wit.outcome);
  return j;
}

json sweep_to_json(const sweeps::SweepResult& result) {
  json j;
  j["cases"] = result.cases;
  j["mismatches"] = result.mismatches;
  if (result.first) {
    json m;
    m["r"] = result.first->r;
    m["k"] = result.first->k;
    m["A"] = result.first->a_members;
    m["valuation_mask"] = result.first->valuation_mask;
    m["formula"] = result.first->formula;
    m["world"] = result.first->world;
    j["first_mismatch"] = m;
  } else {
    j["first_mismatch"] = nullptr;
  }
  return j;
}

json bench_to_json(const bench::BenchReport& report) {
  json j;
  json config;
  config["kind"] = static_cast<int>(report.config.kind);
  config["r_values"] = report.config.r_values;
  config["k"] = report.config.k;
  config["n"] = report.config.n;
  config["trials"] = report.config.trials;
  config["seed"] = report.config.seed;
  config["density"] = report.config.density;
  json names = json::array();
  for (Strategy s : report.config.strategies) names.push_back(strategy_name(s));
  config["strategies"] = names;
  j["config"] = config;

  json samples = json::array();
  for (const auto& s : report.samples) {
    json row;
    row["r"] = s.r;
    row["k"] = s.k;
    row["strategy"] = strategy_name(s.strategy);
    row["trial"] = s.trial;
    row["wall_ms"] = s.wall_ms;
    row["index_ops"] = s.index_ops;
    row["accepted"] = s.accepted;
    samples.push_back(row);
  }
  j["samples"] = samples;

  json fits = json::array();
  for (const auto& f : report.fits) {
    json row;
    row["strategy"] = strategy_name(f.strategy);
    row["valid"] = f.valid;
    row["exponent"] = f.exponent;
    fits.push_back(row);
  }
  j["fits"] = fits;
  return j;
}

const char* strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::Reference: return "reference";
    case Strategy::General: return "general";
    case Strategy::Interval: return "interval";
  }
  return "unknown";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "reference") return Strategy::Reference;
  if (name == "general") return Strategy::General;
  if (name == "interval") return Strategy::Interval;
  throw ParseError("unknown strategy: " + name);
}

std::string dump(const json& j) {
  return j.dump(2) + "\n";
}

std::string to_table(const json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

}  // namespace modalagg::io
