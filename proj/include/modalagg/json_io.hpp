#pragma once

#include <string>

#include <json.hpp>

#include "modalagg/aggregation.hpp"
#include "modalagg/bench.hpp"
#include "modalagg/covering.hpp"
#include "modalagg/oracle.hpp"
#include "modalagg/residue.hpp"
#include "modalagg/sweeps.hpp"

namespace modalagg::io {

using nlohmann::json;

// Frame: {"kind":2,"r":6,"k":1,"A":[0,1]}
json frame_to_json(const FrameSpec& spec);
FrameSpec frame_from_json(const json& j);

// Judgment pair: {"accept":[...],"reject":[...]}
json pair_to_json(const JudgmentPair& jp);
JudgmentPair pair_from_json(const json& j, std::uint32_t r);

// Outcome: a pair plus the consistency self-check flag.
json outcome_to_json(const JudgmentPair& jp, bool consistent);

// Profile: {"n":3,"counts":[...]} or {"n":3,"judgments":[{...},...]}
json profile_to_json(const Profile& profile);
Profile profile_from_json(const json& j, const FrameSpec& spec);

json params_to_json(const ParamReport& rep);
json impossibility_to_json(const ImpossibilityReport& rep, bool witnesses);
json axioms_to_json(const oracle::AxiomReport& rep);
json paradox_to_json(const ParadoxWitness& wit);
json sweep_to_json(const sweeps::SweepResult& result);
json bench_to_json(const bench::BenchReport& report);

const char* strategy_name(Strategy strategy);
Strategy strategy_from_name(const std::string& name);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

// Flat key/value rendering of the same data for --format table.
std::string to_table(const json& j);

}  // namespace modalagg::io
