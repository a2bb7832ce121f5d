#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ratl2/certify.hpp"
#include "ratl2/critical.hpp"
#include "ratl2/scheme_builder.hpp"

namespace ratl2 {

using json = nlohmann::json;

// Complex numbers travel as 2-element arrays [re, im].
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/**
 * Builds the approximation target from its JSON document:
 * {"a":…, "b":…, "density":{"kind":"samples"|"expr", …}, "rational":[…]}.
 * A missing density makes a purely rational target.  Validation failures
 * throw std::invalid_argument with the offending field in the message.
 */
TargetFunction target_from_json(const json& doc, const Tolerances& tol = default_tol());

/**
 * Mass source for the comparison-scheme construction:
 * {"kind":"two_omega"} (endpoints default to the target's) or
 * {"kind":"samples","a":…,"b":…,"values":[…]}.
 */
SignedMeasureSamples nu_from_json(const json& doc, double default_a, double default_b);

json record_to_json(const CriticalPointRecord& rec);
CriticalPointRecord record_from_json(const json& j);

json scheme_to_json(const InterpolationScheme& scheme);
InterpolationScheme scheme_from_json(const json& j);

json criterion_to_json(const CriterionReport& rep);
json asymptotics_to_json(const AsymptoticsReport& rep);

/** One batch experiment: target, degree range, starts, seeding, overrides. */
struct ExperimentConfig {
  json target_doc;           // raw target subdocument, the hash source
  std::vector<int> degrees;  // ascending, nonempty, max 64
  int starts = 1;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::string outputs = "runs";
};

ExperimentConfig config_from_json(const json& doc);

// FNV-1a over the canonical dump of the semantic fields (not the outputs
// path), as a 16-digit hex string; names the run file.
std::string config_hash(const ExperimentConfig& cfg);

// Per-start seed derived from (seed, degree, start); stable across serial
// and parallel execution orders.
std::uint64_t start_seed(std::uint64_t seed, int degree, int start);

// Writes doc to path via a temporary file and an atomic rename.
void write_json_atomic(const std::string& path, const json& doc);

}  // namespace ratl2
