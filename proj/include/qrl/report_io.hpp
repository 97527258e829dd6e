#pragma once

#include <string>
#include <vector>

#include "qrl/analysis.hpp"

namespace qrl {

// Serialization of trial reports.  The emitters are hand-rolled so the byte
// stream is a pure function of the report: fixed key order, doubles printed
// with 17 significant digits.
//
// JSON per report:
//   { "scenario": str, "params": {..}, "seed": u64,
//     "branches": [ { "outcome": [int..], "probability": f, "fidelity": f,
//                     "agreement": f } .. ],
//     "gate_count": int, "checks": { name: bool .. }, "pass": bool }
std::string report_to_json(const ScenarioReport& report);
std::string reports_to_json(const std::vector<ScenarioReport>& reports);

// Flat per-branch projection: one row per branch, outcome digits joined
// with '-'.
std::string reports_to_csv(const std::vector<ScenarioReport>& reports);

// Initial-state file: a JSON array with one amplitude list per subsystem,
// each amplitude a number or an [re, im] pair.  Throws ValidationError on
// malformed content.
PureState load_state_file(const std::string& path, const SystemLayout& layout);

std::string read_text_file(const std::string& path);

}  // namespace qrl
