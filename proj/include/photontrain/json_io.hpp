// JSON/CSV serialization for regression snapshots and CLI reports.

#pragma once

#include "photontrain/atomic.hpp"
#include "photontrain/budget.hpp"
#include "photontrain/protocol.hpp"

#include <json.hpp>

#include <string>

namespace photontrain::io {

using json = nlohmann::json;

// Amplitudes as (re, im) pairs in basis-index order; the header fields state
// the bit convention so snapshots are portable across languages.
json state_to_json(const PureState& state);

json isometry_to_json(const Isometry& v);
json run_to_json(const protocol::ProtocolRun& run);
json scheme_to_json(const atomic::LevelScheme& scheme);
json compiled_to_json(const atomic::CompiledIsometry& compiled);

json model_to_json(const budget::EfficiencyModel& model);
json spdc_to_json(const budget::SpdcReport& report);
json monte_carlo_to_json(const budget::MonteCarloResult& result);

// CSV with header row, comma separation, LF endings, %.17g floats.
std::string spdc_to_csv(const budget::SpdcReport& report);

// Serialization with 2-space indentation; nlohmann emits shortest
// round-trip number literals, so equal inputs give byte-identical output.
std::string dump(const json& j);

void write_text_file(const std::string& path, const std::string& content);

std::string format_double(double x);  // %.17g

}  // namespace photontrain::io
