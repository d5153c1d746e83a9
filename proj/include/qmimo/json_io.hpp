#pragma once

#include <string>

#include <json.hpp>

#include "qmimo/channel.hpp"
#include "qmimo/frontend.hpp"
#include "qmimo/geometry.hpp"
#include "qmimo/simulator.hpp"

namespace qmimo {

using nlohmann::json;

// {"n_t": int, "n_r": int, "h": [[row-major]], "power": real, "noise_var": real}
json channel_to_json(const ChannelModel& c);
ChannelModel channel_from_json(const json& j);

// {"scenario": "V", "n_q": 2, "functions": [{"terms": [{"exps": [1], "coef": 1.0}]}, ...],
//  "thresholds": [...]} plus "degree_bound" for Scenario IV.
json frontend_to_json(const FrontendSpec& spec);
FrontendSpec frontend_from_json(const json& j);

// Pattern keys are 0/1 strings, leftmost character = ADC 1.
json region_code_to_json(const RegionCode& code);
RegionCode region_code_from_json(const json& j);

json trial_report_to_json(const TrialReport& r);

std::string bits_to_string(const Bits& b);
Bits bits_from_string(const std::string& s);

// Writes content to path via a temp file and rename, so readers never see
// partial output.
void write_file_atomic(const std::string& path, const std::string& content);

std::string format_double(double v);

}  // namespace qmimo
