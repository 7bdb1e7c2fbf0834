#pragma once

#include "hsdim/premeasure.hpp"
#include "hsdim/verifier.hpp"

#include <json.hpp>

#include <string>

namespace hsdim {

// Set-description format: {"kind": "finite"|"digit"|"harmonic"|"product"|"affine", ...}
// with exact rationals as "p/q" strings. Round-trips losslessly (digit
// positions with every digit allowed are canonically omitted).
nlohmann::json to_json(const SetModel& model);
SetModelPtr model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BallCoverCertificate& cert);
nlohmann::json to_json(const PackingResult& packing);
nlohmann::json to_json(const SmallBallCover& cover);
nlohmann::json to_json(const DimensionEstimate& est);
nlohmann::json to_json(const ClaimReport& report);
nlohmann::json to_json(const PremeasureProfile& profile);

nlohmann::json bigint_to_json(const BigInt& n);

// Shortest-round-trip decimal for displayed values; falls back to a
// mantissa/exponent form when the value leaves double range.
std::string format_power_value(const PowerValue& v);

// "scale,count,lower,upper\n..." — one row per scale, largest first.
std::string counts_csv(const PremeasureProfile& profile);
// "t,scale,value\n..." — rows grouped by t in grid order.
std::string values_csv(const PremeasureProfile& profile);

}  // namespace hsdim
