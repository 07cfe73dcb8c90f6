#pragma once

// File formats: target specs, JSON reports (all carry schema_version),
// CSV exports with LF line endings.

#include "directions/constructor.hpp"
#include "directions/density.hpp"
#include "directions/enumeration.hpp"
#include "directions/targets.hpp"

#include <json.hpp>

#include <string>

namespace directions {

inline constexpr int kSchemaVersion = 1;

/// {"k": 3, "kind": "finite-set", "generators": [[{"q": "1", "r": 1}, ...]]}.
/// Finite sets are closed on load; other kinds ignore generators. Custom
/// enumerators have no file form.
TargetSpec target_from_json(const nlohmann::json& doc);
TargetSpec load_target(const std::string& path);
nlohmann::json target_to_json(const TargetSpec& spec);

nlohmann::json to_json(const DirectionCloud& cloud);
/// One primitive direction per row: header d1..dk, integer entries.
std::string to_csv(const DirectionCloud& cloud);

nlohmann::json to_json(const DensityReport& report);
nlohmann::json to_json(const RatioGapStat& stat);
/// window,first_index,last_index,max_gap
std::string to_csv(const RatioGapStat& stat);
nlohmann::json to_json(const WitnessResult& result, const UnitVector& x, std::uint64_t m);
nlohmann::json to_json(const ChainReport& report);
nlohmann::json to_json(const NetAudit& audit);

nlohmann::json to_json(const ValidityReport& report);
/// {m, s, t, c, y, rho_error} for one construction step (no schema field:
/// this is a JSON-lines record).
nlohmann::json to_json(const StepRecord& step);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const RemarkReport& report);

std::string decimal_string(const Natural& n);

}  // namespace directions
