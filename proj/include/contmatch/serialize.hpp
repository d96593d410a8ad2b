#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contmatch/geometry.hpp"
#include "contmatch/matching.hpp"
#include "contmatch/signal.hpp"
#include "contmatch/verify.hpp"

namespace contmatch {

// CSV numbers use 9 significant digits; JSON numbers round-trip exactly.
std::string csv_number(double x);

std::string to_string(ObjectiveKind kind);

// Two columns: t,value.
std::string signal_csv(const SampledSignal& s);
// {t_start, spacing, count, values}.
nlohmann::json signal_json(const SampledSignal& s);
SampledSignal signal_from_json(const nlohmann::json& doc);
// Reads t,value rows (header and '#' lines skipped); the grid is taken from
// the first time stamp and the mean spacing. Throws FormatError.
SampledSignal read_signal_csv(std::istream& in);

// One row per lattice point: theta columns, then the objective.
std::string surface_csv(const EnergySurface& s);
nlohmann::json surface_json(const EnergySurface& s);

nlohmann::json match_json(const MatchResult& r);

std::string regularity_csv(const RegularityReport& r);
nlohmann::json regularity_json(const RegularityReport& r);
nlohmann::json analytic_json(const AnalyticRegularity& a);

nlohmann::json holder_json(const HolderFit& f);
nlohmann::json condition_json(const ConditionEstimate& e, bool with_values = false);
nlohmann::json gap_report_json(const GapBoundReport& r);
nlohmann::json scaling_row_json(const ScalingRow& r);

nlohmann::json family_params_json(const FamilyParams& p);

}  // namespace contmatch
