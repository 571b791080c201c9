#pragma once

#include <string>

#include <json.hpp>

#include "sturm/experiments.hpp"
#include "sturm/fss.hpp"
#include "sturm/otelbaev.hpp"
#include "sturm/solver.hpp"

namespace sturm {

// All reports carry this so downstream plotting can pin the layout.
inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const OtelbaevProfile& profile, const std::string& coefficient);
Json to_json(const NormRecord& norms);
Json to_json(const SolveResult& result);
Json to_json(const DiagnosticsReport& report);
Json to_json(const CosPowerStudy& study);

// CSV emitters (header row, '.' decimal separator, 17 significant digits).
std::string profile_csv(const OtelbaevProfile& profile);       // x,d
std::string fss_csv(const FundamentalSystem& fss);             // x,u,du,v,dv
std::string solution_csv(const SolveResult& result);           // x,y,dy,ddy
std::string cospower_csv(const CosPowerStudy& study);

// Writes content to path (creating parent directories is the caller's
// concern); throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& content);

// Sidecar with volatile metadata (timestamp, seed); kept out of the main
// report so reruns stay byte-identical.
void write_meta_sidecar(const std::string& path, const std::string& tool,
                        long long seed_or_negative);

}  // namespace sturm
