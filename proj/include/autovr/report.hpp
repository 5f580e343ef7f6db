#ifndef AUTOVR_REPORT_HPP
#define AUTOVR_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autovr/explorer.hpp"
#include "autovr/sinks.hpp"

// Run-level result document: per-scene coverage in the shape of a
// triggered-events table, dependency trees, unique/total flows by category,
// fault counts, and stage-attributed timing.

namespace autovr {

struct RunReport {
    std::string schema = "autovr-run/1";
    std::string tool; // "explorer" | "monkey"
    std::uint64_t seed = 0;
    std::uint64_t budget_ms = 0;
    bool budget_exhausted = false;

    std::vector<SceneCoverage> scenes; // exploration order
    std::vector<DependencyTree> trees; // explorer only

    std::vector<DataFlowRecord> unique_flows; // sorted by (data_type, host)
    std::uint64_t total_flow_observations = 0;
    std::map<std::string, std::uint64_t> unique_by_category;
    std::map<std::string, std::uint64_t> total_by_category;
    std::map<std::string, std::uint64_t> faults_by_code;

    StageTimes stages;
    std::uint64_t total_ms = 0;

    CostInputs cost_inputs; // explorer; zeros for the baseline
    std::uint64_t work_units = 0;
};

nlohmann::ordered_json report_to_json(const RunReport& report);

// "json" or "text"; anything else raises UnsupportedFormatError. Field order
// and whitespace are stable, so equal reports serialize byte-identically.
std::string emit_report(const RunReport& report, const std::string& format);

} // namespace autovr

#endif
