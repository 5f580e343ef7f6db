#include "autovr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "autovr/errors.hpp"

namespace autovr {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json coverage_to_json(const SceneCoverage& c) {
    ordered_json divs = ordered_json::array();
    for (const StateDivergenceReport& d : c.divergences) {
        divs.push_back({{"node", d.node_id},
                        {"expected_only", d.expected_only},
                        {"actual_only", d.actual_only}});
    }
    return ordered_json{{"scene", c.scene_index},
                        {"ui_invoked", c.ui_invoked},
                        {"ui_total", c.ui_total},
                        {"trigger_invoked", c.trigger_invoked},
                        {"trigger_total", c.trigger_total},
                        {"collision_invoked", c.collision_invoked},
                        {"collision_total", c.collision_total},
                        {"invocations", c.invocations},
                        {"physics_callback_calls", c.physics_callback_calls},
                        {"budget_exhausted", c.budget_exhausted},
                        {"invoked_ids", c.invoked_ids},
                        {"divergences", std::move(divs)}};
}

ordered_json tree_to_json(const DependencyTree& t) {
    ordered_json nodes = ordered_json::array();
    for (const DependencyNode& n : t.nodes) {
        nodes.push_back({{"id", n.id},
                         {"parent", n.parent},
                         {"status", to_string(n.status)},
                         {"children", n.children}});
    }
    return ordered_json{{"scene", t.scene_index}, {"nodes", std::move(nodes)}};
}

ordered_json flow_to_json(const DataFlowRecord& f) {
    return ordered_json{{"data_type", f.data_type},
                        {"host", f.host},
                        {"category", to_string(f.category)},
                        {"unknown_type", f.unknown_type},
                        {"payload_digest", f.payload_digest},
                        {"event_id", f.event_id},
                        {"timestamp_ms", f.timestamp_ms}};
}

} // namespace

ordered_json report_to_json(const RunReport& r) {
    ordered_json scenes = ordered_json::array();
    for (const SceneCoverage& c : r.scenes) scenes.push_back(coverage_to_json(c));
    ordered_json trees = ordered_json::array();
    for (const DependencyTree& t : r.trees) trees.push_back(tree_to_json(t));
    ordered_json flows = ordered_json::array();
    for (const DataFlowRecord& f : r.unique_flows) flows.push_back(flow_to_json(f));

    return ordered_json{
        {"schema", r.schema},
        {"tool", r.tool},
        {"seed", r.seed},
        {"budget_ms", r.budget_ms},
        {"budget_exhausted", r.budget_exhausted},
        {"scenes", std::move(scenes)},
        {"trees", std::move(trees)},
        {"flows",
         ordered_json{{"unique", std::move(flows)},
                      {"total_observations", r.total_flow_observations},
                      {"unique_by_category", r.unique_by_category},
                      {"total_by_category", r.total_by_category}}},
        {"faults", r.faults_by_code},
        {"stages", ordered_json{{"scene_loading", r.stages.scene_loading},
                                {"efc_identification", r.stages.efc_identification},
                                {"ui_execution", r.stages.ui_execution},
                                {"trigger_execution", r.stages.trigger_execution},
                                {"collision_execution", r.stages.collision_execution},
                                {"miscellaneous", r.stages.miscellaneous},
                                {"total", r.stages.total()}}},
        {"total_ms", r.total_ms},
        {"cost", ordered_json{{"work_units", r.work_units},
                              {"inputs", ordered_json{{"E", r.cost_inputs.E},
                                                      {"Pc", r.cost_inputs.Pc},
                                                      {"Pt", r.cost_inputs.Pt},
                                                      {"Ct", r.cost_inputs.Ct},
                                                      {"Cf", r.cost_inputs.Cf},
                                                      {"D", r.cost_inputs.D}}},
                              {"bound", predict_cost(r.cost_inputs)}}},
    };
}

namespace {

std::string render_text(const RunReport& r) {
    std::ostringstream out;
    out << "tool: " << r.tool << "  seed: " << r.seed << "  budget_ms: " << r.budget_ms;
    if (r.budget_exhausted) out << "  (budget exhausted)";
    out << "\n\n";

    // Per-scene coverage, one row per scene: invoked/total per event class.
    out << "scene |         ui |    trigger |  collision | invocations\n";
    out << "------+------------+------------+------------+------------\n";
    char row[128];
    for (const SceneCoverage& c : r.scenes) {
        char ui[24], tr[24], co[24];
        std::snprintf(ui, sizeof ui, "%llu/%llu",
                      static_cast<unsigned long long>(c.ui_invoked),
                      static_cast<unsigned long long>(c.ui_total));
        std::snprintf(tr, sizeof tr, "%llu/%llu",
                      static_cast<unsigned long long>(c.trigger_invoked),
                      static_cast<unsigned long long>(c.trigger_total));
        std::snprintf(co, sizeof co, "%llu/%llu",
                      static_cast<unsigned long long>(c.collision_invoked),
                      static_cast<unsigned long long>(c.collision_total));
        std::snprintf(row, sizeof row, "%5d | %10s | %10s | %10s | %11llu\n", c.scene_index,
                      ui, tr, co, static_cast<unsigned long long>(c.invocations));
        out << row;
    }

    out << "\nflows: " << r.unique_flows.size() << " unique, " << r.total_flow_observations
        << " observed\n";
    for (const auto& [cat, n] : r.unique_by_category)
        out << "  " << cat << ": " << n << " unique\n";
    for (const DataFlowRecord& f : r.unique_flows) {
        out << "  " << f.data_type << " -> " << f.host << " [" << to_string(f.category)
            << (f.unknown_type ? ", unknown label" : "") << "]\n";
    }

    if (!r.faults_by_code.empty()) {
        out << "\nfaults:\n";
        for (const auto& [code, n] : r.faults_by_code) out << "  " << code << ": " << n << "\n";
    }

    out << "\nstages (logical ms):\n";
    out << "  scene loading:      " << r.stages.scene_loading << "\n";
    out << "  efc identification: " << r.stages.efc_identification << "\n";
    out << "  ui execution:       " << r.stages.ui_execution << "\n";
    out << "  trigger execution:  " << r.stages.trigger_execution << "\n";
    out << "  collision execution:" << r.stages.collision_execution << "\n";
    out << "  miscellaneous:      " << r.stages.miscellaneous << "\n";
    out << "  total:              " << r.stages.total() << "\n";
    return std::move(out).str();
}

} // namespace

std::string emit_report(const RunReport& report, const std::string& format) {
    if (format == "json") return report_to_json(report).dump(2) + "\n";
    if (format == "text") return render_text(report);
    throw UnsupportedFormatError("report format '" + format + "' is not supported");
}

} // namespace autovr
