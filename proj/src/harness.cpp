#include "autovr/harness.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <tuple>

#include "autovr/errors.hpp"
#include "autovr/introspect.hpp"

namespace autovr {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file", path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing", path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

LoadedApp load_app(const std::string& dir) {
    LoadedApp app;
    app.bundle = load_bundle_dir(dir);
    app.image = parse_metadata(read_file(dir + "/" + app.bundle.metadata_path));
    app.gft = build_gft(app.image, Introspector::dynamic_methods(app.bundle.classes));
    return app;
}

namespace {

void sort_flows(std::vector<DataFlowRecord>& flows) {
    std::sort(flows.begin(), flows.end(), [](const DataFlowRecord& a, const DataFlowRecord& b) {
        return std::tie(a.data_type, a.host) < std::tie(b.data_type, b.host);
    });
}

// Folds the sink, clock, and stage state of a finished run into the report.
void fill_run_tail(RunReport& report, const AppRuntime& rt) {
    report.unique_flows = rt.sink().unique();
    sort_flows(report.unique_flows);
    report.total_flow_observations = rt.sink().log().size();
    for (const auto& [cat, n] : rt.sink().unique_by_category())
        report.unique_by_category[to_string(cat)] = n;
    for (const auto& [cat, n] : rt.sink().total_by_category())
        report.total_by_category[to_string(cat)] = n;
    for (const auto& [code, n] : rt.sink().faults_by_code()) report.faults_by_code[code] = n;
    report.stages = rt.stage_times();
    report.total_ms = rt.clock_ms();
}

} // namespace

RunReport run_explore(AppBundle bundle, GlobalFunctionTable gft, std::uint64_t seed,
                      std::optional<std::uint64_t> budget_ms) {
    if (budget_ms) bundle.timing.budget_ms = *budget_ms;

    std::vector<int> definition_order;
    for (const SceneDef& s : bundle.scenes) definition_order.push_back(s.index);
    std::sort(definition_order.begin(), definition_order.end());

    AppRuntime rt(std::move(bundle), std::move(gft));
    const std::uint64_t budget = rt.timing().budget_ms;

    RunReport report;
    report.tool = "explorer";
    report.seed = seed;
    report.budget_ms = budget;

    std::vector<int> queue{0};
    std::set<int> scheduled{0};
    std::size_t next = 0;
    bool first = true;

    while (!report.budget_exhausted) {
        if (next == queue.size()) {
            // Transitions drained: pull the lowest unexplored definition scene.
            int pick = -1;
            for (const int idx : definition_order)
                if (!scheduled.count(idx)) {
                    pick = idx;
                    break;
                }
            if (pick < 0) break;
            scheduled.insert(pick);
            queue.push_back(pick);
        }
        const int idx = queue[next++];

        ExploreOptions opts;
        opts.seed = seed;
        opts.budget_ms = budget;
        opts.assume_positioned = first && rt.current_scene() == idx;
        first = false;

        ExploreSceneResult r = explore_scene(rt, idx, opts);
        for (const int dest : r.discovered_scenes)
            if (scheduled.insert(dest).second) queue.push_back(dest);

        report.budget_exhausted |= r.coverage.budget_exhausted;
        report.work_units += r.work_units;
        report.cost_inputs.E += r.inputs.E;
        report.cost_inputs.Pc += r.inputs.Pc;
        report.cost_inputs.Pt += r.inputs.Pt;
        report.cost_inputs.D += r.inputs.D;
        report.cost_inputs.Ct = r.inputs.Ct; // table-wide, not per scene
        report.cost_inputs.Cf = r.inputs.Cf;
        report.scenes.push_back(std::move(r.coverage));
        report.trees.push_back(std::move(r.tree));
    }

    fill_run_tail(report, rt);
    return report;
}

RunReport run_explore(const std::string& bundle_dir, std::uint64_t seed,
                      std::optional<std::uint64_t> budget_ms) {
    LoadedApp app = load_app(bundle_dir);
    return run_explore(std::move(app.bundle), std::move(app.gft), seed, budget_ms);
}

RunReport run_monkey(AppBundle bundle, GlobalFunctionTable gft, std::uint64_t seed,
                     std::optional<std::uint64_t> budget_ms) {
    if (budget_ms) bundle.timing.budget_ms = *budget_ms;
    AppRuntime rt(std::move(bundle), std::move(gft));
    const Introspector in(rt);
    std::mt19937_64 rng(seed);
    const std::uint64_t budget = rt.timing().budget_ms;

    RunReport report;
    report.tool = "monkey";
    report.seed = seed;
    report.budget_ms = budget;

    // Coverage rows keyed by scene; the monkey only changes scene when an
    // invoked event loads one.
    std::map<int, SceneCoverage> coverage;
    std::map<int, std::set<std::string>> invoked;
    std::map<int, std::set<std::string>> seen_ui;

    while (true) {
        if (rt.clock_ms() >= budget) {
            report.budget_exhausted = true;
            break;
        }
        rt.advance_clock(rt.timing().fixed_update_ms, Stage::Miscellaneous);

        const int scene = rt.current_scene();
        SceneCoverage& cov = coverage[scene];
        cov.scene_index = scene;

        // Candidates: enabled UI events on owners inside the default view.
        std::map<std::string, bool> in_view;
        for (const ObjectHandle& h : in.snapshot_objects())
            in_view[h.path] = in.read_field(h, "in_default_view").as_scalar().get<bool>();

        EventSet set = discover_events(rt);
        std::vector<const EventCallback*> candidates;
        for (const auto& [id, ev] : set.events) {
            const auto* cb = std::get_if<EventCallback>(&ev);
            if (!cb) continue;
            seen_ui[scene].insert(id);
            if (!cb->enabled) continue;
            const auto it = in_view.find(cb->owner_path);
            if (it == in_view.end() || !it->second) continue;
            candidates.push_back(cb);
        }
        if (candidates.empty()) break;

        const EventCallback* pick =
            candidates[static_cast<std::size_t>(bounded(rng, candidates.size()))];
        rt.invoke_method(pick->offset, synthesize_args(in, pick->signature), InvocationKind::Ui,
                         pick->id);
        cov.invocations += 1;
        invoked[scene].insert(pick->id);
    }

    for (auto& [scene, cov] : coverage) {
        cov.ui_total = seen_ui[scene].size();
        cov.ui_invoked = invoked[scene].size();
        for (const std::string& id : invoked[scene]) cov.invoked_ids.push_back(id);
        report.scenes.push_back(std::move(cov));
    }
    fill_run_tail(report, rt);
    return report;
}

RunReport run_monkey(const std::string& bundle_dir, std::uint64_t seed,
                     std::optional<std::uint64_t> budget_ms) {
    LoadedApp app = load_app(bundle_dir);
    return run_monkey(std::move(app.bundle), std::move(app.gft), seed, budget_ms);
}

} // namespace autovr
