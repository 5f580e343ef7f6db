#ifndef AUTOVR_EXPLORER_HPP
#define AUTOVR_EXPLORER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "autovr/physics.hpp"
#include "autovr/uimodel.hpp"

// Context-aware event exploration: discover the scene's event set, execute
// events depth-first, diff the enabled set to find dependencies, and restore
// state via scene reload plus prefix replay or parent re-invocation.

namespace autovr {

// One invokable thing at a tree position.
using DiscoveredEvent = std::variant<EventCallback, PhysicsEvent>;

const std::string& event_id(const DiscoveredEvent& e);
bool event_enabled(const DiscoveredEvent& e);
bool is_ui_event(const DiscoveredEvent& e);

// Snapshot of every recognizable event in the loaded scene. Ids are derived
// from owner path + offset + source, so they are stable across reloads.
// Events on disabled owners are present with enabled=false.
struct EventSet {
    int scene_index = 0;
    std::uint64_t epoch = 0;
    std::map<std::string, DiscoveredEvent> events;

    std::set<std::string> enabled_ids() const;
};

EventSet discover_events(const AppRuntime& rt);

enum class NodeStatus { Unexplored, Explored, Unreachable };

std::string to_string(NodeStatus s);

// Node of the per-scene dependency tree. The root is the synthetic
// scene-load event "scene:<index>"; every other node is an event first seen
// enabled at its parent's position (first discovery wins).
struct DependencyNode {
    std::string id;
    int parent = -1; // index into DependencyTree::nodes, -1 for the root
    std::vector<std::string> children;
    NodeStatus status = NodeStatus::Unexplored;
    // Enabled event ids recorded when this position was first reached; the
    // target of every restore back to this position.
    std::set<std::string> recorded_enabled;
};

struct DependencyTree {
    int scene_index = 0;
    std::vector<DependencyNode> nodes; // nodes[0] is the root

    int find(const std::string& id) const; // -1 when absent
    std::size_t depth(int node) const;     // root = 0
};

// A restore landed on a different enabled set than the one recorded at the
// tree position. Exploration continues with the actual set (re-discovery).
struct StateDivergenceReport {
    int scene_index = 0;
    std::string node_id;
    std::vector<std::string> expected_only; // recorded but not live, sorted
    std::vector<std::string> actual_only;   // live but not recorded, sorted
};

// Inputs of the unit-work bound E*(Pc+Pt+Ct+Cf)+D.
struct CostInputs {
    std::uint64_t E = 0;  // events (tree nodes, synthetic roots included)
    std::uint64_t Pc = 0; // collisionables seen
    std::uint64_t Pt = 0; // triggerables seen
    std::uint64_t Ct = 0; // class types
    std::uint64_t Cf = 0; // fields per class type, summed
    std::uint64_t D = 0;  // dependencies (nodes at depth >= 2)
};

std::uint64_t predict_cost(const CostInputs& inputs);

// Per-scene coverage, in the shape of a row of the triggered-events table.
struct SceneCoverage {
    int scene_index = 0;
    std::uint64_t ui_total = 0; // unique ids seen, disabled included
    std::uint64_t ui_invoked = 0;
    std::uint64_t trigger_total = 0;
    std::uint64_t trigger_invoked = 0;
    std::uint64_t collision_total = 0;
    std::uint64_t collision_invoked = 0;
    std::uint64_t invocations = 0;           // replays included
    std::uint64_t physics_callback_calls = 0; // Enter+Stay+Exit count
    bool budget_exhausted = false;
    std::vector<std::string> invoked_ids; // unique, sorted
    std::vector<StateDivergenceReport> divergences;
};

struct ExploreSceneResult {
    DependencyTree tree;
    SceneCoverage coverage;
    std::vector<int> discovered_scenes; // transition targets, in first-hit order
    // Unit-work accounting for the cost bound: units charges discovery scans
    // on first invocations only; inputs are the measured bound parameters.
    std::uint64_t work_units = 0;
    CostInputs inputs;
};

struct ExploreOptions {
    std::uint64_t seed = 0;
    std::uint64_t budget_ms = 1'200'000;
    // When true the runtime is already positioned at the scene with no
    // interactions performed, so the initial load is skipped.
    bool assume_positioned = false;
};

// Depth-first exploration of one scene until every path yields no new
// events or the budget expires (partial result flagged, never thrown).
ExploreSceneResult explore_scene(AppRuntime& rt, int scene_index, const ExploreOptions& opts);

// Deterministic seeded choice helper shared by the explorer and baselines.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

// First type-compatible active object per parameter, or a documented default
// literal (0, 0.0, false, "") for value types; null when nothing matches.
std::vector<ArgumentValue> synthesize_args(const Introspector& in,
                                           const std::vector<std::string>& params);

} // namespace autovr

#endif
