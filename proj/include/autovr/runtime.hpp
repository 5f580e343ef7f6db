#ifndef AUTOVR_RUNTIME_HPP
#define AUTOVR_RUNTIME_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "autovr/bundle.hpp"
#include "autovr/class_table.hpp"
#include "autovr/metadata.hpp"
#include "autovr/sinks.hpp"

// Deterministic simulated app runtime. Time is a logical clock advanced in
// documented increments and attributed to pipeline stages; no wall-clock
// waits anywhere.

namespace autovr {

enum class Stage {
    SceneLoading,
    EfcIdentification,
    UiExecution,
    TriggerExecution,
    CollisionExecution,
    Miscellaneous,
};

struct StageTimes {
    std::uint64_t scene_loading = 0;
    std::uint64_t efc_identification = 0;
    std::uint64_t ui_execution = 0;
    std::uint64_t trigger_execution = 0;
    std::uint64_t collision_execution = 0;
    std::uint64_t miscellaneous = 0;

    std::uint64_t total() const {
        return scene_loading + efc_identification + ui_execution + trigger_execution +
               collision_execution + miscellaneous;
    }
    void add(Stage stage, std::uint64_t ms);
};

// How an invocation is paced and attributed. Ui charges the configured
// per-event delay to ui_execution (replays included); PhysicsCallback is free
// because the owning episode already paid collision_delay_ms; Lifecycle hooks
// (Start) are free.
enum class InvocationKind { Ui, PhysicsCallback, Lifecycle };

struct FlowEvent {
    std::string data_type;
    std::string host;
    std::string payload;
};

// Observable result of one method invocation. enabled/disabled list objects
// whose own active flag changed (hierarchy effects follow from ancestry).
struct InvocationOutcome {
    std::vector<std::string> enabled;
    std::vector<std::string> disabled;
    std::vector<FlowEvent> flows;
    std::vector<FaultCode> faults;
    std::vector<int> scene_transitions;
    std::uint64_t clock_advance_ms = 0;
};

struct ObjectRef {
    std::string path;
};

using ArgumentValue =
    std::variant<std::monostate, bool, std::int64_t, double, std::string, ObjectRef>;

// Reference into the live scene, valid for one scene epoch. component < 0
// addresses the game object itself.
struct ObjectHandle {
    std::uint64_t epoch = 0;
    int object = -1;
    int component = -1;
    std::string path;

    bool is_component() const { return component >= 0; }
    friend bool operator==(const ObjectHandle& a, const ObjectHandle& b) {
        return a.epoch == b.epoch && a.object == b.object && a.component == b.component;
    }
};

class AppRuntime {
public:
    // Validates the whole bundle (ValidationError names the first violation),
    // then positions at scene 0 with the clock at zero. Lifecycle Start hooks
    // of scene 0 run during positioning, so startup-emitted flows are visible
    // before any interaction.
    AppRuntime(AppBundle bundle, GlobalFunctionTable gft);

    // Resets the scene to its authored initial state regardless of prior
    // mutations, advances the clock by scene_load_wait_ms (scene_loading),
    // bumps the epoch, and re-runs Start hooks. Throws UnknownSceneError.
    void load_scene(int index);

    // Applies the method's effect script in order. Throws UnknownOffsetError /
    // ArityMismatchError; Fault effects are recorded (not thrown) and abort
    // the remainder of the script. `attribution` tags emitted flows and
    // faults with the triggering event id.
    InvocationOutcome invoke_method(std::uint64_t offset, const std::vector<ArgumentValue>& args,
                                    InvocationKind kind = InvocationKind::Ui,
                                    const std::string& attribution = "");

    // Handles for all live objects, enabled and disabled, in definition
    // order. Stable within one scene epoch.
    std::vector<ObjectHandle> snapshot_objects() const;

    int current_scene() const { return scene_index_; }
    std::uint64_t epoch() const { return epoch_; }
    std::uint64_t clock_ms() const { return clock_ms_; }
    const StageTimes& stage_times() const { return stages_; }
    void advance_clock(std::uint64_t ms, Stage stage);

    FlowSink& sink() { return sink_; }
    const FlowSink& sink() const { return sink_; }
    void set_categories(CategoryTable t) { sink_ = FlowSink(std::move(t)); }

    const AppBundle& app_bundle() const { return bundle_; }
    const GlobalFunctionTable& function_table() const { return gft_; }
    const ClassTable& class_table() const { return classes_; }
    const TimingConfig& timing() const { return bundle_.timing; }

    // ---- live-state reads backing the introspection facade ----
    std::optional<int> find_object(const std::string& path) const;
    std::size_t object_count() const { return objects_.size(); }
    const GameObjectDef& object_def(int index) const;
    int object_parent(int index) const;
    bool object_enabled(int index) const;       // own flag
    bool object_active(int index) const;        // own flag AND all ancestors
    const std::vector<CallbackRefDef>& runtime_calls(int object, int component,
                                                     const std::string& field) const;
    std::optional<json> static_value(const std::string& cls, const std::string& field) const;

private:
    void reset_scene_state(const SceneDef& scene);
    void run_start_hooks();
    void apply_effects(const EffectScript& script, InvocationOutcome& out,
                       const std::string& attribution);

    AppBundle bundle_;
    GlobalFunctionTable gft_;
    ClassTable classes_;
    FlowSink sink_;

    int scene_index_ = 0;
    std::uint64_t epoch_ = 0;
    std::uint64_t clock_ms_ = 0;
    StageTimes stages_;
    bool loading_ = false; // guards reentrant LoadScene from lifecycle hooks

    const SceneDef* scene_ = nullptr;
    std::vector<const GameObjectDef*> objects_; // definition order
    std::vector<int> parents_;                  // object index -> parent index or -1
    std::vector<bool> enabled_;
    std::map<std::string, int> by_path_;
    std::map<std::tuple<int, int, std::string>, std::vector<CallbackRefDef>> runtime_calls_;
    std::vector<CallbackRefDef> no_calls_;
};

// Bundle-wide structural validation, also usable without a runtime (the
// corpus generator self-checks its output). Throws ValidationError.
void validate_bundle(const AppBundle& bundle, const GlobalFunctionTable& gft);

} // namespace autovr

#endif
