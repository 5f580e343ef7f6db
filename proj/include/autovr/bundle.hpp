#ifndef AUTOVR_BUNDLE_HPP
#define AUTOVR_BUNDLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autovr/errors.hpp"

// Authored definition of a simulated app: class table, scenes, effect
// scripts, timing. Loaded from a bundle directory holding app.json and
// metadata.avrm (schema in docs/bundle_format.md).

namespace autovr {

using json = nlohmann::json;

// The interface that marks a component class as UI-interactable.
inline constexpr const char* kEventSystemHandler = "IEventSystemHandler";
// Field type name recognized as a callback container (exact or "[]" suffixed).
inline constexpr const char* kUnityEventType = "UnityEvent";

struct FieldDef {
    std::string name;
    std::string type; // type name; "UnityEvent" marks a callback container
    bool is_static = false;
};

struct MethodDef {
    std::string name;
    std::uint64_t offset = 0;
    std::vector<std::string> params; // parameter type names
    bool reflection_only = false;
};

struct ClassDef {
    std::string name;
    std::string ns;     // namespace, "" for global
    std::string parent; // "" for root classes
    std::vector<std::string> interfaces;
    std::vector<FieldDef> fields;
    std::vector<MethodDef> methods;
    std::map<std::string, json> statics; // static field name -> value

    std::string qualified(const std::string& method) const {
        return (ns.empty() ? name : ns + "." + name) + "$$" + method;
    }
};

struct ColliderSpec {
    bool is_trigger = false;
    bool has_rigidbody = false;
    bool is_kinematic = false; // meaningful only when has_rigidbody
};

enum class ComponentKind { Ui, Collider, Script, Plain };

// One serialized callback reference inside a UnityEvent container.
struct CallbackRefDef {
    std::string target_path; // object the callback is bound against
    std::uint64_t offset = 0;
    std::vector<json> cached_args;
};

// Authoring-time container: only the persistent half is ever serialized;
// the runtime half is populated exclusively by AddListener effects.
struct UnityEventDef {
    std::vector<CallbackRefDef> persistent_calls;
};

struct ComponentDef {
    std::string class_name;
    ComponentKind kind = ComponentKind::Plain;
    std::optional<ColliderSpec> collider; // present iff kind == Collider
    std::map<std::string, UnityEventDef> events; // field name -> container
    std::map<std::string, json> fields;          // plain field overrides
};

struct GameObjectDef {
    std::string path; // '/'-separated, unique within the scene
    bool enabled = true;
    bool in_default_view = true; // consumed only by the monkey baseline
    std::vector<ComponentDef> components;

    std::string name() const {
        auto pos = path.rfind('/');
        return pos == std::string::npos ? path : path.substr(pos + 1);
    }
    std::string parent_path() const {
        auto pos = path.rfind('/');
        return pos == std::string::npos ? std::string() : path.substr(0, pos);
    }
};

struct SceneDef {
    int index = 0;
    std::vector<GameObjectDef> objects;
};

enum class EffectOp { Enable, Disable, LoadScene, EmitFlow, AddListener, Fault, Noop };

enum class FaultCode { Maperr, Accerr };

std::string to_string(FaultCode code);
FaultCode fault_code_from_string(const std::string& s);

struct Effect {
    EffectOp op = EffectOp::Noop;
    std::string path;       // Enable / Disable / AddListener target object
    std::string component;  // AddListener component class
    std::uint64_t offset = 0; // AddListener method
    int scene_index = 0;    // LoadScene
    std::string data_type;  // EmitFlow
    std::string host;       // EmitFlow
    std::string payload;    // EmitFlow
    FaultCode fault_code = FaultCode::Maperr; // Fault

    static Effect enable(std::string p);
    static Effect disable(std::string p);
    static Effect load_scene(int idx);
    static Effect emit_flow(std::string type, std::string host, std::string payload);
    static Effect add_listener(std::string p, std::string comp, std::uint64_t off);
    static Effect fault(FaultCode code);
    static Effect noop();
};

using EffectScript = std::vector<Effect>;

struct TimingConfig {
    std::uint64_t scene_load_wait_ms = 5000;
    std::uint64_t collision_delay_ms = 300;
    std::uint64_t fixed_update_ms = 20;
    std::uint64_t ui_event_delay_ms = 0;
    std::uint64_t budget_ms = 1200000; // 20 logical minutes
};

struct AppBundle {
    std::string metadata_path; // relative to the bundle dir, usually "metadata.avrm"
    std::vector<SceneDef> scenes;
    std::vector<ClassDef> classes;
    std::map<std::uint64_t, EffectScript> method_bodies;
    TimingConfig timing;

    const SceneDef* find_scene(int index) const;
    const ClassDef* find_class(const std::string& name) const;
};

// JSON (de)serialization of the app definition. Parse errors and schema
// violations surface as ValidationError with the offending path.
AppBundle bundle_from_json(const json& doc);
json bundle_to_json(const AppBundle& bundle);

// Reads <dir>/app.json. The metadata image is loaded separately via
// metadata_path so callers control the merge.
AppBundle load_bundle_dir(const std::string& dir);
void save_bundle_dir(const AppBundle& bundle, const std::vector<std::uint8_t>& metadata_bytes,
                     const std::string& dir);

} // namespace autovr

#endif
