#include "autovr/runtime.hpp"

#include <algorithm>
#include <set>

namespace autovr {

void StageTimes::add(Stage stage, std::uint64_t ms) {
    switch (stage) {
        case Stage::SceneLoading: scene_loading += ms; break;
        case Stage::EfcIdentification: efc_identification += ms; break;
        case Stage::UiExecution: ui_execution += ms; break;
        case Stage::TriggerExecution: trigger_execution += ms; break;
        case Stage::CollisionExecution: collision_execution += ms; break;
        case Stage::Miscellaneous: miscellaneous += ms; break;
    }
}

namespace {

bool is_physics_callback_name(const std::string& name) {
    return name == "OnTriggerEnter" || name == "OnTriggerStay" || name == "OnTriggerExit" ||
           name == "OnCollisionEnter" || name == "OnCollisionStay" || name == "OnCollisionExit";
}

bool is_event_container_type(const std::string& type) {
    if (type == kUnityEventType) return true;
    // Array-of-events or authored derived container types.
    if (type.size() > 2 && type.compare(type.size() - 2, 2, "[]") == 0)
        return is_event_container_type(type.substr(0, type.size() - 2));
    return false;
}

// Field is a callback container if declared as UnityEvent or any class
// deriving from it.
bool is_event_field(const ClassTable& classes, const std::string& type) {
    if (is_event_container_type(type)) return true;
    if (!classes.has(type)) return false;
    const auto chain = classes.ancestry(type);
    return std::find(chain.begin(), chain.end(), kUnityEventType) != chain.end();
}

} // namespace

void validate_bundle(const AppBundle& bundle, const GlobalFunctionTable& gft) {
    ClassTable classes(bundle.classes);

    if (bundle.scenes.empty())
        throw ValidationError("bundle has no scenes", "scenes");
    for (std::size_t i = 0; i < bundle.scenes.size(); ++i)
        if (bundle.scenes[i].index != int(i))
            throw ValidationError("scene indices must be dense from 0, got " +
                                      std::to_string(bundle.scenes[i].index),
                                  "scenes[" + std::to_string(i) + "]");

    for (const auto& [off, script] : bundle.method_bodies)
        if (!gft.lookup(off))
            throw ValidationError("effect script offset " + std::to_string(off) +
                                      " missing from the function table",
                                  "method_bodies/" + std::to_string(off));

    for (const SceneDef& scene : bundle.scenes) {
        const std::string sat = "scenes[" + std::to_string(scene.index) + "]";
        std::set<std::string> paths;
        for (const GameObjectDef& o : scene.objects)
            if (!paths.insert(o.path).second)
                throw ValidationError("duplicate object path '" + o.path + "'", sat);

        // Offsets this scene can reach, seeded below and closed over
        // AddListener references.
        std::set<std::uint64_t> referenced;

        for (std::size_t oi = 0; oi < scene.objects.size(); ++oi) {
            const GameObjectDef& o = scene.objects[oi];
            const std::string oat = sat + ".objects[" + std::to_string(oi) + "] '" + o.path + "'";
            if (!o.parent_path().empty() && !paths.count(o.parent_path()))
                throw ValidationError("parent object '" + o.parent_path() + "' not in scene", oat);

            for (std::size_t ci = 0; ci < o.components.size(); ++ci) {
                const ComponentDef& comp = o.components[ci];
                const std::string cat = oat + ".components[" + std::to_string(ci) + "]";
                if (!classes.has(comp.class_name))
                    throw ValidationError("class '" + comp.class_name + "' not in class table", cat);
                if ((comp.kind == ComponentKind::Collider) != comp.collider.has_value())
                    throw ValidationError("collider spec present iff kind is collider", cat);
                if (comp.collider && comp.collider->is_kinematic && !comp.collider->has_rigidbody)
                    throw ValidationError("kinematic collider requires a rigidbody", cat);
                if (comp.kind == ComponentKind::Ui && !is_ui_class(classes, comp.class_name))
                    throw ValidationError("class '" + comp.class_name +
                                              "' does not reach " + kEventSystemHandler,
                                          cat);

                for (const auto& [field_name, ev] : comp.events) {
                    bool declared = false;
                    for (const InheritedField& f : classes.all_fields(comp.class_name))
                        if (f.field.name == field_name && is_event_field(classes, f.field.type))
                            declared = true;
                    if (!declared)
                        throw ValidationError("event field '" + field_name +
                                                  "' not declared as a callback container on '" +
                                                  comp.class_name + "'",
                                              cat);
                    for (const CallbackRefDef& ref : ev.persistent_calls) {
                        if (!bundle.method_bodies.count(ref.offset))
                            throw ValidationError("callback offset " + std::to_string(ref.offset) +
                                                      " has no effect script",
                                                  cat + ".events." + field_name);
                        if (!gft.lookup(ref.offset))
                            throw ValidationError("callback offset " + std::to_string(ref.offset) +
                                                      " missing from the function table",
                                                  cat + ".events." + field_name);
                        referenced.insert(ref.offset);
                    }
                }

                // Lifecycle and physics callbacks this component brings in.
                if (auto m = classes.find_method(comp.class_name, "Start"))
                    referenced.insert(m->offset);
                for (const InheritedMethod& m : classes.all_methods(comp.class_name, false))
                    if (is_physics_callback_name(m.method.name)) referenced.insert(m.method.offset);
            }
        }

        // Close over AddListener targets, then check every reachable script
        // against this scene's object set.
        std::vector<std::uint64_t> work(referenced.begin(), referenced.end());
        while (!work.empty()) {
            std::uint64_t off = work.back();
            work.pop_back();
            auto it = bundle.method_bodies.find(off);
            if (it == bundle.method_bodies.end()) continue;
            for (const Effect& e : it->second)
                if (e.op == EffectOp::AddListener && referenced.insert(e.offset).second)
                    work.push_back(e.offset);
        }

        for (std::uint64_t off : referenced) {
            auto it = bundle.method_bodies.find(off);
            if (it == bundle.method_bodies.end()) continue;
            const std::string bat = sat + " script " + std::to_string(off);
            for (const Effect& e : it->second) {
                switch (e.op) {
                    case EffectOp::Enable:
                    case EffectOp::Disable:
                        if (!paths.count(e.path))
                            throw ValidationError("effect path '" + e.path +
                                                      "' does not resolve in the scene",
                                                  bat);
                        break;
                    case EffectOp::AddListener: {
                        if (!paths.count(e.path))
                            throw ValidationError("listener path '" + e.path +
                                                      "' does not resolve in the scene",
                                                  bat);
                        if (!gft.lookup(e.offset))
                            throw ValidationError("listener offset " + std::to_string(e.offset) +
                                                      " missing from the function table",
                                                  bat);
                        break;
                    }
                    case EffectOp::LoadScene:
                        if (!bundle.find_scene(e.scene_index))
                            throw ValidationError("load_scene target " +
                                                      std::to_string(e.scene_index) +
                                                      " is not a scene",
                                                  bat);
                        break;
                    default: break;
                }
            }
        }
    }
}

AppRuntime::AppRuntime(AppBundle bundle, GlobalFunctionTable gft)
    : bundle_(std::move(bundle)), gft_(std::move(gft)), classes_(bundle_.classes) {
    validate_bundle(bundle_, gft_);
    // Position at scene 0 without charging load time: the clock starts at 0.
    scene_index_ = 0;
    reset_scene_state(bundle_.scenes.front());
    run_start_hooks();
}

void AppRuntime::load_scene(int index) {
    const SceneDef* scene = bundle_.find_scene(index);
    if (!scene) throw UnknownSceneError("no scene with index " + std::to_string(index), index);
    scene_index_ = index;
    reset_scene_state(*scene);
    advance_clock(bundle_.timing.scene_load_wait_ms, Stage::SceneLoading);
    run_start_hooks();
}

void AppRuntime::reset_scene_state(const SceneDef& scene) {
    scene_ = &scene;
    objects_.clear();
    parents_.clear();
    enabled_.clear();
    by_path_.clear();
    runtime_calls_.clear();
    ++epoch_;

    for (const GameObjectDef& o : scene.objects) {
        by_path_.emplace(o.path, int(objects_.size()));
        objects_.push_back(&o);
        enabled_.push_back(o.enabled);
    }
    for (const GameObjectDef* o : objects_) {
        const std::string parent = o->parent_path();
        parents_.push_back(parent.empty() ? -1 : by_path_.at(parent));
    }
}

void AppRuntime::run_start_hooks() {
    loading_ = true;
    const std::string attribution = "scene:" + std::to_string(scene_index_);
    // Definition order over enabled objects; hooks are free on the clock.
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (!object_active(int(i))) continue;
        for (const ComponentDef& comp : objects_[i]->components) {
            auto m = classes_.find_method(comp.class_name, "Start");
            if (m && m->params.empty())
                invoke_method(m->offset, {}, InvocationKind::Lifecycle, attribution);
        }
    }
    loading_ = false;
}

void AppRuntime::advance_clock(std::uint64_t ms, Stage stage) {
    clock_ms_ += ms;
    stages_.add(stage, ms);
}

InvocationOutcome AppRuntime::invoke_method(std::uint64_t offset,
                                            const std::vector<ArgumentValue>& args,
                                            InvocationKind kind, const std::string& attribution) {
    const MethodEntry* entry = gft_.lookup(offset);
    if (!entry)
        throw UnknownOffsetError("no method at offset " + std::to_string(offset), offset);
    if (args.size() != entry->params.size())
        throw ArityMismatchError("'" + entry->qualified_name + "' expects " +
                                     std::to_string(entry->params.size()) + " arguments, got " +
                                     std::to_string(args.size()),
                                 entry->params.size(), args.size());

    InvocationOutcome out;
    const std::uint64_t before = clock_ms_;
    if (kind == InvocationKind::Ui)
        advance_clock(bundle_.timing.ui_event_delay_ms, Stage::UiExecution);

    auto it = bundle_.method_bodies.find(offset);
    if (it != bundle_.method_bodies.end()) apply_effects(it->second, out, attribution);

    out.clock_advance_ms = clock_ms_ - before;
    return out;
}

void AppRuntime::apply_effects(const EffectScript& script, InvocationOutcome& out,
                               const std::string& attribution) {
    for (const Effect& e : script) {
        switch (e.op) {
            case EffectOp::Enable:
            case EffectOp::Disable: {
                // Paths not live in the current scene are skipped: the effect
                // targets an object reference that no longer exists.
                auto idx = find_object(e.path);
                if (!idx) break;
                bool want = e.op == EffectOp::Enable;
                if (enabled_[*idx] != want) {
                    enabled_[*idx] = want;
                    (want ? out.enabled : out.disabled).push_back(e.path);
                }
                break;
            }
            case EffectOp::LoadScene: {
                out.scene_transitions.push_back(e.scene_index);
                if (!loading_) load_scene(e.scene_index);
                break;
            }
            case EffectOp::EmitFlow: {
                out.flows.push_back({e.data_type, e.host, e.payload});
                sink_.record_flow(e.data_type, e.host, e.payload, attribution, clock_ms_);
                break;
            }
            case EffectOp::AddListener: {
                auto idx = find_object(e.path);
                if (!idx) break;
                const GameObjectDef& o = *objects_[*idx];
                for (std::size_t ci = 0; ci < o.components.size(); ++ci) {
                    if (o.components[ci].class_name != e.component) continue;
                    // First declared callback container receives the call.
                    for (const InheritedField& f : classes_.all_fields(e.component)) {
                        if (!is_event_field(classes_, f.field.type)) continue;
                        CallbackRefDef ref;
                        ref.target_path = e.path;
                        ref.offset = e.offset;
                        runtime_calls_[{*idx, int(ci), f.field.name}].push_back(std::move(ref));
                        break;
                    }
                    break;
                }
                break;
            }
            case EffectOp::Fault: {
                out.faults.push_back(e.fault_code);
                sink_.record_fault(e.fault_code, attribution, scene_index_);
                return; // crash-like: the rest of the script never runs
            }
            case EffectOp::Noop: break;
        }
    }
}

std::vector<ObjectHandle> AppRuntime::snapshot_objects() const {
    std::vector<ObjectHandle> out;
    out.reserve(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i)
        out.push_back({epoch_, int(i), -1, objects_[i]->path});
    return out;
}

std::optional<int> AppRuntime::find_object(const std::string& path) const {
    auto it = by_path_.find(path);
    if (it == by_path_.end()) return std::nullopt;
    return it->second;
}

const GameObjectDef& AppRuntime::object_def(int index) const { return *objects_.at(index); }

int AppRuntime::object_parent(int index) const { return parents_.at(index); }

bool AppRuntime::object_enabled(int index) const { return enabled_.at(index); }

bool AppRuntime::object_active(int index) const {
    int cur = index;
    while (cur >= 0) {
        if (!enabled_.at(cur)) return false;
        cur = parents_.at(cur);
    }
    return true;
}

const std::vector<CallbackRefDef>& AppRuntime::runtime_calls(int object, int component,
                                                             const std::string& field) const {
    auto it = runtime_calls_.find({object, component, field});
    return it == runtime_calls_.end() ? no_calls_ : it->second;
}

std::optional<json> AppRuntime::static_value(const std::string& cls,
                                             const std::string& field) const {
    for (const std::string& c : classes_.ancestry(cls)) {
        const ClassDef& def = classes_.get(c);
        auto it = def.statics.find(field);
        if (it != def.statics.end()) return it->second;
    }
    return std::nullopt;
}

} // namespace autovr
