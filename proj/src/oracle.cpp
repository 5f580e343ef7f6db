#include "autovr/oracle.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "autovr/class_table.hpp"
#include "autovr/physics.hpp"
#include "autovr/uimodel.hpp"

namespace autovr {

namespace {

using State = std::vector<char>; // own enabled flag per object, def order

struct UiEventRef {
    int object = 0;
    std::string component_class;
    std::uint64_t offset = 0;
    CallbackSource source = CallbackSource::Persistent;
};

struct PhysicsEventRef {
    int object = 0;
    PhysicsKind kind = PhysicsKind::Trigger;
    ColliderKind collider = ColliderKind::Static;
    std::vector<std::uint64_t> callbacks; // enter/stay/exit offsets, in order
};

// Static shape of one scene: object graph, collider specs, and the event
// inventory whose availability the BFS evaluates per state.
struct SceneModel {
    const SceneDef* scene = nullptr;
    const AppBundle* bundle = nullptr;
    const ClassTable* table = nullptr;
    std::map<std::string, int> by_path;
    std::vector<int> parent;
    std::vector<std::optional<ColliderSpec>> collider;
    std::vector<UiEventRef> ui_events;
    std::vector<PhysicsEventRef> physics_events;

    bool active(const State& st, int idx) const {
        for (int n = idx; n >= 0; n = parent[static_cast<std::size_t>(n)])
            if (!st[static_cast<std::size_t>(n)]) return false;
        return true;
    }
};

std::optional<ColliderSpec> first_collider(const GameObjectDef& obj) {
    for (const ComponentDef& c : obj.components)
        if (c.collider) return c.collider;
    return std::nullopt;
}

// First component (definition order) implementing the named parameterless
// callback; within a class hierarchy the derived-most declaration wins.
std::optional<std::uint64_t> callback_offset(const ClassTable& table, const GameObjectDef& obj,
                                             const std::string& name) {
    for (const ComponentDef& c : obj.components)
        if (std::optional<MethodDef> m = table.find_method(c.class_name, name))
            return m->offset;
    return std::nullopt;
}

SceneModel build_model(const AppBundle& bundle, const ClassTable& table, const SceneDef& scene) {
    SceneModel m;
    m.scene = &scene;
    m.bundle = &bundle;
    m.table = &table;
    m.parent.resize(scene.objects.size(), -1);
    m.collider.resize(scene.objects.size());

    for (std::size_t i = 0; i < scene.objects.size(); ++i)
        m.by_path.emplace(scene.objects[i].path, static_cast<int>(i));
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const std::string parent_path = scene.objects[i].parent_path();
        if (!parent_path.empty()) {
            const auto it = m.by_path.find(parent_path);
            if (it != m.by_path.end()) m.parent[i] = it->second;
        }
        m.collider[i] = first_collider(scene.objects[i]);
    }

    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const GameObjectDef& obj = scene.objects[i];
        // UI inventory: persistent calls authored on event containers of
        // interactable components.
        for (const ComponentDef& comp : obj.components) {
            if (!table.has(comp.class_name) ||
                !table.implements(comp.class_name, kEventSystemHandler))
                continue;
            for (const auto& [field, container] : comp.events) {
                for (const CallbackRefDef& call : container.persistent_calls) {
                    UiEventRef ref;
                    ref.object = static_cast<int>(i);
                    ref.component_class = comp.class_name;
                    ref.offset = call.offset;
                    ref.source = CallbackSource::Persistent;
                    m.ui_events.push_back(std::move(ref));
                }
            }
        }
        // Physics inventory: trigger when is_trigger plus an OnTrigger*
        // callback, collision when rigidbody, not trigger, plus an
        // OnCollision* callback.
        if (!m.collider[i]) continue;
        const ColliderSpec& spec = *m.collider[i];
        const char* names_trigger[] = {"OnTriggerEnter", "OnTriggerStay", "OnTriggerExit"};
        const char* names_collision[] = {"OnCollisionEnter", "OnCollisionStay",
                                         "OnCollisionExit"};
        PhysicsEventRef ref;
        ref.object = static_cast<int>(i);
        ref.collider = collider_kind(spec);
        const char* const* names = nullptr;
        if (spec.is_trigger) {
            ref.kind = PhysicsKind::Trigger;
            names = names_trigger;
        } else if (spec.has_rigidbody) {
            ref.kind = PhysicsKind::Collision;
            names = names_collision;
        } else {
            continue;
        }
        for (int k = 0; k < 3; ++k)
            if (std::optional<std::uint64_t> off = callback_offset(table, obj, names[k]))
                ref.callbacks.push_back(*off);
        if (!ref.callbacks.empty()) m.physics_events.push_back(std::move(ref));
    }
    return m;
}

// Applies one effect script to the working state. Flows land in `out`;
// listener registrations land in `added` when the caller passes one (the
// startup simulation). A scene load or a fault ends the script.
void apply_script(const SceneModel& m, std::uint64_t offset, State& st, OracleResult& out,
                  std::vector<UiEventRef>* added) {
    const auto body = m.bundle->method_bodies.find(offset);
    if (body == m.bundle->method_bodies.end()) return;
    for (const Effect& e : body->second) {
        switch (e.op) {
        case EffectOp::Enable:
        case EffectOp::Disable: {
            const auto it = m.by_path.find(e.path);
            if (it != m.by_path.end())
                st[static_cast<std::size_t>(it->second)] = (e.op == EffectOp::Enable) ? 1 : 0;
            break;
        }
        case EffectOp::EmitFlow:
            out.flows.emplace(e.data_type, e.host);
            break;
        case EffectOp::AddListener: {
            if (!added) break; // registration outside startup is out of scope
            const auto it = m.by_path.find(e.path);
            if (it == m.by_path.end()) break;
            UiEventRef ref;
            ref.object = it->second;
            ref.component_class = e.component;
            ref.offset = e.offset;
            ref.source = CallbackSource::Runtime;
            added->push_back(std::move(ref));
            break;
        }
        case EffectOp::LoadScene:
            return; // the destination scene is enumerated from its own start
        case EffectOp::Fault:
            return; // faults abort the remainder of the script
        case EffectOp::Noop:
            break;
        }
    }
}

// Parameterless Start hooks run on effectively-active objects in definition
// order at every scene load; they may emit flows and register listeners.
State run_startup(const SceneModel& m, OracleResult& out, std::vector<UiEventRef>& added) {
    State st(m.scene->objects.size());
    for (std::size_t i = 0; i < st.size(); ++i) st[i] = m.scene->objects[i].enabled ? 1 : 0;
    for (std::size_t i = 0; i < m.scene->objects.size(); ++i) {
        if (!m.active(st, static_cast<int>(i))) continue;
        for (const ComponentDef& comp : m.scene->objects[i].components) {
            const std::optional<MethodDef> start = m.table->find_method(comp.class_name, "Start");
            if (!start || !start->params.empty()) continue;
            apply_script(m, start->offset, st, out, &added);
        }
    }
    return st;
}

bool physics_available(const SceneModel& m, const PhysicsEventRef& ev, const State& st) {
    if (!m.active(st, ev.object)) return false;
    for (std::size_t i = 0; i < m.scene->objects.size(); ++i) {
        if (static_cast<int>(i) == ev.object) continue;
        if (!m.collider[i] || !m.active(st, static_cast<int>(i))) continue;
        if (ev.kind == PhysicsKind::Collision && m.collider[i]->is_trigger) continue;
        if (partner_allowed(ev.kind, ev.collider, collider_kind(*m.collider[i]))) return true;
    }
    return false;
}

void enumerate_scene(const AppBundle& bundle, const ClassTable& table, const SceneDef& scene,
                     OracleResult& out) {
    const SceneModel m = build_model(bundle, table, scene);

    std::vector<UiEventRef> ui = m.ui_events;
    const State start = run_startup(m, out, ui);

    // Cross-container duplicates collapse to the persistent-source id.
    std::set<std::tuple<int, std::string, std::uint64_t>> persistent_keys;
    for (const UiEventRef& ref : ui)
        if (ref.source == CallbackSource::Persistent)
            persistent_keys.emplace(ref.object, ref.component_class, ref.offset);

    std::set<State> seen;
    std::vector<State> queue{start};
    seen.insert(start);

    while (!queue.empty()) {
        const State st = std::move(queue.back());
        queue.pop_back();

        const auto visit = [&](State&& next) {
            if (seen.insert(next).second) queue.push_back(std::move(next));
        };

        for (const UiEventRef& ref : ui) {
            if (!m.active(st, ref.object)) continue;
            CallbackSource source = ref.source;
            if (source == CallbackSource::Runtime &&
                persistent_keys.count({ref.object, ref.component_class, ref.offset}))
                source = CallbackSource::Persistent;
            out.events.insert(callback_id(
                m.scene->objects[static_cast<std::size_t>(ref.object)].path,
                ref.component_class, ref.offset, source));
            State next = st;
            apply_script(m, ref.offset, next, out, nullptr);
            visit(std::move(next));
        }
        for (const PhysicsEventRef& ref : m.physics_events) {
            if (!physics_available(m, ref, st)) continue;
            out.events.insert(
                m.scene->objects[static_cast<std::size_t>(ref.object)].path + ":" +
                to_string(ref.kind));
            State next = st;
            for (const std::uint64_t off : ref.callbacks)
                apply_script(m, off, next, out, nullptr);
            visit(std::move(next));
        }
    }
}

} // namespace

OracleResult oracle_reachable(const AppBundle& bundle) {
    OracleResult out;
    const ClassTable table(bundle.classes);
    for (const SceneDef& scene : bundle.scenes) enumerate_scene(bundle, table, scene, out);
    return out;
}

} // namespace autovr
