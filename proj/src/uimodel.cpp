#include "autovr/uimodel.hpp"

#include <functional>
#include <map>
#include <set>

namespace autovr {

std::string to_string(CallbackSource s) {
    return s == CallbackSource::Persistent ? "persistent" : "runtime";
}

bool is_ui_component(const Introspector& in, const std::string& class_name) {
    return is_ui_class(in.class_table(), class_name);
}

namespace {

UnityEventValue event_from_override(const json& v) {
    UnityEventValue out;
    if (!v.is_object()) return out;
    for (const json& jr : v.value("persistent", json::array())) {
        CallbackRefDef ref;
        ref.target_path = jr.value("target", std::string());
        if (jr.contains("offset")) {
            const json& off = jr.at("offset");
            ref.offset = off.is_string() ? std::stoull(off.get<std::string>(), nullptr, 0)
                                         : off.get<std::uint64_t>();
        }
        for (const json& a : jr.value("args", json::array())) ref.cached_args.push_back(a);
        out.persistent_calls.push_back(std::move(ref));
    }
    return out;
}

struct Walker {
    const Introspector& in;
    const ClassTable& classes;
    std::vector<FoundEvent>& out;
    std::string owner_path;
    std::string component_class;
    bool owner_active;
    std::set<std::string> visited; // declared types already recursed into

    void collect(const std::string& field_path, UnityEventValue value) {
        out.push_back({owner_path, component_class, field_path, std::move(value), owner_active});
    }

    void visit_value(const FieldDef& field, const std::string& path, const FieldValue& v) {
        if (v.is_event()) {
            collect(path, v.as_event());
            return;
        }
        if (v.is_nested()) {
            const NestedValue& n = v.as_nested();
            if (!classes.has(n.class_name)) return;
            if (!visited.insert(n.class_name).second) return;
            walk_nested(n, path);
            return;
        }
        if (v.is_list()) {
            std::size_t i = 0;
            for (const FieldValue& item : v.as_list()) visit_value(field, path + "[" + std::to_string(i++) + "]", item);
        }
        // Scalars and object refs cannot carry callback containers.
    }

    void walk_nested(const NestedValue& n, const std::string& prefix) {
        for (const InheritedField& f : classes.all_fields(n.class_name)) {
            const std::string path = prefix + "." + f.field.name;
            auto it = n.overrides.find(f.field.name);
            FieldValue v = it != n.overrides.end() ? value_from_json(f.field, it->second)
                                                   : default_field_value(classes, f.field.type);
            visit_value(f.field, path, v);
        }
    }

    FieldValue value_from_json(const FieldDef& field, const json& raw) const {
        // Overrides inside nested values mirror the component field grammar.
        if (raw.is_object() && raw.contains("persistent")) return FieldValue::event(event_from_override(raw));
        if (raw.is_object() && raw.contains("$class")) {
            NestedValue n;
            n.class_name = raw.at("$class").get<std::string>();
            for (auto kv = raw.begin(); kv != raw.end(); ++kv)
                if (kv.key() != "$class") n.overrides[kv.key()] = kv.value();
            return FieldValue::nested(std::move(n));
        }
        if (event_container_default(field.type)) return FieldValue::event(event_from_override(raw));
        return FieldValue::scalar(raw);
    }

    bool event_container_default(const std::string& type) const {
        FieldValue d = default_field_value(classes, type);
        return d.is_event();
    }
};

} // namespace

std::vector<FoundEvent> find_unity_events(const Introspector& in, const ObjectHandle& object) {
    std::vector<FoundEvent> out;
    const FieldValue comps = in.read_field(object, "components");
    const bool active = in.object_active(object);

    for (const FieldValue& c : comps.as_list()) {
        const ObjectHandle comp = c.as_ref();
        const ClassDef& cls = in.resolve_class(comp);
        if (!is_ui_component(in, cls.name)) continue;

        Walker w{in, in.class_table(), out, object.path, cls.name, active, {}};
        w.visited.insert(cls.name);
        for (const InheritedField& f : in.enumerate_members(cls.name).fields) {
            FieldValue v = in.read_field(comp, f.field.name);
            w.visit_value(f.field, f.field.name, v);
        }
    }
    return out;
}

std::string callback_id(const std::string& owner_path, const std::string& component_class,
                        std::uint64_t offset, CallbackSource source) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%llx", static_cast<unsigned long long>(offset));
    return owner_path + "#" + component_class + "@0x" + hex + ":" + to_string(source);
}

ExtractionResult extract_callbacks(const std::vector<FoundEvent>& events,
                                   const GlobalFunctionTable& gft) {
    ExtractionResult result;
    std::set<std::uint64_t> unresolved;
    // (owner, class, offset) -> index into result.callbacks
    std::map<std::tuple<std::string, std::string, std::uint64_t>, std::size_t> seen;

    auto add = [&](const FoundEvent& ev, const CallbackRefDef& ref, CallbackSource source) {
        const MethodEntry* entry = gft.lookup(ref.offset);
        if (!entry) {
            unresolved.insert(ref.offset);
            return;
        }
        auto key = std::make_tuple(ev.owner_path, ev.component_class, ref.offset);
        auto it = seen.find(key);
        if (it != seen.end()) {
            EventCallback& existing = result.callbacks[it->second];
            if (existing.source != source) {
                // Same callback serialized and runtime-added: keep one entry,
                // persistent wins.
                ++result.both_container_duplicates;
                if (existing.source == CallbackSource::Runtime) {
                    existing.source = CallbackSource::Persistent;
                    existing.id = callback_id(ev.owner_path, ev.component_class, ref.offset,
                                              CallbackSource::Persistent);
                }
            }
            return;
        }
        EventCallback cb;
        cb.id = callback_id(ev.owner_path, ev.component_class, ref.offset, source);
        cb.owner_path = ev.owner_path;
        cb.component_class = ev.component_class;
        cb.field_path = ev.field_path;
        cb.offset = ref.offset;
        cb.source = source;
        cb.signature = entry->params;
        cb.enabled = ev.owner_active;
        seen.emplace(key, result.callbacks.size());
        result.callbacks.push_back(std::move(cb));
    };

    for (const FoundEvent& ev : events) {
        for (const CallbackRefDef& ref : ev.value.persistent_calls)
            add(ev, ref, CallbackSource::Persistent);
        for (const CallbackRefDef& ref : ev.value.runtime_calls)
            add(ev, ref, CallbackSource::Runtime);
    }

    result.unresolved.assign(unresolved.begin(), unresolved.end());
    return result;
}

ExtractionResult extract_scene_callbacks(const Introspector& in, const GlobalFunctionTable& gft) {
    std::vector<FoundEvent> all;
    for (const ObjectHandle& h : in.snapshot_objects()) {
        std::vector<FoundEvent> found = find_unity_events(in, h);
        all.insert(all.end(), found.begin(), found.end());
    }
    return extract_callbacks(all, gft);
}

} // namespace autovr
