#include "autovr/introspect.hpp"

#include <algorithm>

namespace autovr {

FieldValue FieldValue::scalar(json v) {
    FieldValue f;
    f.v_ = std::move(v);
    return f;
}
FieldValue FieldValue::ref(ObjectHandle h) {
    FieldValue f;
    f.v_ = std::move(h);
    return f;
}
FieldValue FieldValue::event(UnityEventValue v) {
    FieldValue f;
    f.v_ = std::move(v);
    return f;
}
FieldValue FieldValue::list(ListT v) {
    FieldValue f;
    f.v_ = std::move(v);
    return f;
}
FieldValue FieldValue::nested(NestedValue v) {
    FieldValue f;
    f.v_ = std::move(v);
    return f;
}

bool FieldValue::is_scalar() const { return std::holds_alternative<json>(v_); }
bool FieldValue::is_ref() const { return std::holds_alternative<ObjectHandle>(v_); }
bool FieldValue::is_event() const { return std::holds_alternative<UnityEventValue>(v_); }
bool FieldValue::is_list() const { return std::holds_alternative<ListT>(v_); }
bool FieldValue::is_nested() const { return std::holds_alternative<NestedValue>(v_); }

const json& FieldValue::as_scalar() const { return std::get<json>(v_); }
const ObjectHandle& FieldValue::as_ref() const { return std::get<ObjectHandle>(v_); }
const UnityEventValue& FieldValue::as_event() const { return std::get<UnityEventValue>(v_); }
const FieldValue::ListT& FieldValue::as_list() const { return std::get<ListT>(v_); }
const NestedValue& FieldValue::as_nested() const { return std::get<NestedValue>(v_); }

namespace {

bool event_container_type(const ClassTable& classes, const std::string& type) {
    if (type == kUnityEventType) return true;
    if (!classes.has(type)) return false;
    const auto chain = classes.ancestry(type);
    return std::find(chain.begin(), chain.end(), kUnityEventType) != chain.end();
}

} // namespace

FieldValue default_field_value(const ClassTable& classes, const std::string& type) {
    if (type.size() > 2 && type.compare(type.size() - 2, 2, "[]") == 0)
        return FieldValue::list({});
    if (type == "Int32" || type == "Int64" || type == "int" || type == "long" ||
        type == "System.Int32" || type == "System.Int64")
        return FieldValue::scalar(json(0));
    if (type == "Single" || type == "Double" || type == "float" || type == "double" ||
        type == "System.Single" || type == "System.Double")
        return FieldValue::scalar(json(0.0));
    if (type == "Boolean" || type == "bool" || type == "System.Boolean")
        return FieldValue::scalar(json(false));
    if (type == "String" || type == "string" || type == "System.String")
        return FieldValue::scalar(json(""));
    if (event_container_type(classes, type)) return FieldValue::event({});
    if (classes.has(type)) return FieldValue::nested({type, {}});
    return FieldValue::scalar(json());
}

void Introspector::check(const ObjectHandle& h) const {
    if (h.epoch != rt_.epoch())
        throw StaleHandleError("handle for '" + h.path + "' minted under epoch " +
                               std::to_string(h.epoch) + ", runtime is at " +
                               std::to_string(rt_.epoch()));
    if (h.object < 0 || std::size_t(h.object) >= rt_.object_count())
        throw StaleHandleError("handle object index out of range");
}

const ClassDef& Introspector::resolve_class(const ObjectHandle& h) const {
    check(h);
    if (!h.is_component()) return rt_.class_table().get("GameObject");
    const GameObjectDef& def = rt_.object_def(h.object);
    return rt_.class_table().get(def.components.at(h.component).class_name);
}

MemberView Introspector::enumerate_members(const std::string& class_name) const {
    const ClassTable& classes = rt_.class_table();
    MemberView out;
    out.parent = classes.get(class_name).parent;
    out.interfaces = classes.interface_closure(class_name);
    out.fields = classes.all_fields(class_name);
    out.methods = classes.all_methods(class_name, /*include_reflection_only=*/false);
    return out;
}

bool Introspector::object_active(const ObjectHandle& h) const {
    check(h);
    return rt_.object_active(h.object);
}

FieldValue Introspector::read_field(const ObjectHandle& h, const std::string& field) const {
    check(h);
    const GameObjectDef& def = rt_.object_def(h.object);

    if (!h.is_component()) {
        if (field == "name") return FieldValue::scalar(json(def.name()));
        if (field == "path") return FieldValue::scalar(json(def.path));
        if (field == "enabled") return FieldValue::scalar(json(rt_.object_enabled(h.object)));
        if (field == "active_in_hierarchy")
            return FieldValue::scalar(json(rt_.object_active(h.object)));
        if (field == "in_default_view") return FieldValue::scalar(json(def.in_default_view));
        if (field == "parent") {
            int p = rt_.object_parent(h.object);
            if (p < 0) return FieldValue::scalar(json());
            return FieldValue::ref({rt_.epoch(), p, -1, rt_.object_def(p).path});
        }
        if (field == "components") {
            FieldValue::ListT comps;
            for (std::size_t ci = 0; ci < def.components.size(); ++ci)
                comps.push_back(FieldValue::ref({rt_.epoch(), h.object, int(ci), def.path}));
            return FieldValue::list(std::move(comps));
        }
        throw NoSuchFieldError("object '" + def.path + "' has no field '" + field + "'", field);
    }

    const ComponentDef& comp = def.components.at(h.component);
    if (field == "class") return FieldValue::scalar(json(comp.class_name));
    if (field == "enabled") return FieldValue::scalar(json(rt_.object_active(h.object)));
    if (field == "game_object") return FieldValue::ref({rt_.epoch(), h.object, -1, def.path});
    if (field == "is_collider") return FieldValue::scalar(json(comp.collider.has_value()));
    if (comp.collider) {
        if (field == "is_trigger") return FieldValue::scalar(json(comp.collider->is_trigger));
        if (field == "has_rigidbody")
            return FieldValue::scalar(json(comp.collider->has_rigidbody));
        if (field == "is_kinematic")
            return FieldValue::scalar(json(comp.collider->is_kinematic));
    }

    for (const InheritedField& f : rt_.class_table().all_fields(comp.class_name))
        if (f.field.name == field) return materialize(h, f.declared_in, f.field);

    throw NoSuchFieldError("component '" + comp.class_name + "' on '" + def.path +
                               "' has no field '" + field + "'",
                           field);
}

FieldValue Introspector::materialize(const ObjectHandle& comp, const std::string& cls,
                                     const FieldDef& field) const {
    const ClassTable& classes = rt_.class_table();
    const ComponentDef& cdef = rt_.object_def(comp.object).components.at(comp.component);

    if (field.is_static) {
        if (auto v = rt_.static_value(cls, field.name)) return FieldValue::scalar(*v);
        return default_field_value(classes, field.type);
    }

    if (event_container_type(classes, field.type)) {
        UnityEventValue v;
        auto it = cdef.events.find(field.name);
        if (it != cdef.events.end()) v.persistent_calls = it->second.persistent_calls;
        v.runtime_calls = rt_.runtime_calls(comp.object, comp.component, field.name);
        return FieldValue::event(std::move(v));
    }

    auto it = cdef.fields.find(field.name);
    if (it == cdef.fields.end()) return default_field_value(classes, field.type);

    const json& authored = it->second;
    if (authored.is_object() && authored.contains("$class")) {
        NestedValue n;
        n.class_name = authored.at("$class").get<std::string>();
        for (auto kv = authored.begin(); kv != authored.end(); ++kv)
            if (kv.key() != "$class") n.overrides[kv.key()] = kv.value();
        return FieldValue::nested(std::move(n));
    }
    if (authored.is_array()) {
        FieldValue::ListT items;
        for (const json& e : authored) items.push_back(FieldValue::scalar(e));
        return FieldValue::list(std::move(items));
    }
    return FieldValue::scalar(authored);
}

std::vector<DynamicMethod> Introspector::dynamic_methods(const std::vector<ClassDef>& classes) {
    std::vector<DynamicMethod> out;
    for (const ClassDef& c : classes)
        for (const MethodDef& m : c.methods) {
            if (m.reflection_only) continue;
            out.push_back({c.qualified(m.name), m.offset, m.params});
        }
    return out;
}

} // namespace autovr
