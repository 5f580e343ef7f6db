#ifndef AUTOVR_INTROSPECT_HPP
#define AUTOVR_INTROSPECT_HPP

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "autovr/runtime.hpp"

// Reflection facade over the live runtime. Event models and the explorer
// read app state exclusively through this surface: resolve_class,
// enumerate_members, read_field, snapshot_objects. Handles are invalidated
// by scene reloads (epoch check -> StaleHandleError). All reads are const
// and safe for concurrent readers.

namespace autovr {

// Live view of a callback container: serialized persistent half plus
// listener half populated at runtime by AddListener.
struct UnityEventValue {
    std::vector<CallbackRefDef> persistent_calls;
    std::vector<CallbackRefDef> runtime_calls;
};

class FieldValue;

// Struct-like value: a declared class type plus authored overrides for its
// fields; unlisted fields take their declared defaults on demand. Walked
// lazily so recursive class types terminate.
struct NestedValue {
    std::string class_name;
    std::map<std::string, json> overrides;
};

class FieldValue {
public:
    using ListT = std::vector<FieldValue>;

    static FieldValue scalar(json v);
    static FieldValue ref(ObjectHandle h);
    static FieldValue event(UnityEventValue v);
    static FieldValue list(ListT v);
    static FieldValue nested(NestedValue v);

    bool is_scalar() const;
    bool is_ref() const;
    bool is_event() const;
    bool is_list() const;
    bool is_nested() const;

    const json& as_scalar() const;
    const ObjectHandle& as_ref() const;
    const UnityEventValue& as_event() const;
    const ListT& as_list() const;
    const NestedValue& as_nested() const;

private:
    std::variant<json, ObjectHandle, UnityEventValue, ListT, NestedValue> v_;
};

struct MemberView {
    std::string parent;                   // empty for root classes
    std::vector<std::string> interfaces;  // transitive closure, sorted
    std::vector<InheritedField> fields;   // inherited included, tagged
    std::vector<InheritedMethod> methods; // reflection-only records excluded
};

class Introspector {
public:
    explicit Introspector(const AppRuntime& rt) : rt_(rt) {}

    std::vector<ObjectHandle> snapshot_objects() const { return rt_.snapshot_objects(); }

    // Concrete type of the referenced object: GameObject for plain objects,
    // the component class for component handles.
    const ClassDef& resolve_class(const ObjectHandle& h) const;

    MemberView enumerate_members(const std::string& class_name) const;

    // Declared fields plus a few intrinsic ones. Objects expose name, path,
    // enabled, active_in_hierarchy, in_default_view, parent, components.
    // Components expose their declared fields (inherited included), class,
    // game_object, and enabled (the owner's effective state).
    FieldValue read_field(const ObjectHandle& h, const std::string& field) const;

    // True when events hosted on this object are currently invokable.
    bool object_active(const ObjectHandle& h) const;

    const ClassTable& class_table() const { return rt_.class_table(); }

    // The live-method view used to build the function table: every
    // non-reflection-only method of every class.
    static std::vector<DynamicMethod> dynamic_methods(const std::vector<ClassDef>& classes);

private:
    void check(const ObjectHandle& h) const;
    FieldValue materialize(const ObjectHandle& comp, const std::string& cls,
                           const FieldDef& field) const;

    const AppRuntime& rt_;
};

// Default value for a declared type name: numeric/bool/string builtins get
// zero values, class-table types a NestedValue, "T[]" an empty list,
// anything else null.
FieldValue default_field_value(const ClassTable& classes, const std::string& type);

} // namespace autovr

#endif
