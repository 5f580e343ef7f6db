#ifndef AUTOVR_CLASS_TABLE_HPP
#define AUTOVR_CLASS_TABLE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autovr/bundle.hpp"

// Indexed view over the bundle's class definitions: ancestry walks,
// transitive interface closures, and inherited member enumeration.

namespace autovr {

struct InheritedField {
    FieldDef field;
    std::string declared_in; // class that declares the field
};

struct InheritedMethod {
    MethodDef method;
    std::string declared_in;
};

class ClassTable {
public:
    // A "GameObject" class is injected if the table does not author one, so
    // plain objects always resolve to a descriptor.
    explicit ClassTable(const std::vector<ClassDef>& classes);

    bool has(const std::string& name) const;
    const ClassDef& get(const std::string& name) const; // throws ValidationError

    // name -> parent -> ... root, starting at `name` itself.
    std::vector<std::string> ancestry(const std::string& name) const;

    // Interfaces declared anywhere on the ancestry walk (transitive closure),
    // sorted for determinism.
    std::vector<std::string> interface_closure(const std::string& name) const;

    bool implements(const std::string& name, const std::string& iface) const;

    // Fields/methods including inherited ones, base-most first, each tagged
    // with its declaring class. `include_reflection_only` keeps records that
    // only static metadata may see.
    std::vector<InheritedField> all_fields(const std::string& name) const;
    std::vector<InheritedMethod> all_methods(const std::string& name,
                                             bool include_reflection_only) const;

    // First method with this simple name on the ancestry walk (derived-most
    // wins), excluding reflection-only records.
    std::optional<MethodDef> find_method(const std::string& cls,
                                         const std::string& method) const;

    const std::vector<ClassDef>& classes() const { return classes_; }

    // Total declared field count across all classes (cost-model input).
    std::size_t total_field_count() const;

private:
    std::vector<ClassDef> classes_;
    std::map<std::string, std::size_t> by_name_;
};

// True when the class reaches IEventSystemHandler through its transitive
// ancestry/interface closure.
bool is_ui_class(const ClassTable& table, const std::string& name);

} // namespace autovr

#endif
