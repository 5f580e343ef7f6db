#include "autovr/class_table.hpp"

#include <algorithm>

namespace autovr {

ClassTable::ClassTable(const std::vector<ClassDef>& classes) : classes_(classes) {
    bool has_game_object = false;
    for (const ClassDef& c : classes_)
        if (c.name == "GameObject") has_game_object = true;
    if (!has_game_object) {
        ClassDef go;
        go.name = "GameObject";
        go.ns = "UnityEngine";
        classes_.push_back(std::move(go));
    }
    for (std::size_t i = 0; i < classes_.size(); ++i)
        by_name_.emplace(classes_[i].name, i);
}

bool ClassTable::has(const std::string& name) const { return by_name_.count(name) != 0; }

const ClassDef& ClassTable::get(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        throw ValidationError("class '" + name + "' not in class table", "classes");
    return classes_[it->second];
}

std::vector<std::string> ClassTable::ancestry(const std::string& name) const {
    std::vector<std::string> chain;
    std::string cur = name;
    while (!cur.empty() && has(cur)) {
        // Defensive: authored cycles would spin forever.
        if (std::find(chain.begin(), chain.end(), cur) != chain.end()) break;
        chain.push_back(cur);
        cur = get(cur).parent;
    }
    return chain;
}

std::vector<std::string> ClassTable::interface_closure(const std::string& name) const {
    std::set<std::string> closure;
    for (const std::string& cls : ancestry(name))
        for (const std::string& iface : get(cls).interfaces) closure.insert(iface);
    return {closure.begin(), closure.end()};
}

bool ClassTable::implements(const std::string& name, const std::string& iface) const {
    for (const std::string& cls : ancestry(name))
        for (const std::string& i : get(cls).interfaces)
            if (i == iface) return true;
    return false;
}

std::vector<InheritedField> ClassTable::all_fields(const std::string& name) const {
    std::vector<std::string> chain = ancestry(name);
    std::vector<InheritedField> out;
    // Base-most first so derived fields read like an append.
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        for (const FieldDef& f : get(*it).fields) out.push_back({f, *it});
    return out;
}

std::vector<InheritedMethod> ClassTable::all_methods(const std::string& name,
                                                     bool include_reflection_only) const {
    std::vector<std::string> chain = ancestry(name);
    std::vector<InheritedMethod> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        for (const MethodDef& m : get(*it).methods)
            if (include_reflection_only || !m.reflection_only) out.push_back({m, *it});
    return out;
}

std::optional<MethodDef> ClassTable::find_method(const std::string& cls,
                                                 const std::string& method) const {
    for (const std::string& c : ancestry(cls))
        for (const MethodDef& m : get(c).methods)
            if (m.name == method && !m.reflection_only) return m;
    return std::nullopt;
}

std::size_t ClassTable::total_field_count() const {
    std::size_t n = 0;
    for (const ClassDef& c : classes_) n += c.fields.size();
    return n;
}

bool is_ui_class(const ClassTable& table, const std::string& name) {
    if (!table.has(name)) return false;
    return table.implements(name, kEventSystemHandler);
}

} // namespace autovr
