#include "autovr/builder.hpp"

namespace autovr {

BundleBuilder::BundleBuilder() {
    bundle_.metadata_path = "metadata.avrm";
    image_.version = 1;
    intern(""); // index 0: the empty namespace
}

std::uint32_t BundleBuilder::intern(const std::string& s) {
    const auto it = string_index_.find(s);
    if (it != string_index_.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(image_.strings.size());
    image_.strings.push_back(s);
    string_index_.emplace(s, idx);
    return idx;
}

void BundleBuilder::add_class(ClassDef def) {
    ClassRecord rec;
    rec.name = intern(def.name);
    rec.ns = intern(def.ns);
    rec.parent = kNoParent;
    if (!def.parent.empty()) {
        const auto it = class_index_.find(def.parent);
        if (it != class_index_.end()) rec.parent = class_index_.at(def.parent);
    }
    for (const std::string& i : def.interfaces) rec.interfaces.push_back(intern(i));

    const auto idx = static_cast<std::uint32_t>(bundle_.classes.size());
    class_index_.emplace(def.name, idx);
    image_.classes.push_back(std::move(rec));
    for (const FieldDef& f : def.fields) {
        FieldRecord fr;
        fr.name = intern(f.name);
        fr.owner = idx;
        fr.type = intern(f.type);
        fr.is_static = f.is_static;
        image_.fields.push_back(fr);
    }
    bundle_.classes.push_back(std::move(def));
}

std::uint64_t BundleBuilder::add_method(const std::string& cls, const std::string& name,
                                        std::vector<std::string> params, EffectScript body,
                                        bool reflection_only) {
    const std::uint64_t offset = next_offset_;
    next_offset_ += 8;

    MethodRecord mr;
    mr.name = intern(name);
    mr.owner = class_index_.at(cls);
    mr.offset = offset;
    mr.param_count = static_cast<std::uint32_t>(params.size());
    mr.reflection_only = reflection_only;
    image_.methods.push_back(mr);

    if (!reflection_only) {
        MethodDef def;
        def.name = name;
        def.offset = offset;
        def.params = std::move(params);
        bundle_.classes[class_index_.at(cls)].methods.push_back(std::move(def));
    }
    if (!body.empty()) bundle_.method_bodies.emplace(offset, std::move(body));
    return offset;
}

GameObjectDef make_object(std::string path, bool enabled, bool in_view) {
    GameObjectDef o;
    o.path = std::move(path);
    o.enabled = enabled;
    o.in_default_view = in_view;
    return o;
}

ComponentDef make_button(std::uint64_t offset, const std::string& owner_path) {
    ComponentDef c;
    c.class_name = "Button";
    c.kind = ComponentKind::Ui;
    UnityEventDef ev;
    CallbackRefDef call;
    call.target_path = owner_path;
    call.offset = offset;
    ev.persistent_calls.push_back(std::move(call));
    c.events.emplace("on_click", std::move(ev));
    return c;
}

ComponentDef make_collider(bool is_trigger, bool has_rigidbody, bool is_kinematic) {
    ComponentDef c;
    c.class_name = "BoxCollider";
    c.kind = ComponentKind::Collider;
    c.collider = ColliderSpec{is_trigger, has_rigidbody, is_kinematic};
    return c;
}

ComponentDef make_script(std::string class_name) {
    ComponentDef c;
    c.class_name = std::move(class_name);
    c.kind = ComponentKind::Script;
    return c;
}

void add_core_classes(BundleBuilder& b) {
    ClassDef button;
    button.name = "Button";
    button.ns = "UnityEngine.UI";
    button.interfaces = {kEventSystemHandler};
    button.fields.push_back(FieldDef{"on_click", kUnityEventType, false});
    b.add_class(std::move(button));

    ClassDef box;
    box.name = "BoxCollider";
    box.ns = "UnityEngine";
    b.add_class(std::move(box));
}

} // namespace autovr
