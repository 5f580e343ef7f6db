#include "autovr/bundle.hpp"

#include <filesystem>
#include <fstream>

namespace autovr {

std::string to_string(FaultCode code) {
    switch (code) {
        case FaultCode::Maperr: return "MAPERR";
        case FaultCode::Accerr: return "ACCERR";
    }
    return "MAPERR";
}

FaultCode fault_code_from_string(const std::string& s) {
    if (s == "MAPERR") return FaultCode::Maperr;
    if (s == "ACCERR") return FaultCode::Accerr;
    throw ValidationError("unknown fault code '" + s + "'", "fault");
}

Effect Effect::enable(std::string p) {
    Effect e;
    e.op = EffectOp::Enable;
    e.path = std::move(p);
    return e;
}

Effect Effect::disable(std::string p) {
    Effect e;
    e.op = EffectOp::Disable;
    e.path = std::move(p);
    return e;
}

Effect Effect::load_scene(int idx) {
    Effect e;
    e.op = EffectOp::LoadScene;
    e.scene_index = idx;
    return e;
}

Effect Effect::emit_flow(std::string type, std::string host, std::string payload) {
    Effect e;
    e.op = EffectOp::EmitFlow;
    e.data_type = std::move(type);
    e.host = std::move(host);
    e.payload = std::move(payload);
    return e;
}

Effect Effect::add_listener(std::string p, std::string comp, std::uint64_t off) {
    Effect e;
    e.op = EffectOp::AddListener;
    e.path = std::move(p);
    e.component = std::move(comp);
    e.offset = off;
    return e;
}

Effect Effect::fault(FaultCode code) {
    Effect e;
    e.op = EffectOp::Fault;
    e.fault_code = code;
    return e;
}

Effect Effect::noop() { return Effect{}; }

const SceneDef* AppBundle::find_scene(int index) const {
    for (const SceneDef& s : scenes)
        if (s.index == index) return &s;
    return nullptr;
}

const ClassDef* AppBundle::find_class(const std::string& name) const {
    for (const ClassDef& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

// Offsets are stored as JSON numbers or "0x..." strings; emitted as numbers.
std::uint64_t offset_from_json(const json& v, const std::string& at) {
    if (v.is_number_unsigned() || v.is_number_integer()) return v.get<std::uint64_t>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            return std::stoull(s, nullptr, 0);
        } catch (const std::exception&) {
            throw ValidationError("offset string '" + s + "' is not a number", at);
        }
    }
    throw ValidationError("offset must be a number or hex string", at);
}

ComponentKind kind_from_string(const std::string& s, const std::string& at) {
    if (s == "ui") return ComponentKind::Ui;
    if (s == "collider") return ComponentKind::Collider;
    if (s == "script") return ComponentKind::Script;
    if (s == "plain") return ComponentKind::Plain;
    throw ValidationError("unknown component kind '" + s + "'", at);
}

std::string kind_to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::Ui: return "ui";
        case ComponentKind::Collider: return "collider";
        case ComponentKind::Script: return "script";
        case ComponentKind::Plain: return "plain";
    }
    return "plain";
}

Effect effect_from_json(const json& e, const std::string& at) {
    if (!e.is_object() || !e.contains("op"))
        throw ValidationError("effect must be an object with an 'op'", at);
    const std::string op = e.at("op").get<std::string>();
    if (op == "enable") return Effect::enable(e.at("path").get<std::string>());
    if (op == "disable") return Effect::disable(e.at("path").get<std::string>());
    if (op == "load_scene") return Effect::load_scene(e.at("scene").get<int>());
    if (op == "emit_flow")
        return Effect::emit_flow(e.at("data_type").get<std::string>(),
                                 e.at("host").get<std::string>(),
                                 e.value("payload", std::string()));
    if (op == "add_listener")
        return Effect::add_listener(e.at("path").get<std::string>(),
                                    e.at("component").get<std::string>(),
                                    offset_from_json(e.at("offset"), at));
    if (op == "fault") return Effect::fault(fault_code_from_string(e.at("code").get<std::string>()));
    if (op == "noop") return Effect::noop();
    throw ValidationError("unknown effect op '" + op + "'", at);
}

json effect_to_json(const Effect& e) {
    json out = json::object();
    switch (e.op) {
        case EffectOp::Enable:
            out["op"] = "enable";
            out["path"] = e.path;
            break;
        case EffectOp::Disable:
            out["op"] = "disable";
            out["path"] = e.path;
            break;
        case EffectOp::LoadScene:
            out["op"] = "load_scene";
            out["scene"] = e.scene_index;
            break;
        case EffectOp::EmitFlow:
            out["op"] = "emit_flow";
            out["data_type"] = e.data_type;
            out["host"] = e.host;
            out["payload"] = e.payload;
            break;
        case EffectOp::AddListener:
            out["op"] = "add_listener";
            out["path"] = e.path;
            out["component"] = e.component;
            out["offset"] = e.offset;
            break;
        case EffectOp::Fault:
            out["op"] = "fault";
            out["code"] = to_string(e.fault_code);
            break;
        case EffectOp::Noop:
            out["op"] = "noop";
            break;
    }
    return out;
}

} // namespace

AppBundle bundle_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("scenes") || !doc.at("scenes").is_array())
        throw ValidationError("bundle document must be an object with a 'scenes' array",
                              "app.json");
    AppBundle b;
    try {
        b.metadata_path = doc.value("metadata_path", std::string("metadata.avrm"));

        if (doc.contains("timing")) {
            const json& t = doc.at("timing");
            b.timing.scene_load_wait_ms = t.value("scene_load_wait_ms", b.timing.scene_load_wait_ms);
            b.timing.collision_delay_ms = t.value("collision_delay_ms", b.timing.collision_delay_ms);
            b.timing.fixed_update_ms = t.value("fixed_update_ms", b.timing.fixed_update_ms);
            b.timing.ui_event_delay_ms = t.value("ui_event_delay_ms", b.timing.ui_event_delay_ms);
            b.timing.budget_ms = t.value("budget_ms", b.timing.budget_ms);
        }

        for (const json& jc : doc.value("classes", json::array())) {
            ClassDef c;
            c.name = jc.at("name").get<std::string>();
            c.ns = jc.value("namespace", std::string());
            c.parent = jc.value("parent", std::string());
            for (const json& i : jc.value("interfaces", json::array()))
                c.interfaces.push_back(i.get<std::string>());
            for (const json& jf : jc.value("fields", json::array())) {
                FieldDef f;
                f.name = jf.at("name").get<std::string>();
                f.type = jf.at("type").get<std::string>();
                f.is_static = jf.value("static", false);
                c.fields.push_back(std::move(f));
            }
            for (const json& jm : jc.value("methods", json::array())) {
                MethodDef m;
                m.name = jm.at("name").get<std::string>();
                m.offset = offset_from_json(jm.at("offset"), "classes/" + c.name);
                for (const json& p : jm.value("params", json::array()))
                    m.params.push_back(p.get<std::string>());
                m.reflection_only = jm.value("reflection_only", false);
                c.methods.push_back(std::move(m));
            }
            if (jc.contains("statics"))
                for (auto it = jc.at("statics").begin(); it != jc.at("statics").end(); ++it)
                    c.statics[it.key()] = it.value();
            b.classes.push_back(std::move(c));
        }

        if (doc.contains("method_bodies")) {
            for (auto it = doc.at("method_bodies").begin(); it != doc.at("method_bodies").end(); ++it) {
                std::uint64_t off = offset_from_json(json(it.key()), "method_bodies");
                EffectScript script;
                for (const json& je : it.value())
                    script.push_back(effect_from_json(je, "method_bodies/" + it.key()));
                b.method_bodies[off] = std::move(script);
            }
        }

        for (const json& js : doc.value("scenes", json::array())) {
            SceneDef s;
            s.index = js.at("index").get<int>();
            for (const json& jo : js.value("objects", json::array())) {
                GameObjectDef o;
                o.path = jo.at("path").get<std::string>();
                o.enabled = jo.value("enabled", true);
                o.in_default_view = jo.value("in_default_view", true);
                for (const json& jcomp : jo.value("components", json::array())) {
                    ComponentDef comp;
                    comp.class_name = jcomp.at("class").get<std::string>();
                    comp.kind = kind_from_string(jcomp.value("kind", std::string("plain")),
                                                 "scenes/" + std::to_string(s.index) + "/" + o.path);
                    if (jcomp.contains("collider")) {
                        ColliderSpec spec;
                        const json& jc = jcomp.at("collider");
                        spec.is_trigger = jc.value("is_trigger", false);
                        spec.has_rigidbody = jc.value("has_rigidbody", false);
                        spec.is_kinematic = jc.value("is_kinematic", false);
                        comp.collider = spec;
                    }
                    if (jcomp.contains("events")) {
                        for (auto it = jcomp.at("events").begin(); it != jcomp.at("events").end(); ++it) {
                            UnityEventDef ev;
                            for (const json& jr : it.value().value("persistent", json::array())) {
                                CallbackRefDef ref;
                                ref.target_path = jr.value("target", o.path);
                                ref.offset = offset_from_json(jr.at("offset"),
                                                              o.path + "/" + it.key());
                                for (const json& a : jr.value("args", json::array()))
                                    ref.cached_args.push_back(a);
                                ev.persistent_calls.push_back(std::move(ref));
                            }
                            comp.events[it.key()] = std::move(ev);
                        }
                    }
                    if (jcomp.contains("fields"))
                        for (auto it = jcomp.at("fields").begin(); it != jcomp.at("fields").end(); ++it)
                            comp.fields[it.key()] = it.value();
                    o.components.push_back(std::move(comp));
                }
                s.objects.push_back(std::move(o));
            }
            b.scenes.push_back(std::move(s));
        }
    } catch (const json::exception& ex) {
        throw ValidationError(std::string("malformed app definition: ") + ex.what(), "app.json");
    }
    return b;
}

json bundle_to_json(const AppBundle& bundle) {
    json doc = json::object();
    doc["schema_version"] = 1;
    doc["metadata_path"] = bundle.metadata_path;

    json t = json::object();
    t["scene_load_wait_ms"] = bundle.timing.scene_load_wait_ms;
    t["collision_delay_ms"] = bundle.timing.collision_delay_ms;
    t["fixed_update_ms"] = bundle.timing.fixed_update_ms;
    t["ui_event_delay_ms"] = bundle.timing.ui_event_delay_ms;
    t["budget_ms"] = bundle.timing.budget_ms;
    doc["timing"] = t;

    json jclasses = json::array();
    for (const ClassDef& c : bundle.classes) {
        json jc = json::object();
        jc["name"] = c.name;
        if (!c.ns.empty()) jc["namespace"] = c.ns;
        if (!c.parent.empty()) jc["parent"] = c.parent;
        if (!c.interfaces.empty()) jc["interfaces"] = c.interfaces;
        json jfields = json::array();
        for (const FieldDef& f : c.fields) {
            json jf = json::object();
            jf["name"] = f.name;
            jf["type"] = f.type;
            if (f.is_static) jf["static"] = true;
            jfields.push_back(jf);
        }
        if (!jfields.empty()) jc["fields"] = jfields;
        json jmethods = json::array();
        for (const MethodDef& m : c.methods) {
            json jm = json::object();
            jm["name"] = m.name;
            jm["offset"] = m.offset;
            if (!m.params.empty()) jm["params"] = m.params;
            if (m.reflection_only) jm["reflection_only"] = true;
            jmethods.push_back(jm);
        }
        if (!jmethods.empty()) jc["methods"] = jmethods;
        if (!c.statics.empty()) {
            json js = json::object();
            for (const auto& [k, v] : c.statics) js[k] = v;
            jc["statics"] = js;
        }
        jclasses.push_back(jc);
    }
    doc["classes"] = jclasses;

    json jbodies = json::object();
    for (const auto& [off, script] : bundle.method_bodies) {
        json jeffects = json::array();
        for (const Effect& e : script) jeffects.push_back(effect_to_json(e));
        jbodies[std::to_string(off)] = jeffects;
    }
    doc["method_bodies"] = jbodies;

    json jscenes = json::array();
    for (const SceneDef& s : bundle.scenes) {
        json js = json::object();
        js["index"] = s.index;
        json jobjects = json::array();
        for (const GameObjectDef& o : s.objects) {
            json jo = json::object();
            jo["path"] = o.path;
            jo["enabled"] = o.enabled;
            jo["in_default_view"] = o.in_default_view;
            json jcomps = json::array();
            for (const ComponentDef& comp : o.components) {
                json jc = json::object();
                jc["class"] = comp.class_name;
                jc["kind"] = kind_to_string(comp.kind);
                if (comp.collider) {
                    json jcol = json::object();
                    jcol["is_trigger"] = comp.collider->is_trigger;
                    jcol["has_rigidbody"] = comp.collider->has_rigidbody;
                    jcol["is_kinematic"] = comp.collider->is_kinematic;
                    jc["collider"] = jcol;
                }
                if (!comp.events.empty()) {
                    json jevents = json::object();
                    for (const auto& [fname, ev] : comp.events) {
                        json jpersistent = json::array();
                        for (const CallbackRefDef& ref : ev.persistent_calls) {
                            json jr = json::object();
                            jr["target"] = ref.target_path;
                            jr["offset"] = ref.offset;
                            if (!ref.cached_args.empty()) jr["args"] = ref.cached_args;
                            jpersistent.push_back(jr);
                        }
                        jevents[fname] = json::object({{"persistent", jpersistent}});
                    }
                    jc["events"] = jevents;
                }
                if (!comp.fields.empty()) {
                    json jf = json::object();
                    for (const auto& [k, v] : comp.fields) jf[k] = v;
                    jc["fields"] = jf;
                }
                jcomps.push_back(jc);
            }
            jo["components"] = jcomps;
            jobjects.push_back(jo);
        }
        js["objects"] = jobjects;
        jscenes.push_back(js);
    }
    doc["scenes"] = jscenes;

    return doc;
}

AppBundle load_bundle_dir(const std::string& dir) {
    const std::filesystem::path app = std::filesystem::path(dir) / "app.json";
    std::ifstream in(app);
    if (!in) throw ValidationError("cannot open app definition", app.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& ex) {
        throw ValidationError(std::string("invalid JSON: ") + ex.what(), app.string());
    }
    return bundle_from_json(doc);
}

void save_bundle_dir(const AppBundle& bundle, const std::vector<std::uint8_t>& metadata_bytes,
                     const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(std::filesystem::path(dir) / "app.json");
        out << bundle_to_json(bundle).dump(2) << "\n";
    }
    {
        std::ofstream out(std::filesystem::path(dir) / bundle.metadata_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(metadata_bytes.data()),
                  std::streamsize(metadata_bytes.size()));
    }
}

} // namespace autovr
