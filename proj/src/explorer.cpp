#include "autovr/explorer.hpp"

#include <algorithm>

#include "autovr/errors.hpp"

namespace autovr {

namespace {

std::vector<std::string> sorted_difference(const std::set<std::string>& a,
                                           const std::set<std::string>& b) {
    std::vector<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_integer_type(const std::string& t) {
    return t == "Int32" || t == "Int64" || t == "int" || t == "long" || t == "System.Int32" ||
           t == "System.Int64";
}

bool is_float_type(const std::string& t) {
    return t == "Single" || t == "Double" || t == "float" || t == "double" ||
           t == "System.Single" || t == "System.Double";
}

bool is_bool_type(const std::string& t) {
    return t == "Boolean" || t == "bool" || t == "System.Boolean";
}

bool is_string_type(const std::string& t) {
    return t == "String" || t == "string" || t == "System.String";
}

bool is_any_object_type(const std::string& t) {
    return t == "System.Object" || t == "UnityEngine.Object" || t == "GameObject" ||
           t == "UnityEngine.GameObject";
}

} // namespace

const std::string& event_id(const DiscoveredEvent& e) {
    if (const auto* cb = std::get_if<EventCallback>(&e)) return cb->id;
    return std::get<PhysicsEvent>(e).id;
}

bool event_enabled(const DiscoveredEvent& e) {
    if (const auto* cb = std::get_if<EventCallback>(&e)) return cb->enabled;
    return std::get<PhysicsEvent>(e).enabled;
}

bool is_ui_event(const DiscoveredEvent& e) {
    return std::holds_alternative<EventCallback>(e);
}

std::set<std::string> EventSet::enabled_ids() const {
    std::set<std::string> out;
    for (const auto& [id, ev] : events)
        if (event_enabled(ev)) out.insert(id);
    return out;
}

EventSet discover_events(const AppRuntime& rt) {
    Introspector in(rt);
    EventSet set;
    set.scene_index = rt.current_scene();
    set.epoch = rt.epoch();
    for (const EventCallback& cb : extract_scene_callbacks(in, rt.function_table()).callbacks)
        set.events.emplace(cb.id, cb);
    for (const ObjectHandle& h : in.snapshot_objects())
        if (std::optional<PhysicsEvent> ev = classify_physics(in, h))
            set.events.emplace(ev->id, *ev);
    return set;
}

std::string to_string(NodeStatus s) {
    switch (s) {
    case NodeStatus::Unexplored:
        return "unexplored";
    case NodeStatus::Explored:
        return "explored";
    case NodeStatus::Unreachable:
        return "unreachable";
    }
    return "unexplored";
}

int DependencyTree::find(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return -1;
}

std::size_t DependencyTree::depth(int node) const {
    std::size_t d = 0;
    while (node >= 0 && nodes[static_cast<std::size_t>(node)].parent >= 0) {
        node = nodes[static_cast<std::size_t>(node)].parent;
        ++d;
    }
    return d;
}

std::uint64_t predict_cost(const CostInputs& in) {
    return in.E * (in.Pc + in.Pt + in.Ct + in.Cf) + in.D;
}

std::vector<ArgumentValue> synthesize_args(const Introspector& in,
                                           const std::vector<std::string>& params) {
    std::vector<ArgumentValue> args;
    args.reserve(params.size());
    const std::vector<ObjectHandle> objs = in.snapshot_objects();
    const ClassTable& table = in.class_table();

    const auto compatible = [&](const ObjectHandle& h, const std::string& type) {
        if (is_any_object_type(type)) return true;
        const FieldValue comps = in.read_field(h, "components");
        for (const FieldValue& c : comps.as_list()) {
            const std::string cls =
                in.read_field(c.as_ref(), "class").as_scalar().get<std::string>();
            if (!table.has(cls)) continue;
            const std::vector<std::string> anc = table.ancestry(cls);
            if (std::find(anc.begin(), anc.end(), type) != anc.end()) return true;
            const std::vector<std::string> ifs = table.interface_closure(cls);
            if (std::binary_search(ifs.begin(), ifs.end(), type)) return true;
        }
        return false;
    };

    for (const std::string& p : params) {
        if (is_integer_type(p)) {
            args.emplace_back(std::int64_t{0});
        } else if (is_float_type(p)) {
            args.emplace_back(0.0);
        } else if (is_bool_type(p)) {
            args.emplace_back(false);
        } else if (is_string_type(p)) {
            args.emplace_back(std::string{});
        } else {
            ArgumentValue v{}; // null when nothing matches
            for (const ObjectHandle& h : objs) {
                if (!in.object_active(h)) continue;
                if (compatible(h, p)) {
                    v = ObjectRef{h.path};
                    break;
                }
            }
            args.push_back(std::move(v));
        }
    }
    return args;
}

namespace {

// Depth-first exploration of one scene. Restores state between siblings by
// scene reload + prefix replay when the divergence point's parent is the
// root or a root event, and by re-invoking the parent in place otherwise.
class SceneExplorer {
public:
    SceneExplorer(AppRuntime& rt, int scene_index, const ExploreOptions& opts)
        : rt_(rt), in_(rt), opts_(opts), scene_(scene_index),
          rng_(opts.seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(scene_index) + 1))) {}

    ExploreSceneResult run() {
        result_.tree.scene_index = scene_;
        result_.coverage.scene_index = scene_;

        if (!opts_.assume_positioned) {
            if (out_of_budget()) return finish();
            rt_.load_scene(scene_);
        }

        DependencyNode root;
        root.id = "scene:" + std::to_string(scene_);
        result_.tree.nodes.push_back(std::move(root));

        sweep(/*charge=*/true);
        node(0).recorded_enabled = current_enabled_;
        claim_children(0, current_enabled_, /*rotate_first=*/true);
        dfs(0);
        node(0).status = NodeStatus::Explored;
        return finish();
    }

private:
    DependencyNode& node(int i) { return result_.tree.nodes[static_cast<std::size_t>(i)]; }

    bool out_of_budget() {
        if (rt_.clock_ms() >= opts_.budget_ms) {
            result_.coverage.budget_exhausted = true;
            return true;
        }
        return false;
    }

    // Refresh the registry and the cached enabled set. Discovery work is
    // charged only when `charge` is set (first invocations and the initial
    // scan), so replays and restore checks stay outside the cost bound.
    void sweep(bool charge) {
        EventSet set = discover_events(rt_);
        registry_ = std::move(set.events);
        current_enabled_.clear();

        std::set<std::string> ui_classes;
        std::uint64_t physics_found = 0;
        for (const auto& [id, ev] : registry_) {
            if (event_enabled(ev)) current_enabled_.insert(id);
            if (const auto* cb = std::get_if<EventCallback>(&ev)) {
                seen_ui_.insert(id);
                ui_classes.insert(cb->component_class);
            } else {
                const auto& pe = std::get<PhysicsEvent>(ev);
                (pe.kind == PhysicsKind::Trigger ? seen_trigger_ : seen_collision_).insert(id);
                physics_found += 1;
            }
        }
        if (charge) {
            std::uint64_t units = physics_found;
            for (const std::string& cls : ui_classes)
                units += 1 + in_.class_table().all_fields(cls).size();
            result_.work_units += units;
        }
    }

    // Children of `parent`: the given ids not yet owned by any node, UI
    // events first. At the root the first UI event is a seeded random pick;
    // the rest keep deterministic cyclic order.
    void claim_children(int parent, const std::set<std::string>& ids, bool rotate_first) {
        std::vector<std::string> ui, physics;
        for (const std::string& id : ids) {
            if (owner_.count(id)) continue;
            const auto it = registry_.find(id);
            if (it == registry_.end()) continue;
            (is_ui_event(it->second) ? ui : physics).push_back(id);
        }
        if (rotate_first && ui.size() > 1)
            std::rotate(ui.begin(), ui.begin() + static_cast<std::ptrdiff_t>(
                                                     bounded(rng_, ui.size())),
                        ui.end());
        for (const std::string& id : ui) add_child(parent, id);
        for (const std::string& id : physics) add_child(parent, id);
    }

    void add_child(int parent, const std::string& id) {
        DependencyNode n;
        n.id = id;
        n.parent = parent;
        result_.tree.nodes.push_back(std::move(n));
        const int idx = static_cast<int>(result_.tree.nodes.size()) - 1;
        owner_.emplace(id, idx);
        node(parent).children.push_back(id);
    }

    void dfs(int idx) {
        // Children may grow during iteration (divergence re-discovery).
        for (std::size_t i = 0; i < node(idx).children.size(); ++i) {
            if (out_of_budget()) return;
            const std::string child_id = node(idx).children[i];
            const int child = owner_.at(child_id);

            if (!restore_to(idx)) return; // budget
            if (!current_enabled_.count(child_id)) {
                node(child).status = NodeStatus::Unreachable;
                continue;
            }

            const std::set<std::string> pre = current_enabled_;
            const bool first = invoked_.insert(child_id).second;
            if (!invoke_event(child_id)) return; // budget hit mid-invocation

            if (rt_.current_scene() != scene_) {
                // The event left the scene; it is a leaf here and the next
                // sibling's restore reloads this scene.
                node(child).status = NodeStatus::Explored;
                continue;
            }

            sweep(first);
            node(child).recorded_enabled = current_enabled_;
            std::set<std::string> diff;
            for (const std::string& id : current_enabled_)
                if (!pre.count(id)) diff.insert(id);
            claim_children(child, diff, /*rotate_first=*/false);

            dfs(child);
            node(child).status = NodeStatus::Explored;
        }
    }

    // Ensure the runtime sits at the state recorded for `idx`. Returns false
    // only when the budget expired.
    bool restore_to(int idx) {
        if (rt_.current_scene() == scene_ && current_enabled_ == node(idx).recorded_enabled)
            return true;
        if (out_of_budget()) return false;

        const std::size_t depth = result_.tree.depth(idx);
        if (rt_.current_scene() != scene_ || depth <= 1) {
            // Reload, then re-invoke the path from the root down to `idx`.
            rt_.load_scene(scene_);
            sweep(/*charge=*/false);
            std::vector<int> path;
            for (int n = idx; n > 0; n = node(n).parent) path.push_back(n);
            std::reverse(path.begin(), path.end());
            for (const int n : path) {
                if (out_of_budget()) return false;
                if (!invoke_event(node(n).id)) return false;
                sweep(/*charge=*/false);
            }
        } else {
            // The parent is itself a dependent event: re-invoke it in place.
            if (!invoke_event(node(idx).id)) return false;
            sweep(/*charge=*/false);
        }

        if (current_enabled_ != node(idx).recorded_enabled) {
            StateDivergenceReport div;
            div.scene_index = scene_;
            div.node_id = node(idx).id;
            div.expected_only = sorted_difference(node(idx).recorded_enabled, current_enabled_);
            div.actual_only = sorted_difference(current_enabled_, node(idx).recorded_enabled);
            result_.coverage.divergences.push_back(std::move(div));
            // Re-discovery: adopt the live set and claim anything new.
            node(idx).recorded_enabled = current_enabled_;
            claim_children(idx, current_enabled_, /*rotate_first=*/false);
        }
        return true;
    }

    // Invoke a registered event by id. Returns false when the budget
    // expired before the invocation could start.
    bool invoke_event(const std::string& id) {
        if (out_of_budget()) return false;
        const auto it = registry_.find(id);
        if (it == registry_.end()) return true; // vanished; divergence check reports it
        result_.coverage.invocations += 1;

        InvocationOutcome out;
        if (const auto* cb = std::get_if<EventCallback>(&it->second)) {
            out = rt_.invoke_method(cb->offset, synthesize_args(in_, cb->signature),
                                    InvocationKind::Ui, cb->id);
        } else {
            const PhysicsEvent ev = std::get<PhysicsEvent>(it->second);
            const PhysicsInvocationReport rep =
                execute_physics_event(rt_, in_, ev, legal_partners(in_, ev));
            result_.coverage.physics_callback_calls += rep.callback_invocations();
            out = rep.combined;
        }
        for (const int dest : out.scene_transitions) {
            if (std::find(result_.discovered_scenes.begin(), result_.discovered_scenes.end(),
                          dest) == result_.discovered_scenes.end())
                result_.discovered_scenes.push_back(dest);
        }
        return true;
    }

    ExploreSceneResult finish() {
        SceneCoverage& cov = result_.coverage;
        cov.ui_total = seen_ui_.size();
        cov.trigger_total = seen_trigger_.size();
        cov.collision_total = seen_collision_.size();
        for (const std::string& id : invoked_) {
            cov.invoked_ids.push_back(id);
            if (seen_ui_.count(id))
                cov.ui_invoked += 1;
            else if (seen_trigger_.count(id))
                cov.trigger_invoked += 1;
            else if (seen_collision_.count(id))
                cov.collision_invoked += 1;
        }

        CostInputs& inputs = result_.inputs;
        inputs.E = result_.tree.nodes.size();
        inputs.Pt = seen_trigger_.size();
        inputs.Pc = seen_collision_.size();
        inputs.Ct = in_.class_table().classes().size();
        for (const ClassDef& c : in_.class_table().classes())
            inputs.Cf += in_.class_table().all_fields(c.name).size();
        for (std::size_t i = 0; i < result_.tree.nodes.size(); ++i)
            if (result_.tree.depth(static_cast<int>(i)) >= 2) inputs.D += 1;
        return std::move(result_);
    }

    AppRuntime& rt_;
    Introspector in_;
    ExploreOptions opts_;
    int scene_;
    std::mt19937_64 rng_;

    ExploreSceneResult result_;
    std::map<std::string, DiscoveredEvent> registry_;
    std::set<std::string> current_enabled_;
    std::map<std::string, int> owner_; // event id -> owning node index
    std::set<std::string> invoked_;
    std::set<std::string> seen_ui_, seen_trigger_, seen_collision_;
};

} // namespace

ExploreSceneResult explore_scene(AppRuntime& rt, int scene_index, const ExploreOptions& opts) {
    return SceneExplorer(rt, scene_index, opts).run();
}

} // namespace autovr
