#include "autovr/physics.hpp"

#include <utility>

#include "autovr/errors.hpp"

namespace autovr {

namespace {

// First collider spec among the object's components, read through the
// introspection facade only.
std::optional<ColliderSpec> collider_of(const Introspector& in, const ObjectHandle& object) {
    const FieldValue comps = in.read_field(object, "components");
    for (const FieldValue& c : comps.as_list()) {
        const ObjectHandle& h = c.as_ref();
        if (!in.read_field(h, "is_collider").as_scalar().get<bool>()) continue;
        ColliderSpec spec;
        spec.is_trigger = in.read_field(h, "is_trigger").as_scalar().get<bool>();
        spec.has_rigidbody = in.read_field(h, "has_rigidbody").as_scalar().get<bool>();
        spec.is_kinematic = in.read_field(h, "is_kinematic").as_scalar().get<bool>();
        return spec;
    }
    return std::nullopt;
}

// Offset of the named callback if any component on the object implements it.
// The first component (definition order) carrying the method wins; within a
// class hierarchy the derived-most declaration wins.
std::optional<std::uint64_t> implemented_callback(const Introspector& in,
                                                  const ObjectHandle& object,
                                                  const std::string& name) {
    const FieldValue comps = in.read_field(object, "components");
    for (const FieldValue& c : comps.as_list()) {
        const std::string cls =
            in.read_field(c.as_ref(), "class").as_scalar().get<std::string>();
        std::optional<std::uint64_t> found;
        for (const InheritedMethod& m : in.enumerate_members(cls).methods) {
            if (m.method.name == name) found = m.method.offset;
        }
        if (found) return found;
    }
    return std::nullopt;
}

void merge_outcome(InvocationOutcome& into, const InvocationOutcome& from) {
    into.enabled.insert(into.enabled.end(), from.enabled.begin(), from.enabled.end());
    into.disabled.insert(into.disabled.end(), from.disabled.begin(), from.disabled.end());
    into.flows.insert(into.flows.end(), from.flows.begin(), from.flows.end());
    into.faults.insert(into.faults.end(), from.faults.begin(), from.faults.end());
    into.scene_transitions.insert(into.scene_transitions.end(), from.scene_transitions.begin(),
                                  from.scene_transitions.end());
    into.clock_advance_ms += from.clock_advance_ms;
}

// True when the partner may lawfully take part in an episode of this event.
bool partner_legal(const Introspector& in, const PhysicsEvent& event, ColliderKind actor,
                   const ObjectHandle& partner) {
    if (partner.path == event.target_path) return false;
    if (!in.object_active(partner)) return false;
    const std::optional<ColliderSpec> spec = collider_of(in, partner);
    if (!spec) return false;
    // Collision contact is solid-vs-solid: trigger colliders never serve as
    // collision partners even where the kind matrix would allow the pairing.
    if (event.kind == PhysicsKind::Collision && spec->is_trigger) return false;
    return partner_allowed(event.kind, actor, collider_kind(*spec));
}

} // namespace

std::string to_string(PhysicsKind k) {
    return k == PhysicsKind::Trigger ? "trigger" : "collision";
}

std::string to_string(ColliderKind k) {
    switch (k) {
    case ColliderKind::RigidBody:
        return "rigidbody";
    case ColliderKind::Static:
        return "static";
    case ColliderKind::Kinematic:
        return "kinematic";
    }
    return "static";
}

ColliderKind collider_kind(const ColliderSpec& spec) {
    if (!spec.has_rigidbody) return ColliderKind::Static;
    return spec.is_kinematic ? ColliderKind::Kinematic : ColliderKind::RigidBody;
}

std::optional<PhysicsEvent> classify_physics(const Introspector& in, const ObjectHandle& object) {
    const std::optional<ColliderSpec> spec = collider_of(in, object);
    if (!spec) return std::nullopt;

    PhysicsEvent ev;
    ev.target_path = object.path;
    ev.collider = *spec;
    ev.enabled = in.object_active(object);

    if (spec->is_trigger) {
        ev.kind = PhysicsKind::Trigger;
        ev.enter = implemented_callback(in, object, "OnTriggerEnter");
        ev.stay = implemented_callback(in, object, "OnTriggerStay");
        ev.exit = implemented_callback(in, object, "OnTriggerExit");
    } else if (spec->has_rigidbody) {
        ev.kind = PhysicsKind::Collision;
        ev.enter = implemented_callback(in, object, "OnCollisionEnter");
        ev.stay = implemented_callback(in, object, "OnCollisionStay");
        ev.exit = implemented_callback(in, object, "OnCollisionExit");
    } else {
        return std::nullopt;
    }

    if (!ev.enter && !ev.stay && !ev.exit) return std::nullopt;
    ev.id = ev.target_path + ":" + to_string(ev.kind);
    return ev;
}

bool partner_allowed(PhysicsKind kind, ColliderKind actor, ColliderKind partner) {
    const auto idx = [](ColliderKind k) -> int {
        switch (k) {
        case ColliderKind::RigidBody:
            return 0;
        case ColliderKind::Static:
            return 1;
        case ColliderKind::Kinematic:
            return 2;
        }
        return 1;
    };
    // Rows: actor (RB, Static, Kinematic); columns: partner (same order).
    static constexpr bool kTrigger[3][3] = {
        {false, false, false},
        {false, false, true},
        {false, true, true},
    };
    static constexpr bool kCollision[3][3] = {
        {true, true, true},
        {true, false, false},
        {true, false, false},
    };
    return kind == PhysicsKind::Trigger ? kTrigger[idx(actor)][idx(partner)]
                                        : kCollision[idx(actor)][idx(partner)];
}

std::vector<ObjectHandle> legal_partners(const Introspector& in, const PhysicsEvent& event) {
    std::vector<ObjectHandle> out;
    const ColliderKind actor = collider_kind(event.collider);
    for (const ObjectHandle& h : in.snapshot_objects()) {
        if (partner_legal(in, event, actor, h)) out.push_back(h);
    }
    return out;
}

PhysicsInvocationReport execute_physics_event(AppRuntime& rt, const Introspector& in,
                                              const PhysicsEvent& event,
                                              const std::vector<ObjectHandle>& partners) {
    PhysicsInvocationReport report;
    report.event_id = event.id;

    const ColliderKind actor = collider_kind(event.collider);
    for (const ObjectHandle& p : partners) {
        if (!partner_legal(in, event, actor, p)) {
            throw IllegalPartnerError("object '" + p.path + "' cannot partner event '" +
                                      event.id + "'");
        }
    }

    const TimingConfig& timing = rt.timing();
    const std::uint64_t stays =
        timing.fixed_update_ms == 0 ? 0 : timing.collision_delay_ms / timing.fixed_update_ms;
    const Stage stage =
        event.kind == PhysicsKind::Trigger ? Stage::TriggerExecution : Stage::CollisionExecution;

    const auto fire = [&](const std::optional<std::uint64_t>& offset, const ObjectHandle& partner,
                          std::uint64_t times, std::uint64_t& counter) {
        if (!offset) return;
        std::vector<ArgumentValue> args;
        if (const MethodEntry* entry = rt.function_table().lookup(*offset)) {
            args.resize(entry->params.size());
            if (!args.empty()) args[0] = ObjectRef{partner.path};
        }
        for (std::uint64_t i = 0; i < times; ++i) {
            merge_outcome(report.combined,
                          rt.invoke_method(*offset, args, InvocationKind::PhysicsCallback,
                                           event.id));
            counter += 1;
        }
    };

    for (const ObjectHandle& partner : partners) {
        rt.advance_clock(timing.collision_delay_ms, stage);
        report.partners.push_back(partner.path);
        report.episodes += 1;
        fire(event.enter, partner, 1, report.enter_calls);
        fire(event.stay, partner, stays, report.stay_calls);
        fire(event.exit, partner, 1, report.exit_calls);
    }
    return report;
}

} // namespace autovr
