#ifndef AUTOVR_PHYSICS_HPP
#define AUTOVR_PHYSICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autovr/introspect.hpp"

// Generative physics event model. Events are episodic and positionless: an
// episode against one partner is one Enter, floor(collision_delay/tick)
// Stays, and one Exit for each callback the target implements.

namespace autovr {

enum class PhysicsKind { Trigger, Collision };

// Physical role of a collider: rigidbody (non-kinematic), static (no
// rigidbody), or kinematic rigidbody.
enum class ColliderKind { RigidBody, Static, Kinematic };

std::string to_string(PhysicsKind k);
std::string to_string(ColliderKind k);

ColliderKind collider_kind(const ColliderSpec& spec);

struct PhysicsEvent {
    PhysicsKind kind = PhysicsKind::Trigger;
    std::string id; // "<path>:trigger" or "<path>:collision"
    std::string target_path;
    ColliderSpec collider;
    std::optional<std::uint64_t> enter, stay, exit; // implemented callbacks
    bool enabled = true;
};

// Trigger: collider with is_trigger and at least one OnTrigger* callback.
// Collision: rigidbody collider, not a trigger, at least one OnCollision*.
// The classes are mutually exclusive; anything else is not a physics event.
std::optional<PhysicsEvent> classify_physics(const Introspector& in, const ObjectHandle& object);

// The 2x3x3 interaction rule matrix: can an event of this kind fire between
// an actor and a partner of these collider kinds?
bool partner_allowed(PhysicsKind kind, ColliderKind actor, ColliderKind partner);

// Partners an event can legally fire against right now: live enabled
// colliders other than the actor, matrix-allowed, and (for collision events)
// not triggers, in scene-definition order.
std::vector<ObjectHandle> legal_partners(const Introspector& in, const PhysicsEvent& event);

struct PhysicsInvocationReport {
    std::string event_id;
    std::vector<std::string> partners; // episode order
    std::uint64_t episodes = 0;
    std::uint64_t enter_calls = 0;
    std::uint64_t stay_calls = 0;
    std::uint64_t exit_calls = 0;
    InvocationOutcome combined; // merged effect observations

    std::uint64_t callback_invocations() const { return enter_calls + stay_calls + exit_calls; }
};

// Runs one episode per partner. Each episode advances the clock by
// collision_delay_ms, attributed to trigger_execution or
// collision_execution. Throws IllegalPartnerError if any partner fails the
// pre-checks above.
PhysicsInvocationReport execute_physics_event(AppRuntime& rt, const Introspector& in,
                                              const PhysicsEvent& event,
                                              const std::vector<ObjectHandle>& partners);

} // namespace autovr

#endif
