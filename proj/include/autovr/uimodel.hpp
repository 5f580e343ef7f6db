#ifndef AUTOVR_UIMODEL_HPP
#define AUTOVR_UIMODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "autovr/introspect.hpp"

// Generative UI event model: identifies interactable components, walks their
// fields for callback containers, and extracts executable callbacks from
// both the serialized and the runtime-added halves.

namespace autovr {

enum class CallbackSource { Persistent, Runtime };

std::string to_string(CallbackSource s);

// One callback container located during the field walk.
struct FoundEvent {
    std::string owner_path;
    std::string component_class;
    std::string field_path; // dotted path of the declaring field chain
    UnityEventValue value;
    bool owner_active = true;
};

// A component is interactable when its class reaches IEventSystemHandler
// anywhere in the transitive ancestry/interface closure.
bool is_ui_component(const Introspector& in, const std::string& class_name);

// Depth-first field walk over the object's UI components. Recursion into a
// declared class type happens at most once per type along one walk (visited
// set keyed by declared type, not instance), so recursive types terminate;
// callback containers themselves are collected unconditionally. Disabled
// owners are walked too and flagged via owner_active.
std::vector<FoundEvent> find_unity_events(const Introspector& in, const ObjectHandle& object);

struct EventCallback {
    std::string id; // unique per (owner path, component class, offset, source)
    std::string owner_path;
    std::string component_class;
    std::string field_path;
    std::uint64_t offset = 0;
    CallbackSource source = CallbackSource::Persistent;
    std::vector<std::string> signature; // parameter type names from the GFT
    bool enabled = true;                // owner effectively enabled
};

struct ExtractionResult {
    std::vector<EventCallback> callbacks;
    // Offsets without a function-table entry: reported, never silently
    // dropped.
    std::vector<std::uint64_t> unresolved;
    // Callbacks present in both containers collapse to one persistent-source
    // entry; the ambiguity is counted here.
    std::size_t both_container_duplicates = 0;
};

std::string callback_id(const std::string& owner_path, const std::string& component_class,
                        std::uint64_t offset, CallbackSource source);

ExtractionResult extract_callbacks(const std::vector<FoundEvent>& events,
                                   const GlobalFunctionTable& gft);

// Convenience: full walk + extraction over every object in the snapshot.
ExtractionResult extract_scene_callbacks(const Introspector& in, const GlobalFunctionTable& gft);

} // namespace autovr

#endif
