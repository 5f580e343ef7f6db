#ifndef AUTOVR_BUILDER_HPP
#define AUTOVR_BUILDER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "autovr/bundle.hpp"
#include "autovr/metadata.hpp"

// Incremental bundle construction used by the corpus generator and test
// fixtures. Keeps the definition view and the static metadata image in sync:
// every class, field, and method is registered in both from one call.

namespace autovr {

class BundleBuilder {
public:
    BundleBuilder();

    std::uint32_t intern(const std::string& s);

    void add_class(ClassDef def);

    // Registers the method in the image and (unless reflection-only) in the
    // live class view, and attaches its effect script. Offsets are assigned
    // sequentially, so builds are deterministic.
    std::uint64_t add_method(const std::string& cls, const std::string& name,
                             std::vector<std::string> params, EffectScript body,
                             bool reflection_only = false);

    AppBundle& bundle() { return bundle_; }
    const MetadataImage& image() const { return image_; }

private:
    AppBundle bundle_;
    MetadataImage image_;
    std::map<std::string, std::uint32_t> string_index_;
    std::map<std::string, std::uint32_t> class_index_;
    std::uint64_t next_offset_ = 0x1000;
};

// Common component shorthands for fixture construction.
GameObjectDef make_object(std::string path, bool enabled, bool in_view);
ComponentDef make_button(std::uint64_t offset, const std::string& owner_path);
ComponentDef make_collider(bool is_trigger, bool has_rigidbody, bool is_kinematic);
ComponentDef make_script(std::string class_name);

// The Button and BoxCollider classes every fixture starts from.
void add_core_classes(BundleBuilder& b);

} // namespace autovr

#endif
