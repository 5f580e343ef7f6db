#ifndef AUTOVR_METADATA_HPP
#define AUTOVR_METADATA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autovr/errors.hpp"

// Static metadata image (.avrm) codec and the Global Function Table that
// merges the static view with methods enumerated live from the app.
//
// Binary layout is documented in docs/avrm_format.md and must round-trip:
// encode(parse(bytes)) == bytes for every valid image.

namespace autovr {

inline constexpr std::uint32_t kNoParent = 0xFFFFFFFFu;

struct ClassRecord {
    std::uint32_t name = 0;       // string table index
    std::uint32_t ns = 0;         // string table index ("" for global)
    std::uint32_t parent = kNoParent; // class record index or kNoParent
    std::vector<std::uint32_t> interfaces; // string table indices
};

struct FieldRecord {
    std::uint32_t name = 0;  // string table index
    std::uint32_t owner = 0; // class record index
    std::uint32_t type = 0;  // string table index (type name)
    bool is_static = false;
};

struct MethodRecord {
    std::uint32_t name = 0;   // string table index
    std::uint32_t owner = 0;  // class record index
    std::uint64_t offset = 0; // code address, unique across the image
    std::uint32_t param_count = 0;
    bool reflection_only = false; // visible to static metadata only
};

struct MetadataImage {
    std::uint32_t version = 1;
    std::vector<std::string> strings;
    std::vector<ClassRecord> classes;
    std::vector<FieldRecord> fields;
    std::vector<MethodRecord> methods;

    // Checks index bounds and offset uniqueness. Throws IndexOutOfBoundsError
    // or OffsetCollisionError.
    void validate() const;

    // Qualified "Class$$Method" name of a method record.
    std::string qualified_name(const MethodRecord& m) const;
};

// Throws BadMagicError / TruncatedImageError / IndexOutOfBoundsError /
// OffsetCollisionError. A successfully parsed image always validates.
MetadataImage parse_metadata(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> encode_metadata(const MetadataImage& image);

// Where a function-table entry was seen.
enum class MethodSource { Static, Dynamic, Both };

// One method as enumerated from the live app (reflection-only records are
// invisible to this view).
struct DynamicMethod {
    std::string qualified_name;
    std::uint64_t offset = 0;
    std::vector<std::string> params; // parameter type names
};

struct MethodEntry {
    std::string qualified_name;
    std::vector<std::string> params;
    MethodSource source = MethodSource::Static;
};

// offset -> method descriptor, total over both input views.
class GlobalFunctionTable {
public:
    const MethodEntry* lookup(std::uint64_t offset) const;
    const std::map<std::uint64_t, MethodEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    void insert(std::uint64_t offset, MethodEntry entry);

private:
    std::map<std::uint64_t, MethodEntry> entries_;
};

// Merges the static image with dynamically enumerated methods.
// Same offset + same name in both views -> Source::Both.
// Same offset + different name -> OffsetCollisionError.
// Static records carry only an arity, so a static-only entry gets a
// placeholder signature of param_count generic object parameters; when both
// views agree the dynamic (typed) signature wins.
GlobalFunctionTable build_gft(const MetadataImage& image,
                              const std::vector<DynamicMethod>& dynamic_methods);

} // namespace autovr

#endif
