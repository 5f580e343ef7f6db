#ifndef AUTOVR_ERRORS_HPP
#define AUTOVR_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace autovr {

// Base for all typed failures raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- metadata image / function table ----

struct BadMagicError : Error {
    explicit BadMagicError(const std::string& msg) : Error(msg) {}
};

struct TruncatedImageError : Error {
    explicit TruncatedImageError(const std::string& msg) : Error(msg) {}
};

// Carries the index of the offending record so callers can point at it.
struct IndexOutOfBoundsError : Error {
    IndexOutOfBoundsError(const std::string& msg, std::size_t record_index)
        : Error(msg), record(record_index) {}
    std::size_t record;
};

// Two distinct qualified names claim the same code offset.
struct OffsetCollisionError : Error {
    OffsetCollisionError(const std::string& msg, std::uint64_t at)
        : Error(msg), offset(at) {}
    std::uint64_t offset;
};

// ---- bundle / runtime ----

// First structural violation found while loading a bundle; `where` is a
// JSON-pointer-ish path into the definition.
struct ValidationError : Error {
    ValidationError(const std::string& msg, const std::string& at)
        : Error(msg + " (at " + at + ")"), where(at) {}
    std::string where;
};

struct UnknownSceneError : Error {
    UnknownSceneError(const std::string& msg, int scene) : Error(msg), index(scene) {}
    int index;
};

struct UnknownOffsetError : Error {
    UnknownOffsetError(const std::string& msg, std::uint64_t at)
        : Error(msg), offset(at) {}
    std::uint64_t offset;
};

struct ArityMismatchError : Error {
    ArityMismatchError(const std::string& msg, std::size_t want, std::size_t got)
        : Error(msg), expected(want), actual(got) {}
    std::size_t expected;
    std::size_t actual;
};

// ---- introspection facade ----

// Handle minted under an older scene epoch was used after a reload.
struct StaleHandleError : Error {
    explicit StaleHandleError(const std::string& msg) : Error(msg) {}
};

struct NoSuchFieldError : Error {
    NoSuchFieldError(const std::string& msg, const std::string& field_name)
        : Error(msg), field(field_name) {}
    std::string field;
};

// ---- physics ----

struct IllegalPartnerError : Error {
    explicit IllegalPartnerError(const std::string& msg) : Error(msg) {}
};

// ---- reporting ----

struct UnsupportedFormatError : Error {
    explicit UnsupportedFormatError(const std::string& msg) : Error(msg) {}
};

} // namespace autovr

#endif
