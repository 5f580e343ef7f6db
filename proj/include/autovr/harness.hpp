#ifndef AUTOVR_HARNESS_HPP
#define AUTOVR_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "autovr/metadata.hpp"
#include "autovr/report.hpp"
#include "autovr/runtime.hpp"

// App loading and the two end-to-end drivers: the context-aware explorer and
// the random visible-UI baseline.

namespace autovr {

// A bundle directory resolved into everything a runtime needs: definitions,
// the parsed metadata image, and the merged function table.
struct LoadedApp {
    AppBundle bundle;
    MetadataImage image;
    GlobalFunctionTable gft;
};

std::vector<std::uint8_t> read_file(const std::string& path); // throws ValidationError
void write_file(const std::string& path, const std::string& bytes);

LoadedApp load_app(const std::string& dir);

// Explores every definition scene plus every scene reached by transitions:
// scene 0 first, then transition targets breadth-first, then any remaining
// definition scenes in index order. `budget_ms` overrides the bundle's
// configured budget when set.
RunReport run_explore(AppBundle bundle, GlobalFunctionTable gft, std::uint64_t seed,
                      std::optional<std::uint64_t> budget_ms = std::nullopt);
RunReport run_explore(const std::string& bundle_dir, std::uint64_t seed,
                      std::optional<std::uint64_t> budget_ms = std::nullopt);

// Random baseline: repeatedly picks a uniformly random enabled UI event
// whose owner is in the default view in the current scene. Never invokes
// physics events and never reloads scenes on its own; each pick costs one
// fixed-update tick (miscellaneous) plus the configured UI delay.
RunReport run_monkey(AppBundle bundle, GlobalFunctionTable gft, std::uint64_t seed,
                     std::optional<std::uint64_t> budget_ms = std::nullopt);
RunReport run_monkey(const std::string& bundle_dir, std::uint64_t seed,
                     std::optional<std::uint64_t> budget_ms = std::nullopt);

} // namespace autovr

#endif
