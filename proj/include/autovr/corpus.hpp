#ifndef AUTOVR_CORPUS_HPP
#define AUTOVR_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "autovr/bundle.hpp"
#include "autovr/oracle.hpp"

// Deterministic fixture-corpus generation: random app bundles with nested
// dependencies, out-of-view events, physics clusters, guarded flows, and a
// brute-force reachability manifest for each bundle.

namespace autovr {

struct GeneratedBundle {
    std::string name; // "bundle_000", ...
    AppBundle bundle;
    std::vector<std::uint8_t> metadata; // encoded image bytes
    OracleResult oracle;                // ground truth at generation time
    // True when some flow is emitted only by events a random visible-UI
    // baseline cannot reach (out-of-view or physics).
    bool has_guarded_flow = false;
};

// Same (seed, count) always yields the same corpus. Throws ValidationError
// when count < 1.
std::vector<GeneratedBundle> generate_corpus(std::uint64_t seed, int count);

// Writes <out_dir>/<name>/{app.json, metadata.avrm} per bundle plus
// <out_dir>/manifest.json listing each bundle's oracle flows and events.
void write_corpus(const std::vector<GeneratedBundle>& corpus, std::uint64_t seed,
                  const std::string& out_dir);

} // namespace autovr

#endif
