#ifndef AUTOVR_ORACLE_HPP
#define AUTOVR_ORACLE_HPP

#include <set>
#include <string>
#include <utility>

#include "autovr/bundle.hpp"

// Brute-force reachability over app definitions: an exhaustive breadth-first
// enumeration of enabled-set states driven purely by effect scripts. This is
// the ground truth the exploration pipeline is compared against, so it reads
// scene definitions directly and shares none of the runtime machinery.

namespace autovr {

struct OracleResult {
    // Unique sensitive flows reachable from any scene's initial state,
    // keyed (data type, destination host). Startup-emitted flows included.
    std::set<std::pair<std::string, std::string>> flows;
    // Invokable event ids reachable in some state, same id scheme as the
    // explorer (owner path + offset + source for UI, path:kind for physics).
    std::set<std::string> events;
};

OracleResult oracle_reachable(const AppBundle& bundle);

} // namespace autovr

#endif
