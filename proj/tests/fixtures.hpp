#ifndef AUTOVR_TESTS_FIXTURES_HPP
#define AUTOVR_TESTS_FIXTURES_HPP

#include "autovr/builder.hpp"
#include "autovr/introspect.hpp"
#include "autovr/metadata.hpp"

// Hand-authored app fixtures with known ground truth. The reference app has
// three scenes:
//   scene 0 - menu UI: 12 events. Top level Start/Options/About/Quit; Start's
//     callback is registered at runtime (listener added in a startup hook)
//     and reveals a tutorial button; Options reveals four nested buttons and
//     disables Start and Quit; About reveals three; Quit sits outside the
//     default view. One nested button loads scene 1.
//   scene 1 - physics floor: 9 rigidbody cubes with collision callbacks, one
//     kinematic trigger cube, six callback-less trigger zones, one static
//     floor. 10 physics events, 81 cube-on-solid collision episodes.
//   scene 2 - mixed: 7 UI events (two out of view), 2 collision events,
//     2 trigger events.
// ui_mult / physics_mult clone the UI blocks / physics population to shift
// the stage-time balance without changing semantics.

namespace autovr::tests {

struct FixtureApp {
    AppBundle bundle;
    MetadataImage image;
    GlobalFunctionTable gft;
};

// Finalizes a builder into a fixture (encode-parse round trip + GFT merge).
FixtureApp seal(BundleBuilder& b);

FixtureApp make_custom_app(int ui_mult = 1, int physics_mult = 1);

// Depth-3 chain A -> B -> {C1, C2} where C1 disables C2: restoring for C2
// re-invokes B in place and lands exactly on the recorded state.
FixtureApp make_case2_app();

// Same chain, but C1 enables an extra event that B's re-invocation cannot
// remove: the restore diverges once and exploration re-discovers.
FixtureApp make_divergence_app();

// One scene, two flow-emitting buttons. For plumbing tests.
FixtureApp make_minimal_app();

} // namespace autovr::tests

#endif
