#include <doctest.h>

#include <random>

#include "autovr/corpus.hpp"
#include "autovr/errors.hpp"
#include "autovr/explorer.hpp"
#include "autovr/runtime.hpp"
#include "fixtures.hpp"

using namespace autovr;
using namespace autovr::tests;

namespace {

AppRuntime make_runtime(const FixtureApp& app) { return AppRuntime(app.bundle, app.gft); }

std::vector<bool> enabled_flags(const AppRuntime& rt) {
    std::vector<bool> flags;
    for (std::size_t i = 0; i < rt.object_count(); ++i)
        flags.push_back(rt.object_enabled(int(i)));
    return flags;
}

std::vector<bool> authored_flags(const AppRuntime& rt) {
    std::vector<bool> flags;
    for (std::size_t i = 0; i < rt.object_count(); ++i)
        flags.push_back(rt.object_def(int(i)).enabled);
    return flags;
}

} // namespace

TEST_CASE("construction positions scene 0 at clock zero and runs startup hooks") {
    const FixtureApp app = make_custom_app();
    AppRuntime rt = make_runtime(app);
    CHECK(rt.current_scene() == 0);
    CHECK(rt.clock_ms() == 0);
    // The boot hook's flow is already in the sink, timestamped at zero.
    REQUIRE_FALSE(rt.sink().log().empty());
    CHECK(rt.sink().log()[0].data_type == "DEVICE_INFO");
    CHECK(rt.sink().log()[0].timestamp_ms == 0);
    CHECK(rt.sink().log()[0].event_id == "scene:0");
    // The startup hook also registered the runtime click listener.
    const auto start_obj = rt.find_object("Menu/StartButton");
    REQUIRE(start_obj.has_value());
    CHECK(rt.runtime_calls(*start_obj, 0, "on_click").size() == 1);
}

TEST_CASE("construction rejects invalid bundles") {
    FixtureApp app = make_minimal_app();
    app.bundle.scenes[0].objects[0].components[0].class_name = "Ghost";
    CHECK_THROWS_AS(make_runtime(app), ValidationError);
}

TEST_CASE("load_scene charges the load wait and bumps the epoch") {
    const FixtureApp app = make_custom_app();
    AppRuntime rt = make_runtime(app);
    const std::uint64_t before = rt.epoch();
    rt.load_scene(1);
    CHECK(rt.current_scene() == 1);
    CHECK(rt.epoch() == before + 1);
    CHECK(rt.clock_ms() == 5000);
    CHECK(rt.stage_times().scene_loading == 5000);
    CHECK_THROWS_AS(rt.load_scene(99), UnknownSceneError);
}

TEST_CASE("invoke_method applies scripts and reports outcomes") {
    const FixtureApp app = make_custom_app();
    AppRuntime rt = make_runtime(app);
    const auto options = app.bundle.find_class("MenuLogic");
    REQUIRE(options != nullptr);
    const auto method = ClassTable(app.bundle.classes).find_method("MenuLogic", "OnOptionsClick");
    REQUIRE(method.has_value());

    const InvocationOutcome out = rt.invoke_method(method->offset, {}, InvocationKind::Ui, "t");
    CHECK(out.enabled.size() == 4);
    CHECK(out.disabled.size() == 2);
    CHECK(out.clock_advance_ms == 1000); // fixture ui delay
    CHECK(rt.stage_times().ui_execution == 1000);

    const auto turn = rt.find_object("Menu/OptionsButton/Turn");
    REQUIRE(turn.has_value());
    CHECK(rt.object_enabled(*turn));
    const auto start = rt.find_object("Menu/StartButton");
    REQUIRE(start.has_value());
    CHECK_FALSE(rt.object_enabled(*start));
}

TEST_CASE("invoke_method validates offset and arity") {
    const FixtureApp app = make_minimal_app();
    AppRuntime rt = make_runtime(app);
    CHECK_THROWS_AS(rt.invoke_method(0xDEAD, {}), UnknownOffsetError);
    const std::uint64_t offset = app.bundle.method_bodies.begin()->first;
    CHECK_THROWS_AS(rt.invoke_method(offset, {ArgumentValue{true}}), ArityMismatchError);
}

TEST_CASE("fault effects abort the rest of the script and are recorded") {
    BundleBuilder b;
    add_core_classes(b);
    ClassDef logic;
    logic.name = "Crashy";
    b.add_class(std::move(logic));
    const std::uint64_t off = b.add_method(
        "Crashy", "Boom", {},
        {Effect::emit_flow("EMAIL", "a.example", "1"), Effect::fault(FaultCode::Accerr),
         Effect::emit_flow("GPS", "b.example", "2")});
    SceneDef scene;
    scene.index = 0;
    GameObjectDef btn = make_object("Btn", true, true);
    btn.components.push_back(make_button(off, "Btn"));
    scene.objects.push_back(std::move(btn));
    b.bundle().scenes.push_back(std::move(scene));
    FixtureApp app = seal(b);

    AppRuntime rt = make_runtime(app);
    const InvocationOutcome out = rt.invoke_method(off, {}, InvocationKind::Ui, "boom-evt");
    CHECK(out.flows.size() == 1); // the post-fault flow never runs
    REQUIRE(out.faults.size() == 1);
    CHECK(out.faults[0] == FaultCode::Accerr);
    REQUIRE(rt.sink().faults().size() == 1);
    CHECK(rt.sink().faults()[0].event_id == "boom-evt");
    CHECK(rt.sink().unique().size() == 1);
}

TEST_CASE("load_scene effects transition and are guarded during loading") {
    const FixtureApp app = make_custom_app();
    AppRuntime rt = make_runtime(app);
    const auto apply = ClassTable(app.bundle.classes).find_method("MenuLogic", "OnApply");
    REQUIRE(apply.has_value());
    const InvocationOutcome out = rt.invoke_method(apply->offset, {});
    REQUIRE(out.scene_transitions == std::vector<int>{1});
    CHECK(rt.current_scene() == 1);
    // ui delay + load wait both charged
    CHECK(rt.clock_ms() == 1000 + 5000);
}

TEST_CASE("stage accounting equals the final clock") {
    const FixtureApp app = make_custom_app();
    AppRuntime rt = make_runtime(app);
    rt.load_scene(1);
    rt.advance_clock(40, Stage::Miscellaneous);
    rt.advance_clock(300, Stage::CollisionExecution);
    CHECK(rt.stage_times().total() == rt.clock_ms());
    CHECK(rt.stage_times().miscellaneous == 40);
    CHECK(rt.stage_times().collision_execution == 300);
}

TEST_CASE("snapshot handles carry the epoch and definition order") {
    const FixtureApp app = make_minimal_app();
    AppRuntime rt = make_runtime(app);
    const auto handles = rt.snapshot_objects();
    REQUIRE(handles.size() == rt.object_count());
    for (std::size_t i = 0; i < handles.size(); ++i) {
        CHECK(handles[i].epoch == rt.epoch());
        CHECK(handles[i].object == int(i));
        CHECK_FALSE(handles[i].is_component());
    }
}

// Reset soundness: after arbitrary mutations, reloading restores exactly the
// authored enabled flags, and a freshly constructed runtime agrees.
TEST_CASE("scene reload restores the pristine state after random mutations") {
    const auto corpus = generate_corpus(/*seed=*/21, /*count=*/6);
    std::mt19937_64 rng(99);
    int sequences = 0;
    for (int round = 0; round < 120; ++round) {
        const GeneratedBundle& g = corpus[round % corpus.size()];
        const MetadataImage image = parse_metadata(g.metadata);
        const GlobalFunctionTable gft =
            build_gft(image, Introspector::dynamic_methods(g.bundle.classes));
        AppRuntime rt(g.bundle, gft);

        std::vector<std::uint64_t> offsets;
        for (const auto& [off, body] : g.bundle.method_bodies) offsets.push_back(off);
        REQUIRE_FALSE(offsets.empty());

        const int scene = int(bounded(rng, g.bundle.scenes.size()));
        rt.load_scene(scene);
        const std::vector<bool> pristine = enabled_flags(rt);
        CHECK(pristine == authored_flags(rt));

        const std::uint64_t steps = 1 + bounded(rng, 12);
        for (std::uint64_t s = 0; s < steps; ++s) {
            const std::uint64_t off = offsets[bounded(rng, offsets.size())];
            const MethodEntry* entry = rt.function_table().lookup(off);
            REQUIRE(entry != nullptr);
            rt.invoke_method(off, std::vector<ArgumentValue>(entry->params.size()),
                             InvocationKind::Ui, "mutate");
        }
        rt.load_scene(scene);
        CHECK(enabled_flags(rt) == authored_flags(rt));
        CHECK(enabled_flags(rt) == pristine);
        ++sequences;
    }
    CHECK(sequences == 120);
}
