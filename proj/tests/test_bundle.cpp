#include <doctest.h>

#include <filesystem>

#include "autovr/errors.hpp"
#include "autovr/harness.hpp"
#include "autovr/runtime.hpp"
#include "fixtures.hpp"

using namespace autovr;
using namespace autovr::tests;

TEST_CASE("bundle json round trip preserves the definition") {
    const FixtureApp app = make_custom_app();
    const json doc = bundle_to_json(app.bundle);
    const AppBundle back = bundle_from_json(doc);
    CHECK(bundle_to_json(back) == doc);
    CHECK(back.scenes.size() == app.bundle.scenes.size());
    CHECK(back.classes.size() == app.bundle.classes.size());
    CHECK(back.method_bodies.size() == app.bundle.method_bodies.size());
    CHECK(back.timing.ui_event_delay_ms == 1000);
    CHECK(back.metadata_path == "metadata.avrm");

    // Spot-check one effect script survives with operations intact.
    for (const auto& [offset, script] : app.bundle.method_bodies) {
        const auto it = back.method_bodies.find(offset);
        REQUIRE(it != back.method_bodies.end());
        REQUIRE(it->second.size() == script.size());
        for (std::size_t i = 0; i < script.size(); ++i) CHECK(it->second[i].op == script[i].op);
    }
}

TEST_CASE("bundle json rejects malformed documents") {
    CHECK_THROWS_AS(bundle_from_json(json::object()), ValidationError);
    json doc = bundle_to_json(make_minimal_app().bundle);
    doc["scenes"][0]["objects"][0]["components"][0]["kind"] = "nonsense";
    CHECK_THROWS_AS(bundle_from_json(doc), ValidationError);
}

TEST_CASE("save and load a bundle directory") {
    const FixtureApp app = make_custom_app();
    const std::string dir = "bundle_io_test";
    std::filesystem::remove_all(dir);
    save_bundle_dir(app.bundle, encode_metadata(app.image), dir);
    CHECK(std::filesystem::exists(dir + "/app.json"));
    CHECK(std::filesystem::exists(dir + "/metadata.avrm"));

    const LoadedApp loaded = load_app(dir);
    CHECK(bundle_to_json(loaded.bundle) == bundle_to_json(app.bundle));
    CHECK(encode_metadata(loaded.image) == encode_metadata(app.image));
    CHECK(loaded.gft.size() == app.gft.size());
    std::filesystem::remove_all(dir);
}

TEST_CASE("load_app fails cleanly on a missing directory") {
    CHECK_THROWS_AS(load_app("does_not_exist_anywhere"), ValidationError);
}

TEST_CASE("fault codes round trip through their names") {
    CHECK(to_string(FaultCode::Maperr) == "MAPERR");
    CHECK(to_string(FaultCode::Accerr) == "ACCERR");
    CHECK(fault_code_from_string("MAPERR") == FaultCode::Maperr);
    CHECK(fault_code_from_string("ACCERR") == FaultCode::Accerr);
    CHECK_THROWS_AS(fault_code_from_string("sigbus"), ValidationError);
}

TEST_CASE("bundle validation names the violation") {
    FixtureApp app = make_minimal_app();

    SUBCASE("component class missing from the table") {
        app.bundle.scenes[0].objects[0].components[0].class_name = "Ghost";
        CHECK_THROWS_AS(validate_bundle(app.bundle, app.gft), ValidationError);
    }
    SUBCASE("persistent callback without a function-table entry") {
        app.bundle.scenes[0]
            .objects[0]
            .components[0]
            .events.at("on_click")
            .persistent_calls[0]
            .offset = 0xDEAD;
        CHECK_THROWS_AS(validate_bundle(app.bundle, app.gft), ValidationError);
    }
    SUBCASE("load_scene target out of range") {
        app.bundle.method_bodies.begin()->second.push_back(Effect::load_scene(42));
        CHECK_THROWS_AS(validate_bundle(app.bundle, app.gft), ValidationError);
    }
    SUBCASE("child path without its parent object") {
        app.bundle.scenes[0].objects.push_back(make_object("Nowhere/Child", true, true));
        CHECK_THROWS_AS(validate_bundle(app.bundle, app.gft), ValidationError);
    }
    SUBCASE("the untouched fixture validates") {
        CHECK_NOTHROW(validate_bundle(app.bundle, app.gft));
    }
}

TEST_CASE("object path helpers") {
    GameObjectDef o;
    o.path = "Menu/Options/Turn";
    CHECK(o.name() == "Turn");
    CHECK(o.parent_path() == "Menu/Options");
    o.path = "Menu";
    CHECK(o.name() == "Menu");
    CHECK(o.parent_path().empty());
}
