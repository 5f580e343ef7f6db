#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "autovr/corpus.hpp"
#include "autovr/harness.hpp"
#include "fixtures.hpp"

using namespace autovr;
using namespace autovr::tests;

namespace {

std::set<std::pair<std::string, std::string>> flow_keys(const RunReport& report) {
    std::set<std::pair<std::string, std::string>> keys;
    for (const DataFlowRecord& r : report.unique_flows) keys.emplace(r.data_type, r.host);
    return keys;
}

std::set<std::string> invoked_events(const RunReport& report) {
    std::set<std::string> ids;
    for (const SceneCoverage& cov : report.scenes)
        ids.insert(cov.invoked_ids.begin(), cov.invoked_ids.end());
    return ids;
}

GlobalFunctionTable table_for(const GeneratedBundle& g) {
    const MetadataImage image = parse_metadata(g.metadata);
    return build_gft(image, Introspector::dynamic_methods(g.bundle.classes));
}

} // namespace

TEST_CASE("corpus generation is a pure function of seed and count") {
    const auto a = generate_corpus(42, 6);
    const auto b = generate_corpus(42, 6);
    REQUIRE(a.size() == 6);
    REQUIRE(b.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].metadata == b[i].metadata);
        CHECK(a[i].oracle.flows == b[i].oracle.flows);
        CHECK(a[i].oracle.events == b[i].oracle.events);
        CHECK(a[i].has_guarded_flow == b[i].has_guarded_flow);
        CHECK(bundle_to_json(a[i].bundle) == bundle_to_json(b[i].bundle));
    }
    // A different seed changes the corpus.
    const auto c = generate_corpus(43, 6);
    bool any_diff = false;
    for (std::size_t i = 0; i < c.size(); ++i)
        any_diff |= bundle_to_json(a[i].bundle) != bundle_to_json(c[i].bundle);
    CHECK(any_diff);
}

TEST_CASE("corpus generation rejects non-positive counts") {
    CHECK_THROWS_AS(generate_corpus(1, 0), ValidationError);
    CHECK_THROWS_AS(generate_corpus(1, -4), ValidationError);
}

TEST_CASE("every generated bundle validates and carries a guarded flow") {
    const auto corpus = generate_corpus(7, 20);
    REQUIRE(corpus.size() == 20);
    for (const GeneratedBundle& g : corpus) {
        CAPTURE(g.name);
        CHECK_NOTHROW(validate_bundle(g.bundle, table_for(g)));
        CHECK(g.has_guarded_flow);
        CHECK_FALSE(g.oracle.flows.empty());
        CHECK_FALSE(g.oracle.events.empty());
        // Metadata bytes round-trip through the binary format.
        const MetadataImage image = parse_metadata(g.metadata);
        CHECK(encode_metadata(image) == g.metadata);
    }
}

TEST_CASE("exploration recovers exactly the brute-force reachable flows") {
    const auto corpus = generate_corpus(1234, 20);
    for (const GeneratedBundle& g : corpus) {
        CAPTURE(g.name);
        const RunReport report = run_explore(g.bundle, table_for(g), /*seed=*/3);
        CHECK_FALSE(report.budget_exhausted);
        CHECK(flow_keys(report) == g.oracle.flows);
        CHECK(invoked_events(report) == g.oracle.events);
    }
}

TEST_CASE("the random baseline finds a strict subset of flows on guarded bundles") {
    const auto corpus = generate_corpus(99, 20);
    for (const GeneratedBundle& g : corpus) {
        CAPTURE(g.name);
        const GlobalFunctionTable gft = table_for(g);
        const RunReport explored = run_explore(g.bundle, gft, 3);
        const std::set<std::pair<std::string, std::string>> superset = flow_keys(explored);

        const RunReport monkeyed = run_monkey(g.bundle, gft, 3, 60'000);
        const std::set<std::pair<std::string, std::string>> subset = flow_keys(monkeyed);

        CHECK(std::includes(superset.begin(), superset.end(), subset.begin(), subset.end()));
        // Guarded flows keep the baseline strictly behind.
        CHECK(subset.size() < superset.size());
    }
}

TEST_CASE("a written corpus reloads into the same apps and manifest") {
    namespace fs = std::filesystem;
    const std::string dir = "corpus_io_test";
    fs::remove_all(dir);
    const auto corpus = generate_corpus(5, 3);
    write_corpus(corpus, 5, dir);

    std::ifstream mf(dir + "/manifest.json");
    REQUIRE(mf.good());
    const nlohmann::json manifest = nlohmann::json::parse(mf);
    CHECK(manifest.at("schema") == "autovr-corpus/1");
    CHECK(manifest.at("seed") == 5);
    CHECK(manifest.at("count") == 3);
    REQUIRE(manifest.at("bundles").size() == 3);

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GeneratedBundle& g = corpus[i];
        const nlohmann::json& entry = manifest.at("bundles").at(i);
        CHECK(entry.at("name") == g.name);
        CHECK(entry.at("guarded") == g.has_guarded_flow);
        REQUIRE(entry.at("flows").size() == g.oracle.flows.size());
        std::set<std::pair<std::string, std::string>> listed;
        for (const auto& f : entry.at("flows"))
            listed.emplace(f.at(0).get<std::string>(), f.at(1).get<std::string>());
        CHECK(listed == g.oracle.flows);
        std::set<std::string> events(entry.at("events").begin(), entry.at("events").end());
        CHECK(events == g.oracle.events);

        const LoadedApp app = load_app(dir + "/" + g.name);
        CHECK(bundle_to_json(app.bundle) == bundle_to_json(g.bundle));
        CHECK(encode_metadata(app.image) == g.metadata);
    }

    // The directory overload drives the same pipeline end to end.
    const RunReport report = run_explore(dir + "/" + corpus[0].name, 3);
    CHECK(flow_keys(report) == corpus[0].oracle.flows);
    fs::remove_all(dir);
}

TEST_CASE("the oracle counts startup emissions and does not count startup hooks as events") {
    BundleBuilder b;
    add_core_classes(b);
    ClassDef boot;
    boot.name = "Boot";
    b.add_class(std::move(boot));
    ClassDef logic;
    logic.name = "Logic";
    b.add_class(std::move(logic));
    b.add_method("Boot", "Start", {},
                 {Effect::emit_flow("DEVICE_INFO", "init.example", "boot")});
    const std::uint64_t off = b.add_method(
        "Logic", "OnPress", {}, {Effect::emit_flow("EMAIL", "press.example", "press")});
    SceneDef scene;
    scene.index = 0;
    GameObjectDef controller = make_object("Controller", true, true);
    controller.components.push_back(make_script("Boot"));
    scene.objects.push_back(std::move(controller));
    GameObjectDef btn = make_object("Press", true, true);
    btn.components.push_back(make_button(off, "Press"));
    scene.objects.push_back(std::move(btn));
    b.bundle().scenes.push_back(std::move(scene));

    const OracleResult oracle = oracle_reachable(b.bundle());
    CHECK(oracle.flows == std::set<std::pair<std::string, std::string>>{
                              {"DEVICE_INFO", "init.example"}, {"EMAIL", "press.example"}});
    REQUIRE(oracle.events.size() == 1);
    CHECK(oracle.events.begin()->rfind("Press#", 0) == 0);
}
