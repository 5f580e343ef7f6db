#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "autovr/sinks.hpp"

using namespace autovr;

TEST_CASE("classification follows the table, then the VR_ prefix rule, then Other") {
    const CategoryTable t = CategoryTable::defaults();
    using P = std::pair<FlowCategory, bool>;
    for (const char* l : {"EMAIL", "USER_ID", "DEVICE_ID", "GPS", "SERIAL_NUMBER", "ANDROID_ID",
                          "LOCATION"})
        CHECK(t.classify(l) == P{FlowCategory::Pii, true});
    for (const char* l : {"DEVICE_INFO", "GPU_INFO", "CPU_INFO", "SCREEN_INFO", "BUILD_INFO",
                          "APP_INFO", "OS_INFO", "LANGUAGE", "ANALYTIC", "SESSION_DATA"})
        CHECK(t.classify(l) == P{FlowCategory::Fingerprinting, true});
    for (const char* l : {"VR_FIELD_OF_VIEW", "VR_PLAY_AREA", "VR_USER_DEVICE_IPD", "POSITION",
                          "TRACKING", "SENSOR_DATA"})
        CHECK(t.classify(l) == P{FlowCategory::VrSensory, true});

    // VR_-prefixed labels map to the sensory category even when unlisted.
    CHECK(t.classify("VR_EYE_GAZE") == P{FlowCategory::VrSensory, true});
    // Anything else unlisted is Other and flagged unknown.
    CHECK(t.classify("FOO") == P{FlowCategory::Other, false});
    CHECK(t.classify("") == P{FlowCategory::Other, false});

    CategoryTable o = CategoryTable::defaults();
    o.set("ANALYTIC", FlowCategory::Other); // ambiguous label, reassignable
    CHECK(o.classify("ANALYTIC") == P{FlowCategory::Other, true});
}

TEST_CASE("the shipped category config matches the built-in defaults") {
    std::ifstream in(AUTOVR_CATEGORIES_CONF);
    REQUIRE(in.good());
    const CategoryTable shipped = CategoryTable::parse(in);
    const CategoryTable builtin = CategoryTable::defaults();
    for (const char* l :
         {"EMAIL",        "USER_ID",       "DEVICE_ID",        "GPS",
          "SERIAL_NUMBER", "ANDROID_ID",   "LOCATION",         "DEVICE_INFO",
          "GPU_INFO",     "CPU_INFO",      "SCREEN_INFO",      "BUILD_INFO",
          "APP_INFO",     "OS_INFO",       "PLATFORM_INFO",    "OPENGL_VERSION",
          "UNITY_VERSION", "SCRIPTING_BACKEND", "INSTALL_INFO", "EVENT_INFO",
          "LANGUAGE",     "JAIL",          "PLAY_SESSION",     "ANALYTIC",
          "COOKIE",       "SESSION_DATA",  "VR_FIELD_OF_VIEW", "VR_PLAY_AREA",
          "VR_USER_DEVICE_IPD", "POSITION", "TRACKING",        "SENSOR_DATA"}) {
        CAPTURE(l);
        CHECK(shipped.classify(l) == builtin.classify(l));
        CHECK(shipped.classify(l).second); // present in the file, not a fallback
    }
}

TEST_CASE("the category config grammar is key=value with comments and trimming") {
    std::istringstream in("# comment line\n"
                          "\n"
                          "EMAIL = PII\n"
                          "  TELEMETRY=Other  \n"
                          "\tSCANCODE = Fingerprinting\r\n"
                          "HAND_POSE=VRSensory\n");
    const CategoryTable t = CategoryTable::parse(in);
    using P = std::pair<FlowCategory, bool>;
    CHECK(t.classify("EMAIL") == P{FlowCategory::Pii, true});
    CHECK(t.classify("TELEMETRY") == P{FlowCategory::Other, true});
    CHECK(t.classify("SCANCODE") == P{FlowCategory::Fingerprinting, true});
    CHECK(t.classify("HAND_POSE") == P{FlowCategory::VrSensory, true});
    // A parsed table starts empty: defaults are not implicitly merged.
    CHECK(t.classify("GPS") == P{FlowCategory::Other, false});

    const auto parse_of = [](const std::string& text) {
        std::istringstream s(text);
        return CategoryTable::parse(s);
    };
    CHECK_THROWS_AS(parse_of("EMAIL\n"), ValidationError);
    CHECK_THROWS_AS(parse_of("=PII\n"), ValidationError);
    CHECK_THROWS_AS(parse_of("X=NotACategory\n"), ValidationError);
}

TEST_CASE("the payload digest matches the reference fnv1a-64 vectors") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("the sink keeps a full log and a keep-first unique set") {
    FlowSink sink;
    const DataFlowRecord& first =
        sink.record_flow("EMAIL", "ads.example", "user@site", "evt1", 5);
    CHECK(first.category == FlowCategory::Pii);
    CHECK_FALSE(first.unknown_type);
    CHECK(first.payload_digest == fnv1a64_hex("user@site"));
    CHECK(first.event_id == "evt1");
    CHECK(first.timestamp_ms == 5);

    sink.record_flow("EMAIL", "ads.example", "other@site", "evt2", 9); // duplicate key
    sink.record_flow("EMAIL", "cdn.example", "user@site", "evt3", 11); // new host
    sink.record_flow("MYSTERY", "ads.example", "??", "evt4", 12);      // unknown label

    CHECK(sink.log().size() == 4);
    REQUIRE(sink.unique().size() == 3);
    // Keep-first: the surviving record is the first emission, not the last.
    CHECK(sink.unique()[0].event_id == "evt1");
    CHECK(sink.unique()[0].timestamp_ms == 5);
    CHECK(sink.unique()[0].payload_digest == fnv1a64_hex("user@site"));

    const auto keys = sink.unique_keys();
    CHECK(keys == std::set<std::pair<std::string, std::string>>{
                      {"EMAIL", "ads.example"}, {"EMAIL", "cdn.example"},
                      {"MYSTERY", "ads.example"}});

    CHECK(sink.log()[3].category == FlowCategory::Other);
    CHECK(sink.log()[3].unknown_type);

    const auto uniq = sink.unique_by_category();
    CHECK(uniq.at(FlowCategory::Pii) == 2);
    CHECK(uniq.at(FlowCategory::Other) == 1);
    const auto total = sink.total_by_category();
    CHECK(total.at(FlowCategory::Pii) == 3);
    CHECK(total.at(FlowCategory::Other) == 1);
}

TEST_CASE("faults are recorded and bucketed by code") {
    FlowSink sink;
    sink.record_fault(FaultCode::Maperr, "evtA", 0);
    sink.record_fault(FaultCode::Maperr, "evtB", 1);
    sink.record_fault(FaultCode::Accerr, "evtC", 1);
    REQUIRE(sink.faults().size() == 3);
    CHECK(sink.faults()[0].event_id == "evtA");
    CHECK(sink.faults()[2].code == FaultCode::Accerr);
    CHECK(sink.faults()[2].scene_index == 1);
    const auto by_code = sink.faults_by_code();
    CHECK(by_code.at("MAPERR") == 2);
    CHECK(by_code.at("ACCERR") == 1);
}

TEST_CASE("ndjson export is one record per line in log order") {
    FlowSink sink;
    sink.record_flow("GPS", "geo.example", "12.5,42.1", "evt1", 100);
    sink.record_flow("WEIRD", "x.example", "?", "evt2", 200);
    sink.record_flow("GPS", "geo.example", "12.5,42.1", "evt1", 300);

    std::ostringstream out;
    sink.export_ndjson(out);
    std::istringstream lines(out.str());
    std::vector<nlohmann::json> docs;
    std::string line;
    while (std::getline(lines, line)) docs.push_back(nlohmann::json::parse(line));

    REQUIRE(docs.size() == 3);
    CHECK(docs[0]["data_type"] == "GPS");
    CHECK(docs[0]["host"] == "geo.example");
    CHECK(docs[0]["category"] == "PII");
    CHECK(docs[0]["payload_digest"] == fnv1a64_hex("12.5,42.1"));
    CHECK(docs[0]["event_id"] == "evt1");
    CHECK(docs[0]["timestamp_ms"] == 100);
    CHECK(docs[2]["timestamp_ms"] == 300);
    // The unknown flag appears only on flagged records.
    CHECK_FALSE(docs[0].contains("unknown_type"));
    CHECK(docs[1]["unknown_type"] == true);
    CHECK(docs[1]["category"] == "Other");
}

TEST_CASE("to_string names every category") {
    CHECK(to_string(FlowCategory::Pii) == "PII");
    CHECK(to_string(FlowCategory::Fingerprinting) == "Fingerprinting");
    CHECK(to_string(FlowCategory::VrSensory) == "VRSensory");
    CHECK(to_string(FlowCategory::Other) == "Other");
}
