#include "autovr/corpus.hpp"

#include <cstdio>
#include <filesystem>
#include <iterator>
#include <map>
#include <random>

#include "autovr/builder.hpp"
#include "autovr/errors.hpp"
#include "autovr/explorer.hpp"
#include "autovr/harness.hpp"
#include "autovr/metadata.hpp"

namespace autovr {

namespace {

struct FlowAllocator {
    int n = 0;
    Effect next(const std::string& label) {
        const std::string host = "h" + std::to_string(n++) + ".sink.example";
        return Effect::emit_flow(label, host, label + "@" + host);
    }
};

const char* kPiiLabels[] = {"EMAIL", "USER_ID", "DEVICE_ID", "GPS", "ANDROID_ID", "LOCATION"};
const char* kFpLabels[] = {"DEVICE_INFO", "GPU_INFO", "SCREEN_INFO", "BUILD_INFO", "OS_INFO",
                           "LANGUAGE", "ANALYTIC"};
const char* kVrLabels[] = {"VR_FIELD_OF_VIEW", "VR_PLAY_AREA", "VR_USER_DEVICE_IPD", "POSITION",
                           "TRACKING"};

GeneratedBundle make_bundle(std::uint64_t seed, int index) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL +
                        static_cast<std::uint64_t>(index) * 0xD1B54A32D192ED03ULL + 1);
    BundleBuilder b;
    FlowAllocator flows;
    GeneratedBundle out;
    char name[32];
    std::snprintf(name, sizeof name, "bundle_%03d", index);
    out.name = name;

    const auto pii = [&] { return kPiiLabels[bounded(rng, std::size(kPiiLabels))]; };
    const auto fp = [&] { return kFpLabels[bounded(rng, std::size(kFpLabels))]; };
    const auto vr = [&] { return kVrLabels[bounded(rng, std::size(kVrLabels))]; };
    const auto unknown = [&] { return "X_CUSTOM_" + std::to_string(bounded(rng, 4)); };
    const auto any_label = [&]() -> std::string {
        const std::uint64_t r = bounded(rng, 10);
        if (r < 4) return pii();
        if (r < 7) return fp();
        if (r < 9) return vr();
        return unknown();
    };

    add_core_classes(b);

    const int scene_count = 1 + (bounded(rng, 10) < 4 ? 1 : 0);
    const bool hidden_button = bounded(rng, 10) < 6;
    const bool physics_cluster = !hidden_button || bounded(rng, 10) < 7;

    for (int s = 0; s < scene_count; ++s) {
        SceneDef scene;
        scene.index = s;
        const std::string logic = "Screen" + std::to_string(s) + "Logic";
        {
            ClassDef cls;
            cls.name = logic;
            cls.ns = "Game";
            b.add_class(std::move(cls));
        }

        scene.objects.push_back(make_object("Menu", true, true));

        const std::uint64_t roots = 2 + bounded(rng, 3);
        bool placed_panel = false;
        for (std::uint64_t k = 0; k < roots; ++k) {
            const std::string path = "Menu/Btn" + std::to_string(k);
            EffectScript script;
            std::uint64_t choice = bounded(rng, 100);
            // Scene 0 is guaranteed one nested dependency.
            if (s == 0 && k == roots - 1 && !placed_panel) choice = 30;

            if (choice < 25) {
                script.push_back(flows.next(any_label()));
            } else if (choice < 45) {
                // Single-enabler nested panel with leaf events.
                placed_panel = true;
                const std::string panel = "Panel" + std::to_string(k);
                if (bounded(rng, 2)) script.push_back(flows.next(fp()));
                script.push_back(Effect::enable(panel));

                SceneDef panel_objects; // staged, appended after the button
                panel_objects.objects.push_back(make_object(panel, false, true));
                const std::uint64_t leaves = 1 + bounded(rng, 3);
                for (std::uint64_t j = 0; j < leaves; ++j) {
                    const std::string leaf = panel + "/Leaf" + std::to_string(j);
                    EffectScript leaf_script;
                    const std::uint64_t lc = bounded(rng, 100);
                    if (lc < 40) {
                        leaf_script.push_back(flows.next(any_label()));
                    } else if (lc < 65) {
                        leaf_script.push_back(flows.next(any_label()));
                        leaf_script.push_back(Effect::disable(leaf));
                    } else if (leaves > 1) {
                        const std::string sibling =
                            panel + "/Leaf" + std::to_string((j + 1) % leaves);
                        leaf_script.push_back(Effect::disable(sibling));
                        leaf_script.push_back(flows.next(pii()));
                    } else {
                        leaf_script.push_back(flows.next(vr()));
                    }
                    const std::uint64_t off = b.add_method(
                        logic, "OnLeaf" + std::to_string(k) + "_" + std::to_string(j), {},
                        std::move(leaf_script));
                    GameObjectDef obj = make_object(leaf, true, true);
                    obj.components.push_back(make_button(off, leaf));
                    panel_objects.objects.push_back(std::move(obj));
                }
                GameObjectDef btn = make_object(path, true, true);
                btn.components.push_back(make_button(
                    b.add_method(logic, "OnOpen" + std::to_string(k), {}, std::move(script)),
                    path));
                scene.objects.push_back(std::move(btn));
                for (GameObjectDef& o : panel_objects.objects)
                    scene.objects.push_back(std::move(o));
                continue;
            } else if (choice < 60) {
                // A fault aborts the script: the second flow is unreachable.
                script.push_back(flows.next(any_label()));
                script.push_back(Effect::fault(bounded(rng, 2) ? FaultCode::Accerr
                                                               : FaultCode::Maperr));
                script.push_back(flows.next(unknown()));
            } else if (choice < 72) {
                script.push_back(flows.next(unknown()));
            } else if (choice < 85) {
                script.push_back(flows.next(vr()));
            } else if (s == 0 && scene_count > 1) {
                if (bounded(rng, 2)) script.push_back(flows.next(fp()));
                script.push_back(Effect::load_scene(1));
            } else {
                script.push_back(flows.next(pii()));
            }

            GameObjectDef btn = make_object(path, true, true);
            btn.components.push_back(make_button(
                b.add_method(logic, "OnClick" + std::to_string(k), {}, std::move(script)), path));
            scene.objects.push_back(std::move(btn));
        }

        if (s == 0 && hidden_button) {
            // Reachable only through reflection-based invocation: outside the
            // default view, so the random baseline never sees it.
            EffectScript script;
            script.push_back(flows.next(pii()));
            GameObjectDef btn = make_object("Menu/Hidden", true, false);
            btn.components.push_back(
                make_button(b.add_method(logic, "OnHidden", {}, std::move(script)), "Menu/Hidden"));
            scene.objects.push_back(std::move(btn));
            out.has_guarded_flow = true;
        }

        if (s == 0 && physics_cluster) {
            scene.objects.push_back(make_object("Arena", true, true));
            const std::string impact = "Impact" + std::to_string(s);
            if (bounded(rng, 2)) {
                // Collision pair: rigidbody actor against rigidbody + static.
                ClassDef cls;
                cls.name = impact;
                cls.ns = "Game";
                b.add_class(std::move(cls));
                GameObjectDef cube = make_object("Arena/CubeA", true, true);
                cube.components.push_back(make_collider(false, true, false));
                cube.components.push_back(make_script(impact));
                b.add_method(impact, "OnCollisionEnter", {"UnityEngine.Collision"},
                             {flows.next(vr())});
                if (bounded(rng, 2))
                    b.add_method(impact, "OnCollisionStay", {"UnityEngine.Collision"},
                                 {flows.next(vr())});
                if (bounded(rng, 2))
                    b.add_method(impact, "OnCollisionExit", {"UnityEngine.Collision"},
                                 {flows.next(vr())});
                scene.objects.push_back(std::move(cube));

                GameObjectDef other = make_object("Arena/CubeB", true, true);
                other.components.push_back(make_collider(false, true, false));
                scene.objects.push_back(std::move(other));
            } else {
                // Kinematic trigger zone against a static floor.
                ClassDef cls;
                cls.name = impact;
                cls.ns = "Game";
                b.add_class(std::move(cls));
                GameObjectDef zone = make_object("Arena/Zone", true, true);
                zone.components.push_back(make_collider(true, true, true));
                zone.components.push_back(make_script(impact));
                b.add_method(impact, "OnTriggerEnter", {"UnityEngine.Collider"},
                             {flows.next(vr())});
                if (bounded(rng, 2))
                    b.add_method(impact, "OnTriggerExit", {"UnityEngine.Collider"},
                                 {flows.next(vr())});
                scene.objects.push_back(std::move(zone));
            }
            GameObjectDef floor = make_object("Arena/Floor", true, true);
            floor.components.push_back(make_collider(false, false, false));
            scene.objects.push_back(std::move(floor));
            out.has_guarded_flow = true;
        }

        if (s == 0 || bounded(rng, 10) < 3) {
            // Startup hook: emits a flow before any interaction and may
            // register a runtime listener on the first button.
            const std::string boot = "Boot" + std::to_string(s);
            ClassDef cls;
            cls.name = boot;
            cls.ns = "Game";
            b.add_class(std::move(cls));
            EffectScript start;
            start.push_back(flows.next(fp()));
            if (s == 0 && bounded(rng, 2)) {
                const std::uint64_t off = b.add_method(logic, "OnRuntimeClick", {},
                                                       {flows.next(any_label())});
                start.push_back(Effect::add_listener("Menu/Btn0", "Button", off));
            }
            b.add_method(boot, "Start", {}, std::move(start));
            GameObjectDef controller = make_object("GameController", true, true);
            controller.components.push_back(make_script(boot));
            scene.objects.push_back(std::move(controller));
        }

        b.bundle().scenes.push_back(std::move(scene));
    }

    // A record only the static image can see: present in the function table,
    // absent from live enumeration.
    b.add_method("Screen0Logic", "InternalReset", {"System.Object"}, {}, /*reflection_only=*/true);

    b.image().validate();
    out.metadata = encode_metadata(b.image());
    out.bundle = std::move(b.bundle());
    out.oracle = oracle_reachable(out.bundle);
    return out;
}

} // namespace

std::vector<GeneratedBundle> generate_corpus(std::uint64_t seed, int count) {
    if (count < 1) throw ValidationError("corpus size must be at least 1", "count");
    std::vector<GeneratedBundle> corpus;
    corpus.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) corpus.push_back(make_bundle(seed, i));
    return corpus;
}

void write_corpus(const std::vector<GeneratedBundle>& corpus, std::uint64_t seed,
                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    nlohmann::ordered_json bundles = nlohmann::ordered_json::array();
    for (const GeneratedBundle& g : corpus) {
        const std::string dir = out_dir + "/" + g.name;
        fs::create_directories(dir);
        save_bundle_dir(g.bundle, g.metadata, dir);

        nlohmann::ordered_json flows = nlohmann::ordered_json::array();
        for (const auto& [type, host] : g.oracle.flows)
            flows.push_back(nlohmann::ordered_json::array({type, host}));
        nlohmann::ordered_json events = nlohmann::ordered_json::array();
        for (const std::string& e : g.oracle.events) events.push_back(e);
        bundles.push_back({{"name", g.name},
                           {"guarded", g.has_guarded_flow},
                           {"flows", std::move(flows)},
                           {"events", std::move(events)}});
    }
    const nlohmann::ordered_json manifest = {{"schema", "autovr-corpus/1"},
                                             {"seed", seed},
                                             {"count", corpus.size()},
                                             {"bundles", std::move(bundles)}};
    write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

} // namespace autovr
