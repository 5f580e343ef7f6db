#include "fixtures.hpp"

namespace autovr::tests {

FixtureApp seal(BundleBuilder& b) {
    FixtureApp app;
    app.image = parse_metadata(encode_metadata(b.image()));
    app.bundle = std::move(b.bundle());
    app.gft = build_gft(app.image, Introspector::dynamic_methods(app.bundle.classes));
    return app;
}

namespace {

// Scene-0 menu block rooted at `root` ("Menu", "Menu2", ...): 12 UI events.
void add_menu(BundleBuilder& b, SceneDef& scene, const std::string& root,
              const std::string& logic, EffectScript& boot_start) {
    scene.objects.push_back(make_object(root, true, true));

    // Start: runtime-registered callback revealing the tutorial button.
    {
        const std::string path = root + "/StartButton";
        const std::uint64_t off =
            b.add_method(logic, "OnStartClick", {},
                         {Effect::emit_flow("APP_INFO", "init.telemetry.example", "start"),
                          Effect::enable(path + "/Tutorial")});
        boot_start.push_back(Effect::add_listener(path, "Button", off));
        GameObjectDef btn = make_object(path, true, true);
        ComponentDef c;
        c.class_name = "Button";
        c.kind = ComponentKind::Ui;
        c.events.emplace("on_click", UnityEventDef{}); // empty until Start runs
        btn.components.push_back(std::move(c));
        scene.objects.push_back(std::move(btn));

        GameObjectDef leaf = make_object(path + "/Tutorial", false, true);
        leaf.components.push_back(make_button(
            b.add_method(logic, "OnTutorial", {},
                         {Effect::emit_flow("SESSION_DATA", "session.telemetry.example", "tut")}),
            path + "/Tutorial"));
        scene.objects.push_back(std::move(leaf));
    }

    // Options: reveals four nested buttons, hides Start and Quit.
    {
        const std::string path = root + "/OptionsButton";
        EffectScript script{Effect::enable(path + "/Turn"), Effect::enable(path + "/Volume"),
                            Effect::enable(path + "/Validate"), Effect::enable(path + "/Apply"),
                            Effect::disable(root + "/StartButton"),
                            Effect::disable(root + "/QuitButton")};
        GameObjectDef btn = make_object(path, true, true);
        btn.components.push_back(
            make_button(b.add_method(logic, "OnOptionsClick", {}, std::move(script)), path));
        scene.objects.push_back(std::move(btn));

        const char* leaves[] = {"Turn", "Volume", "Validate", "Apply"};
        const char* labels[] = {"VR_FIELD_OF_VIEW", "VR_PLAY_AREA", "SCREEN_INFO", "LANGUAGE"};
        for (int i = 0; i < 4; ++i) {
            const std::string leaf = path + "/" + leaves[i];
            EffectScript s{Effect::emit_flow(labels[i], "opts.telemetry.example", leaves[i])};
            if (i == 3) s.push_back(Effect::load_scene(1));
            GameObjectDef obj = make_object(leaf, false, true);
            obj.components.push_back(
                make_button(b.add_method(logic, std::string("On") + leaves[i], {}, std::move(s)),
                            leaf));
            scene.objects.push_back(std::move(obj));
        }
    }

    // About: reveals three nested buttons.
    {
        const std::string path = root + "/AboutButton";
        EffectScript script{Effect::enable(path + "/Credits"), Effect::enable(path + "/Licenses"),
                            Effect::enable(path + "/Back")};
        GameObjectDef btn = make_object(path, true, true);
        btn.components.push_back(
            make_button(b.add_method(logic, "OnAboutClick", {}, std::move(script)), path));
        scene.objects.push_back(std::move(btn));

        const char* leaves[] = {"Credits", "Licenses", "Back"};
        const char* labels[] = {"ANALYTIC", "BUILD_INFO", "EVENT_INFO"};
        for (int i = 0; i < 3; ++i) {
            const std::string leaf = path + "/" + leaves[i];
            GameObjectDef obj = make_object(leaf, false, true);
            obj.components.push_back(make_button(
                b.add_method(logic, std::string("On") + leaves[i], {},
                             {Effect::emit_flow(labels[i], "about.telemetry.example", leaves[i])}),
                leaf));
            scene.objects.push_back(std::move(obj));
        }
    }

    // Quit: enabled but outside the default view.
    {
        const std::string path = root + "/QuitButton";
        GameObjectDef btn = make_object(path, true, false);
        btn.components.push_back(make_button(
            b.add_method(logic, "OnQuitClick", {},
                         {Effect::emit_flow("GPS", "exit.telemetry.example", "quit")}),
            path));
        scene.objects.push_back(std::move(btn));
    }
}

// Scene-2 HUD block: 7 UI events, two of them out of view.
void add_hud(BundleBuilder& b, SceneDef& scene, const std::string& root,
             const std::string& logic) {
    scene.objects.push_back(make_object(root, true, true));
    const char* labels[] = {"EMAIL",       "USER_ID",  "DEVICE_INFO", "GPU_INFO",
                            "VR_PLAY_AREA", "POSITION", "OS_INFO"};
    for (int i = 1; i <= 7; ++i) {
        const std::string path = root + "/Widget" + std::to_string(i);
        const bool in_view = i != 5 && i != 6;
        GameObjectDef btn = make_object(path, true, in_view);
        btn.components.push_back(make_button(
            b.add_method(logic, "OnWidget" + std::to_string(i), {},
                         {Effect::emit_flow(labels[i - 1], "hud.telemetry.example",
                                            "w" + std::to_string(i))}),
            path));
        scene.objects.push_back(std::move(btn));
    }
}

} // namespace

FixtureApp make_custom_app(int ui_mult, int physics_mult) {
    BundleBuilder b;
    add_core_classes(b);
    b.bundle().timing.ui_event_delay_ms = 1000;

    {
        ClassDef boot;
        boot.name = "Boot";
        boot.ns = "Game";
        b.add_class(std::move(boot));
        ClassDef logic;
        logic.name = "MenuLogic";
        logic.ns = "Game";
        b.add_class(std::move(logic));
        ClassDef hud;
        hud.name = "HudLogic";
        hud.ns = "Game";
        b.add_class(std::move(hud));

        ClassDef cube;
        cube.name = "CubeLogic";
        cube.ns = "Game";
        b.add_class(std::move(cube));
        b.add_method("CubeLogic", "OnCollisionEnter", {"UnityEngine.Collision"},
                     {Effect::emit_flow("POSITION", "physics.telemetry.example", "enter")});
        b.add_method("CubeLogic", "OnCollisionStay", {"UnityEngine.Collision"},
                     {Effect::emit_flow("TRACKING", "physics.telemetry.example", "stay")});
        b.add_method("CubeLogic", "OnCollisionExit", {"UnityEngine.Collision"},
                     {Effect::emit_flow("SENSOR_DATA", "physics.telemetry.example", "exit")});

        ClassDef zone;
        zone.name = "ZoneLogic";
        zone.ns = "Game";
        b.add_class(std::move(zone));
        b.add_method("ZoneLogic", "OnTriggerEnter", {"UnityEngine.Collider"},
                     {Effect::emit_flow("VR_USER_DEVICE_IPD", "zones.telemetry.example", "enter")});
        b.add_method("ZoneLogic", "OnTriggerExit", {"UnityEngine.Collider"},
                     {Effect::emit_flow("VR_FIELD_OF_VIEW", "zones.telemetry.example", "exit")});
    }

    // Scene 0: menus.
    {
        SceneDef scene;
        scene.index = 0;
        EffectScript boot_start{
            Effect::emit_flow("DEVICE_INFO", "init.telemetry.example", "boot")};
        for (int m = 0; m < ui_mult; ++m) {
            const std::string root = m == 0 ? "Menu" : "Menu" + std::to_string(m + 1);
            add_menu(b, scene, root, "MenuLogic", boot_start);
        }
        b.add_method("Boot", "Start", {}, std::move(boot_start));
        GameObjectDef controller = make_object("GameController", true, true);
        controller.components.push_back(make_script("Boot"));
        scene.objects.push_back(std::move(controller));
        b.bundle().scenes.push_back(std::move(scene));
    }

    // Scene 1: physics floor.
    {
        SceneDef scene;
        scene.index = 1;
        GameObjectDef floor = make_object("Floor", true, true);
        floor.components.push_back(make_collider(false, false, false));
        scene.objects.push_back(std::move(floor));
        for (int i = 1; i <= 9 * physics_mult; ++i) {
            GameObjectDef cube = make_object("CCube" + std::to_string(i), true, true);
            cube.components.push_back(make_collider(false, true, false));
            cube.components.push_back(make_script("CubeLogic"));
            scene.objects.push_back(std::move(cube));
        }
        for (int i = 1; i <= physics_mult; ++i) {
            GameObjectDef tcube = make_object("TCube" + std::to_string(i), true, true);
            tcube.components.push_back(make_collider(true, true, true));
            tcube.components.push_back(make_script("ZoneLogic"));
            scene.objects.push_back(std::move(tcube));
        }
        for (int i = 1; i <= 6 * physics_mult; ++i) {
            GameObjectDef zone = make_object("Zone" + std::to_string(i), true, true);
            zone.components.push_back(make_collider(true, true, true));
            scene.objects.push_back(std::move(zone));
        }
        b.bundle().scenes.push_back(std::move(scene));
    }

    // Scene 2: HUD plus a small physics population.
    {
        SceneDef scene;
        scene.index = 2;
        for (int m = 0; m < ui_mult; ++m) {
            const std::string root = m == 0 ? "Hud" : "Hud" + std::to_string(m + 1);
            add_hud(b, scene, root, "HudLogic");
        }
        GameObjectDef crate = make_object("Crate", true, true);
        crate.components.push_back(make_collider(false, false, false));
        scene.objects.push_back(std::move(crate));
        for (int i = 1; i <= 2 * physics_mult; ++i) {
            GameObjectDef box = make_object("Box" + std::to_string(i), true, true);
            box.components.push_back(make_collider(false, true, false));
            box.components.push_back(make_script("CubeLogic"));
            scene.objects.push_back(std::move(box));
        }
        for (int i = 1; i <= 2 * physics_mult; ++i) {
            GameObjectDef sensor = make_object("Sensor" + std::to_string(i), true, true);
            sensor.components.push_back(make_collider(true, true, true));
            sensor.components.push_back(make_script("ZoneLogic"));
            scene.objects.push_back(std::move(sensor));
        }
        for (int i = 1; i <= physics_mult; ++i) {
            GameObjectDef beacon = make_object("Beacon" + std::to_string(i), true, true);
            beacon.components.push_back(make_collider(true, true, true));
            scene.objects.push_back(std::move(beacon));
        }
        b.bundle().scenes.push_back(std::move(scene));
    }

    return seal(b);
}

namespace {

// Shared scaffold of the two backtracking fixtures: A enables B, B enables
// C1 and C2.
void add_chain(BundleBuilder& b, SceneDef& scene, EffectScript c1_script) {
    ClassDef logic;
    logic.name = "ChainLogic";
    logic.ns = "Game";
    b.add_class(std::move(logic));

    const auto button = [&](const std::string& path, bool enabled, EffectScript script) {
        GameObjectDef obj = make_object(path, enabled, true);
        obj.components.push_back(
            make_button(b.add_method("ChainLogic", "On" + path, {}, std::move(script)), path));
        scene.objects.push_back(std::move(obj));
    };

    button("A", true, {Effect::enable("B")});
    button("B", false, {Effect::enable("C1"), Effect::enable("C2")});
    button("C1", false, std::move(c1_script));
    button("C2", false, {Effect::emit_flow("USER_ID", "chain.telemetry.example", "c2")});
}

} // namespace

FixtureApp make_case2_app() {
    BundleBuilder b;
    add_core_classes(b);
    SceneDef scene;
    scene.index = 0;
    add_chain(b, scene,
              {Effect::disable("C2"),
               Effect::emit_flow("EMAIL", "chain.telemetry.example", "c1")});
    b.bundle().scenes.push_back(std::move(scene));
    return seal(b);
}

FixtureApp make_divergence_app() {
    BundleBuilder b;
    add_core_classes(b);
    SceneDef scene;
    scene.index = 0;
    add_chain(b, scene,
              {Effect::enable("D"),
               Effect::emit_flow("EMAIL", "chain.telemetry.example", "c1")});
    GameObjectDef extra = make_object("D", false, true);
    extra.components.push_back(make_button(
        b.add_method("ChainLogic", "OnD", {},
                     {Effect::emit_flow("GPS", "chain.telemetry.example", "d")}),
        "D"));
    scene.objects.push_back(std::move(extra));
    b.bundle().scenes.push_back(std::move(scene));
    return seal(b);
}

FixtureApp make_minimal_app() {
    BundleBuilder b;
    add_core_classes(b);
    ClassDef logic;
    logic.name = "MiniLogic";
    logic.ns = "Game";
    b.add_class(std::move(logic));

    SceneDef scene;
    scene.index = 0;
    GameObjectDef first = make_object("First", true, true);
    first.components.push_back(make_button(
        b.add_method("MiniLogic", "OnFirst", {},
                     {Effect::emit_flow("EMAIL", "mini.telemetry.example", "a")}),
        "First"));
    scene.objects.push_back(std::move(first));
    GameObjectDef second = make_object("Second", true, true);
    second.components.push_back(make_button(
        b.add_method("MiniLogic", "OnSecond", {},
                     {Effect::emit_flow("GPS", "mini.telemetry.example", "b")}),
        "Second"));
    scene.objects.push_back(std::move(second));
    b.bundle().scenes.push_back(std::move(scene));
    return seal(b);
}

} // namespace autovr::tests
