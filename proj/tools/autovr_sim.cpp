#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "autovr/corpus.hpp"
#include "autovr/errors.hpp"
#include "autovr/harness.hpp"
#include "autovr/metadata.hpp"
#include "autovr/report.hpp"

namespace {

int log_level() {
    const char* env = std::getenv("AUTOVR_SIM_LOG");
    if (env == nullptr) return 0;
    const std::string v = env;
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[autovr-sim] " << msg << "\n";
}

int run_tool(bool monkey, const std::string& bundle, std::uint64_t seed,
             std::optional<std::uint64_t> budget, const std::string& format,
             const std::string& out) {
    log_info(std::string(monkey ? "monkey " : "explore ") + bundle +
             " seed=" + std::to_string(seed));
    const autovr::RunReport report = monkey ? autovr::run_monkey(bundle, seed, budget)
                                            : autovr::run_explore(bundle, seed, budget);
    const std::string doc = autovr::emit_report(report, format);
    if (out.empty()) {
        std::cout << doc;
    } else {
        autovr::write_file(out, doc);
        log_info("report written to " + out);
    }
    if (report.budget_exhausted) {
        log_info("budget exhausted");
        return 3;
    }
    return 0;
}

int dump_metadata(const std::string& path) {
    const autovr::MetadataImage image = autovr::parse_metadata(autovr::read_file(path));
    std::printf("%s: version %u, %zu strings, %zu classes, %zu fields, %zu methods\n",
                path.c_str(), image.version, image.strings.size(), image.classes.size(),
                image.fields.size(), image.methods.size());
    for (std::size_t c = 0; c < image.classes.size(); ++c) {
        const autovr::ClassRecord& cls = image.classes[c];
        std::string header = image.strings[cls.ns];
        if (!header.empty()) header += ".";
        header += image.strings[cls.name];
        if (cls.parent != autovr::kNoParent)
            header += " : " + image.strings[image.classes[cls.parent].name];
        for (std::size_t i = 0; i < cls.interfaces.size(); ++i)
            header += (i == 0 ? " <" : ", ") + image.strings[cls.interfaces[i]];
        if (!cls.interfaces.empty()) header += ">";
        std::printf("class %s\n", header.c_str());
        for (const autovr::FieldRecord& f : image.fields)
            if (f.owner == c)
                std::printf("  field  %s %s%s\n", image.strings[f.type].c_str(),
                            image.strings[f.name].c_str(), f.is_static ? " (static)" : "");
        for (const autovr::MethodRecord& m : image.methods)
            if (m.owner == c)
                std::printf("  method 0x%llx %s/%u%s\n",
                            static_cast<unsigned long long>(m.offset),
                            image.strings[m.name].c_str(), m.param_count,
                            m.reflection_only ? " (reflection-only)" : "");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulated VR-app exploration pipeline"};
    app.require_subcommand(1);

    std::string bundle_dir;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
    std::string format = "json";
    std::string out_path;

    CLI::App* explore = app.add_subcommand("explore", "Context-aware scene exploration");
    explore->add_option("bundle", bundle_dir, "App bundle directory")->required();
    explore->add_option("--seed", seed, "Exploration seed");
    CLI::Option* explore_budget =
        explore->add_option("--budget-ms", budget, "Logical time budget override");
    explore->add_option("--report", format, "Report format: json|text");
    explore->add_option("--out", out_path, "Write the report to a file instead of stdout");

    CLI::App* monkey = app.add_subcommand("monkey", "Random visible-UI baseline");
    monkey->add_option("bundle", bundle_dir, "App bundle directory")->required();
    monkey->add_option("--seed", seed, "Pick seed");
    CLI::Option* monkey_budget =
        monkey->add_option("--budget-ms", budget, "Logical time budget override");
    monkey->add_option("--report", format, "Report format: json|text");
    monkey->add_option("--out", out_path, "Write the report to a file instead of stdout");

    std::uint64_t corpus_seed = 1;
    int corpus_count = 20;
    std::string corpus_dir;
    CLI::App* gen = app.add_subcommand("gen-corpus", "Generate a fixture corpus with oracle manifest");
    gen->add_option("--seed", corpus_seed, "Corpus seed");
    gen->add_option("--count", corpus_count, "Number of bundles");
    gen->add_option("--out", corpus_dir, "Output directory")->required();

    std::string metadata_path;
    CLI::App* dump = app.add_subcommand("dump-metadata", "Parse and print a metadata image");
    dump->add_option("file", metadata_path, "Path to a .avrm image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (explore->parsed() || monkey->parsed()) {
            const bool is_monkey = monkey->parsed();
            const CLI::Option* budget_opt = is_monkey ? monkey_budget : explore_budget;
            const std::optional<std::uint64_t> budget_override =
                budget_opt->count() > 0 ? std::optional<std::uint64_t>(budget) : std::nullopt;
            return run_tool(is_monkey, bundle_dir, seed, budget_override, format, out_path);
        }
        if (gen->parsed()) {
            log_info("generating " + std::to_string(corpus_count) + " bundles into " + corpus_dir);
            autovr::write_corpus(autovr::generate_corpus(corpus_seed, corpus_count), corpus_seed,
                                 corpus_dir);
            return 0;
        }
        if (dump->parsed()) return dump_metadata(metadata_path);
    } catch (const autovr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
