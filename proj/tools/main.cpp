#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sentilens/config.hpp"
#include "sentilens/pipeline.hpp"
#include "sentilens/util.hpp"

namespace {

std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace sentilens;

    CLI::App app{"sentence-level sentiment pipeline"};
    app.require_subcommand(1);

    std::string config_path, workdir, text;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool dry = false;

    const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"preprocess", "load reviews, label, tokenize, split, build the vocabulary"},
        {"build-lexicon", "parse and merge the sentiment dictionaries"},
        {"embed", "train skip-gram embeddings and extract aspect terms"},
        {"train", "train the classifier and write a checkpoint"},
        {"evaluate", "score the test split and write the metrics report"},
        {"sweep", "train once per parameter value and tabulate the metrics"},
        {"explain", "aggregate attention weights and export attributions"},
        {"full-run", "preprocess through explain in one invocation"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("-c,--config", config_path, "configuration file");
        sub->add_option("-w,--workdir", workdir, "work directory override");
        sub->add_option("-s,--seed", seed, "root seed override");
        sub->add_flag("-n,--dry-run", dry, "validate and plan, write nothing");
        sub->add_option("--set", sets, "KEY=VALUE config override (repeatable)");
        if (std::string(c.name) == "explain")
            sub->add_option("--text", text, "sentence to attribute (overrides explain.text)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    try {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw UsageError("--set expects KEY=VALUE, got: " + kv);
            apply_config_entry(cfg, trim_ws(kv.substr(0, eq)), trim_ws(kv.substr(eq + 1)));
        }
        if (sub->count("--workdir") > 0) cfg.workdir = workdir;
        if (sub->count("--seed") > 0) cfg.seed = seed;
        if (command == "explain" && sub->count("--text") > 0) cfg.explain_text = text;

        run_command(command, cfg, dry);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
