// Batch front end: eitmem <study> --config <path> [--set key=value ...]
//                         [--seed N] [--out DIR]
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "eitmem/studies.hpp"

namespace {

int run_one(const std::string& study_name, const std::string& config_path,
            const std::vector<std::string>& overrides, long long seed,
            bool seed_given, const std::string& outdir) {
    using namespace eitmem;
    const auto study = studies::parse_study(study_name);
    if (!study) {
        std::fprintf(stderr, "error: unknown study '%s'\n", study_name.c_str());
        return 2;
    }

    config::KeyValueConfig cfg;
    try {
        cfg = config::KeyValueConfig::parse_file(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw config::ConfigError({"--set expects key=value, got '" + kv + "'"});
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (seed_given) cfg.set("seed", std::to_string(seed));

        const LevelScheme scheme = cesium_d2_scheme();
        const auto artifacts = studies::run_study(cfg, *study, scheme);
        studies::write_artifacts(artifacts, outdir);
    } catch (const config::ConfigError& e) {
        for (const auto& issue : e.issues)
            std::fprintf(stderr, "error: config: %s\n", issue.c_str());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: numerical: %s\n", e.what());
        return 3;
    }
    std::printf("%s: wrote results.csv and run-manifest to %s\n",
                study_name.c_str(), outdir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EIT quantum-memory simulation studies"};
    app.require_subcommand(1);

    const std::vector<std::string> studies = {"spectrum", "storage", "sweep-od",
                                              "lifetime", "qubit", "benchmark"};
    struct Args {
        std::string config;
        std::vector<std::string> overrides;
        long long seed = 0;
        bool seed_given = false;
        std::string outdir = ".";
    };
    std::vector<Args> args(studies.size());

    for (size_t i = 0; i < studies.size(); ++i) {
        auto* sub = app.add_subcommand(studies[i]);
        sub->add_option("--config", args[i].config, "run configuration file")
            ->required();
        sub->add_option("--set", args[i].overrides,
                        "override a config key (key=value), repeatable");
        sub->add_option("--seed", args[i].seed, "random seed override")
            ->each([&args, i](const std::string&) { args[i].seed_given = true; });
        sub->add_option("--out", args[i].outdir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);

    for (size_t i = 0; i < studies.size(); ++i)
        if (app.got_subcommand(studies[i]))
            return run_one(studies[i], args[i].config, args[i].overrides,
                           args[i].seed, args[i].seed_given, args[i].outdir);
    return 2;
}
