#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "minlab/config.hpp"
#include "minlab/errors.hpp"
#include "minlab/probes.hpp"

int main(int argc, char** argv) {
    CLI::App app{"minlab: build minimal dynamical systems and run numeric probes"};
    app.require_subcommand(1);

    std::string run_path, out_dir, validate_path;
    auto* run = app.add_subcommand("run", "execute the probes described by a config file");
    run->add_option("config", run_path, "experiment config file")->required();
    run->add_option("--out", out_dir, "override the output directory");
    auto* validate = app.add_subcommand("validate", "parse and cross-check a config file");
    validate->add_option("config", validate_path, "experiment config file")->required();
    auto* list = app.add_subcommand("list-probes", "list the available probes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& [name, desc] : minlab::config::probe_catalog())
                std::printf("%-13s %s\n", name.c_str(), desc.c_str());
            return 0;
        }
        if (validate->parsed()) {
            minlab::config::load_config_file(validate_path);
            std::printf("config ok\n");
            return 0;
        }
        auto cfg = minlab::config::load_config_file(run_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        auto bundle = minlab::probes::run_experiment(cfg);
        for (const auto& p : bundle.probes)
            std::printf("%-13s %s  %s\n", p.name.c_str(), p.pass ? "pass" : "FAIL",
                        p.message.c_str());
        if (bundle.incomplete) std::printf("run aborted early, bundle incomplete\n");
        std::printf("%s -> %s/report.json\n",
                    bundle.pass ? "all probes pass" : "failures recorded",
                    bundle.outDir.c_str());
        return bundle.pass ? 0 : 1;
    } catch (const minlab::ConfigError& e) {
        if (e.line > 0)
            std::fprintf(stderr, "config error at line %d: %s\n", e.line, e.what());
        else
            std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
