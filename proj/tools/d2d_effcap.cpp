#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "d2d/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Effective capacity of HARQ device-to-device links: analysis, sweeps, optimization."};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::uint64_t seed = 0;
    bool strict = false;
    bool list_keys = false;
    std::string out_dir = ".";
    std::vector<std::string> overrides;

    app.add_flag("--list-keys", list_keys, "print every config key with its default and exit");
    for (const char* name : {"mode-select", "ec", "sweep", "optimize", "validate"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "INI-style config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "master seed (overrides montecarlo.seed)");
        sub->add_flag("--strict", strict, "treat clamp warnings as errors");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--set", overrides, "section.key=value override, repeatable");
    }
    if (argc > 1 && std::string(argv[1]) == "--list-keys") {
        for (const auto& d : d2d::option_docs())
            std::cout << d.key << " = " << d.default_value << "    # " << d.description << "\n";
        return 0;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string command = app.get_subcommands().front()->get_name();
    std::string command_line = "d2d-effcap";
    for (int i = 1; i < argc; ++i) command_line += std::string(" ") + argv[i];

    try {
        d2d::ExperimentConfig cfg = config_path.empty() ? d2d::default_config() : d2d::load_config(config_path);
        for (const auto& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw d2d::ConfigError("--set expects section.key=value, got '" + kv + "'");
            d2d::set_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (app.get_subcommands().front()->count("--seed")) d2d::set_option(cfg, "montecarlo.seed", std::to_string(seed));
        cfg.strict = strict;

        d2d::CommandResult res = d2d::run_command(command, cfg);
        for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& path : d2d::write_outputs(res, cfg, out_dir, command_line)) std::cout << "wrote " << path << "\n";
        std::cout << res.summary;
        return res.exit_code;
    } catch (const d2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
