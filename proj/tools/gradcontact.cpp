// Command-line front end: solve, sweep, validate and preset listing.

#include <CLI11.hpp>

#include <iostream>

#include "gradcontact/app.hpp"
#include "gradcontact/errors.hpp"

using namespace gradcontact;

namespace {

struct CommonOptions {
    std::string config;
    std::string preset;
    std::vector<std::string> overrides;
    std::string out = "out";
    std::string cache;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "Configuration file (INI sections: body1, body2, profile, load, model, "
                                          "numerics, output, sweep)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--preset", o.preset, "Start from a built-in preset (see `preset list`)");
    cmd->add_option("--set", o.overrides, "Override a value: section.key=value (repeatable)");
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_option("--cache", o.cache, "Directory for on-disk kernel table cache");
}

RunConfig resolve(const CommonOptions& o) {
    if (!o.config.empty() && !o.preset.empty()) throw ConfigError("config", "give either --config or --preset");
    auto tree = !o.config.empty() ? read_config_file(o.config)
                : !o.preset.empty() ? preset_tree(o.preset)
                                    : default_tree();
    for (const auto& s : o.overrides) apply_override(tree, s);
    return load_config(tree);
}

TableCache make_cache(const CommonOptions& o) {
    if (o.cache.empty()) return TableCache{};
    return TableCache{std::filesystem::path(o.cache)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane Hertz and JKR contact of two power-law graded elastic bodies (nondimensional units)"};
    app.require_subcommand(1);

    CommonOptions solve_opt, sweep_opt;
    int workers = 1;
    std::string perturb;

    auto* solve = app.add_subcommand("solve", "Solve one configuration");
    add_common(solve, solve_opt);
    auto* sweep = app.add_subcommand("sweep", "Solve the Cartesian product of the sweep axes");
    add_common(sweep, sweep_opt);
    sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    auto* validate = app.add_subcommand("validate", "Run the quadrature and collocation cross-checks");
    validate->add_option("--perturb", perturb, "Scale one check's production values by 1 + 1e-3 (negative control)");
    auto* preset = app.add_subcommand("preset", "Built-in presets");
    auto* preset_list = preset->add_subcommand("list", "List presets");
    preset->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try {
        if (*solve) {
            const auto cfg = resolve(solve_opt);
            auto cache = make_cache(solve_opt);
            return cmd_solve(cfg, solve_opt.out, cache, std::cout);
        }
        if (*sweep) {
            const auto cfg = resolve(sweep_opt);
            auto cache = make_cache(sweep_opt);
            return cmd_sweep(cfg, sweep_opt.out, workers, cache, std::cout);
        }
        if (*validate) return cmd_validate(perturb, std::cout);
        if (*preset_list) {
            for (const auto& p : list_presets()) std::cout << p.name << "\t" << p.description << '\n';
            return exit_ok;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solver;
    }
    return exit_ok;
}
