// memwalk — walk simulator and initial-state designer.
//
//   memwalk simulate --config run.cfg [--out dir] [--engine sparse|dense|analytic]
//   memwalk design   --config target.cfg [--out dir] [--engine ...]
//   memwalk compare  --config run.cfg [--engine-table options]
//   memwalk figures  --config figures.cfg [--out dir]
//   memwalk selftest [--seed N]
//
// Exit codes: 0 ok, 1 tolerance failure, 2 config error, 3 engine error.

#include <string>

#include <CLI11.hpp>

#include "memwalk/cli.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_override;
    std::string engine_override;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    cmd->add_option("--config", args.config_path, "flat key = value config file")
        ->required(config_required);
    cmd->add_option("--out", args.out_override, "output directory (overrides config)");
    cmd->add_option("--engine", args.engine_override,
                    "evolution backend: sparse, dense, or analytic");
}

memwalk::RunConfig resolve(const CommonArgs& args) {
    memwalk::RunConfig cfg = memwalk::cli::load_config(args.config_path);
    if (!args.out_override.empty()) cfg.out = args.out_override;
    if (!args.engine_override.empty())
        cfg.engine = memwalk::parse_engine(args.engine_override);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"memory-programmed walk simulator"};
    app.require_subcommand(1);

    CommonArgs simulate_args, design_args, compare_args, figures_args;
    bool corrupt_qtable = false;
    unsigned seed = 20260823u;

    CLI::App* simulate = app.add_subcommand("simulate", "evolve a scenario, write CSVs");
    add_common(simulate, simulate_args);

    CLI::App* design = app.add_subcommand("design", "compile a target density");
    add_common(design, design_args);

    CLI::App* compare = app.add_subcommand("compare", "cross-check all engines");
    add_common(compare, compare_args);
    compare->add_flag("--corrupt-qtable", corrupt_qtable)->group(""); // negative-control hook

    CLI::App* figures = app.add_subcommand("figures", "render scenario sweep plots");
    add_common(figures, figures_args);

    CLI::App* selftest = app.add_subcommand("selftest", "run the invariant battery");
    selftest->add_option("--seed", seed, "seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help exits 0, anything malformed is a config error
    }

    return memwalk::cli::guarded([&]() -> int {
        if (simulate->parsed()) return memwalk::cli::cmd_simulate(resolve(simulate_args));
        if (design->parsed()) return memwalk::cli::cmd_design(resolve(design_args));
        if (compare->parsed())
            return memwalk::cli::cmd_compare(resolve(compare_args), corrupt_qtable);
        if (figures->parsed()) return memwalk::cli::cmd_figures(resolve(figures_args));
        return memwalk::cli::cmd_selftest(seed);
    });
}
