#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "glin/errors.hpp"

namespace {

void add_common_flags(CLI::App* cmd, glin::tool::CliOptions& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (JSON)")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory for report.json / table.csv");
    cmd->add_option("--seed", opts.seed, "override the certificate sampling seed");
    cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"global-linearization solver and certification tool"};
    app.require_subcommand(1);

    glin::tool::CliOptions opts;
    CLI::App* solve = app.add_subcommand("solve", "run the relinearized fixed-point iteration");
    CLI::App* certify = app.add_subcommand("certify", "estimate the convergence constants");
    CLI::App* compare = app.add_subcommand("compare", "run several methods head to head");
    CLI::App* sweep = app.add_subcommand("sweep", "scan an amplitude grid");
    for (CLI::App* cmd : {solve, certify, compare, sweep}) {
        add_common_flags(cmd, opts);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return glin::tool::cmd_solve(opts);
        if (certify->parsed()) return glin::tool::cmd_certify(opts);
        if (compare->parsed()) return glin::tool::cmd_compare(opts);
        if (sweep->parsed()) return glin::tool::cmd_sweep(opts);
    } catch (const glin::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return glin::tool::kExitConfig;
    } catch (const glin::SingularOperatorError& err) {
        std::cerr << "singular operator: " << err.what() << "\n";
        return glin::tool::kExitSingular;
    } catch (const glin::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 70;
    }
    return 0;
}
