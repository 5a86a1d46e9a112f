// catsim: sweep runner and acceptance gate for the coherent-state gate
// simulator.  `figure <id>` reproduces a canned experiment bundle, `custom`
// runs a free-form teleport sweep, `verify` runs the acceptance suite.
// Exit codes: 0 ok, 1 verify found failures, 2 bad configuration, 3 a
// numerical precondition broke mid-run.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catsim/acceptance.hpp"

namespace {

struct FlagSet {
    std::vector<double> alphas, etas;
    int grid = 0, dim = 0, workers = 0;
    std::string resource, r_policy, out, config_path;
};

void add_sweep_flags(CLI::App* cmd, FlagSet& f) {
    cmd->add_option("--alpha", f.alphas, "qubit size(s) to sweep");
    cmd->add_option("--eta", f.etas, "detector efficiency value(s)");
    cmd->add_option("--grid", f.grid, "points per swept axis");
    cmd->add_option("--resource", f.resource, "resource family")
        ->check(CLI::IsMember({"cat", "sqphoton"}));
    cmd->add_option("--r-policy", f.r_policy, "squeezing selection")
        ->check(CLI::IsMember({"numeric", "eq8"}));
    cmd->add_option("--dim", f.dim, "force the Fock cutoff");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--workers", f.workers, "worker threads (0 = all cores)");
    cmd->add_option("--config", f.config_path, "JSON config, flags override");
}

catsim::RunConfig assemble(const CLI::App* cmd, const FlagSet& f) {
    catsim::RunConfig cfg;
    if (cmd->count("--config")) {
        std::ifstream in(f.config_path);
        if (!in) throw catsim::config_error("cannot read config file: " + f.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = catsim::config_from_json(text.str());
    }
    if (cmd->count("--alpha")) cfg.alphas = f.alphas;
    if (cmd->count("--eta")) cfg.etas = f.etas;
    if (cmd->count("--grid")) cfg.grid = f.grid;
    if (cmd->count("--dim")) cfg.dim_override = f.dim;
    if (cmd->count("--out")) cfg.out_dir = f.out;
    if (cmd->count("--workers")) cfg.workers = f.workers;
    if (cmd->count("--resource"))
        cfg.resource = f.resource == "cat"
                           ? catsim::ResourceKind::Kind::exact_cat
                           : catsim::ResourceKind::Kind::squeezed_photon;
    if (cmd->count("--r-policy"))
        cfg.r_policy = f.r_policy == "eq8" ? catsim::RPolicy::printed
                                           : catsim::RPolicy::numeric;
    return cfg;
}

void report(const catsim::SweepFiles& files) {
    std::cout << "wrote " << files.csv << " (" << files.rows << " rows)\n"
              << "wrote " << files.manifest << "\n"
              << "wrote " << files.plot << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-state quantum gate simulator"};
    app.require_subcommand(1);

    FlagSet flags;
    auto* figure = app.add_subcommand("figure", "run a canned experiment bundle");
    std::string figure_id;
    figure->add_option("id", figure_id, "experiment id (fig1, fig3, ...)")
        ->required();
    add_sweep_flags(figure, flags);

    auto* custom = app.add_subcommand("custom", "run a free-form teleport sweep");
    std::string custom_name;
    custom->add_option("name", custom_name, "experiment name for the output files");
    add_sweep_flags(custom, flags);

    app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // bad flags are config errors
    }

    try {
        if (app.got_subcommand("verify")) {
            auto results = catsim::run_acceptance();
            return catsim::print_acceptance(std::cout, results) ? 0 : 1;
        }
        if (app.got_subcommand(figure)) {
            auto cfg = assemble(figure, flags);
            cfg.experiment = figure_id;
            report(catsim::run_figure(cfg));
        } else {
            auto cfg = assemble(custom, flags);
            if (custom->count("name")) cfg.experiment = custom_name;
            if (cfg.experiment.empty()) cfg.experiment = "custom";
            report(catsim::run_custom(cfg));
        }
        return 0;
    } catch (const catsim::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
