// steiner: Steiner symmetrization and rearrangement lab on regular grids.
//
//   steiner run <config>            run a config-driven experiment
//   steiner plot <csv> --kind <k>   render a report CSV to SVG
//   steiner inspect <file.stnr1>    print header and summary stats
//   steiner selftest                run the built-in invariant suites
//
// STEINER_THREADS caps the worker count; STEINER_SIMD=scalar disables the
// vector kernels. Both leave every result bit-identical.

#include "steiner/experiments.hpp"
#include "steiner/selftest.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Steiner rearrangement experiments on regular grids"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "experiment config file")->required();

    std::string csv_path, plot_kind, plot_out;
    auto* plot = app.add_subcommand("plot", "render a report CSV to SVG");
    plot->add_option("csv", csv_path, "input CSV produced by `run`")->required();
    plot->add_option("--kind", plot_kind,
                     "loglog | heatmap_pair | beta_scatter")
        ->required();
    plot->add_option("--out", plot_out, "output SVG path (default: csv + .svg)");

    std::string stnr_path;
    auto* inspect = app.add_subcommand("inspect", "describe an STNR1 file");
    inspect->add_option("file", stnr_path, "STNR1 file")->required();

    auto* self = app.add_subcommand("selftest", "run the invariant suites");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return steiner::run_experiment_file(config_path, std::cout);
    if (plot->parsed()) {
        if (plot_out.empty()) plot_out = csv_path + ".svg";
        return steiner::run_plot(csv_path, plot_kind, plot_out, std::cout);
    }
    if (inspect->parsed()) return steiner::run_inspect(stnr_path, std::cout);
    if (self->parsed()) return steiner::selftest(std::cout) == 0 ? 0 : 1;
    return 1;
}
