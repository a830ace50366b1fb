// hwalk: Hadamard walk on a cycle -- simulation, spectra and temporal fluctuation data.

#include <fstream>
#include <map>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hwalk/cli/commands.hpp"

namespace {

void add_common(CLI::App* cmd, hwalk::cli::RunSpec& spec) {
    cmd->add_option("--out", spec.out, "Output file (default: standard output)");
    cmd->add_option("--format", spec.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, hwalk::cli::Format>{{"csv", hwalk::cli::Format::csv},
                                                      {"json", hwalk::cli::Format::json}},
            CLI::ignore_case));
}

void add_sites(CLI::App* cmd, hwalk::cli::RunSpec& spec, bool required) {
    auto* opt = cmd->add_option("--sites", spec.sites, "Number of cycle sites N");
    if (required) opt->required()->expected(1);
}

}  // namespace

int main(int argc, char** argv) {
    hwalk::cli::RunSpec spec;
    CLI::App app{"Hadamard walk on an N-site cycle: simulation and temporal fluctuation statistics"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Per-step site probabilities (t,n,prob)");
    add_sites(simulate, spec, true);
    simulate->add_option("--site", spec.site, "Only emit this site");
    simulate->add_option("--alpha", spec.alpha, "Initial state parameter in [0,1]");
    simulate->add_option("--steps", spec.steps, "Number of time samples T");

    auto* sigma = app.add_subcommand("sigma", "Temporal standard deviation per site");
    add_sites(sigma, spec, true);
    sigma->add_option("--site", spec.site, "Only emit this site");
    sigma->add_option("--alpha", spec.alpha, "Initial state parameter in [0,1]");
    sigma->add_option("--steps", spec.steps, "Averaging window T (empirical)");
    sigma->add_option("--method", spec.method, "exact|empirical|resonance");

    auto* sweep = app.add_subcommand("sweep-alpha", "Sigma over an alpha grid on [0,1]");
    add_sites(sweep, spec, true);
    sweep->add_option("--site", spec.site, "Only emit this site");
    sweep->add_option("--steps", spec.steps, "Averaging window T (N > 3)");
    sweep->add_option("--points", spec.points, "Number of alpha grid points (>= 2)");

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the evolution matrix");
    add_sites(spectrum, spec, true);

    auto* asymptote = app.add_subcommand("asymptote", "Exact vs large-N sigma at the origin");
    add_sites(asymptote, spec, false);

    auto* classical = app.add_subcommand("classical", "Classical vs quantum finite-T deviation");
    add_sites(classical, spec, true);
    classical->add_option("--site", spec.site, "Only emit this site");
    classical->add_option("--alpha", spec.alpha, "Quantum initial state parameter in [0,1]");
    classical->add_option("--steps", spec.steps, "Largest T of the decade schedule");

    for (auto* cmd : {simulate, sigma, sweep, spectrum, asymptote, classical}) add_common(cmd, spec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    spec.command = app.get_subcommands().front()->get_name();

    try {
        const auto table = hwalk::cli::run(spec);
        if (spec.out.empty()) {
            hwalk::cli::write(std::cout, table, spec.format);
        } else {
            std::ofstream file(spec.out);
            if (!file) {
                std::cerr << "error: cannot open output file '" << spec.out << "'\n";
                return 1;
            }
            hwalk::cli::write(file, table, spec.format);
            if (!file) {
                std::cerr << "error: failed writing '" << spec.out << "'\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
