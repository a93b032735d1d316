// probeview: reduced states of a bosonic mode seen by a probe confined to a region.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "probeview/cli.hpp"

namespace {

using probeview::cli::Command;
using probeview::cli::RunConfig;

struct RawFlags {
    std::string q0sq;
    std::string inv_beta_energy;
    std::string region;
    std::string format = "json";
    long long max_n = -1;
};

void add_common(CLI::App* sub, RunConfig& config, RawFlags& raw) {
    sub->add_option("--q0sq", raw.q0sq, "Overlap q0^2: x, a,b,c, or x:y:step");
    sub->add_option("--cutoff", config.cutoff, "Basis cutoff N")->capture_default_str();
    sub->add_option("--tol", config.tol, "Tolerance")->capture_default_str();
    sub->add_option("--format", raw.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", config.out, "Output path, - for stdout")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced density matrices of a bosonic mode restricted to a region of space"};
    app.require_subcommand(1);

    RunConfig config;
    RawFlags raw;

    auto* reduce = app.add_subcommand("reduce", "Reduce a state descriptor at one q0^2");
    add_common(reduce, config, raw);
    reduce->add_option("--state", config.state, "State descriptor JSON, or @file")->required();

    auto* sweep_purity = app.add_subcommand("sweep-purity", "Purity of reduced number states over q0^2");
    add_common(sweep_purity, config, raw);
    sweep_purity->add_option("--max-n", raw.max_n, "Largest n (default 5)");

    auto* sweep_thermal = app.add_subcommand("sweep-thermal", "Reduced thermal temperature over 1/(beta E)");
    add_common(sweep_thermal, config, raw);
    sweep_thermal->add_option("--inv-betaE", raw.inv_beta_energy, "Temperature grid 1/(beta E) (default 0.1:10:0.1)");

    auto* oracle_check = app.add_subcommand("oracle-check", "Cross-check reductions against the two-mode oracle");
    add_common(oracle_check, config, raw);
    oracle_check->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    oracle_check->add_option("--max-n", raw.max_n, "Largest support (default 8)");
    oracle_check->add_option("--cases", config.cases, "Random states")->capture_default_str();

    auto* profile = app.add_subcommand("profile-overlap", "q0^2 of a sampled 1-D mode profile");
    add_common(profile, config, raw);
    profile->add_option("--profile", config.profile, "Two-column position/value file")->required();
    profile->add_option("--region", raw.region, "Region lo:hi")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : probeview::cli::kValidationError;
    }

    if (app.got_subcommand(reduce)) config.command = Command::Reduce;
    if (app.got_subcommand(sweep_purity)) config.command = Command::SweepPurity;
    if (app.got_subcommand(sweep_thermal)) config.command = Command::SweepThermal;
    if (app.got_subcommand(oracle_check)) config.command = Command::OracleCheck;
    if (app.got_subcommand(profile)) config.command = Command::ProfileOverlap;
    config.format = raw.format == "csv" ? probeview::cli::OutputFormat::Csv : probeview::cli::OutputFormat::Json;

    try {
        if (!raw.q0sq.empty()) config.q0sq = probeview::cli::parse_grid(raw.q0sq);
        if (!raw.inv_beta_energy.empty()) config.inv_beta_energy = probeview::cli::parse_grid(raw.inv_beta_energy);
        if (!raw.region.empty()) config.region = probeview::cli::parse_interval(raw.region);
        if (raw.max_n >= 0) config.max_n = static_cast<probeview::Index>(raw.max_n);
        else if (raw.max_n != -1) throw probeview::ValidationError("--max-n must be nonnegative");
    } catch (const probeview::ValidationError& e) {
        std::cerr << "probeview: validation error: " << e.what() << '\n';
        return probeview::cli::kValidationError;
    }

    return probeview::cli::run(config, std::cout, std::cerr);
}
