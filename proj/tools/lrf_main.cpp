#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrf/report.hpp"

namespace {

struct CliOptions {
    std::vector<double> b;
    std::vector<double> beta;
    int K = 0;
    int order = 0;
    long long T = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    int grid = 0;
    std::string format;
    std::string generator;
    std::string config_path;
    std::string out_path;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--b", opts.b, "two-sided coefficients b_1..b_N, comma separated")
        ->delimiter(',');
    cmd->add_option("--beta", opts.beta, "one-sided coefficients beta_1..beta_M, comma separated")
        ->delimiter(',');
    cmd->add_option("--K", opts.K, "correlation depth (0 = automatic)");
    cmd->add_option("--order", opts.order, "model order (0 = band width)");
    cmd->add_option("--T", opts.T, "sample path length");
    cmd->add_option("--reps", opts.reps, "number of verify replications");
    cmd->add_option("--seed", opts.seed, "master RNG seed");
    cmd->add_option("--grid", opts.grid, "spectral grid size (power of two)");
    cmd->add_option("--format", opts.format, "report format: json or csv");
    cmd->add_option("--generator", opts.generator, "simulate backend: ar or circulant");
    cmd->add_option("--config", opts.config_path, "JSON config file; flags override its values");
    cmd->add_option("--out", opts.out_path, "write the report to this file instead of stdout");
}

lrf::JobConfig build_config(const CLI::App* cmd, const CliOptions& opts) {
    lrf::JobConfig config;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw lrf::UsageError("cannot open config file " + opts.config_path);
        const lrf::Json parsed = lrf::Json::parse(in, nullptr, /*allow_exceptions=*/false);
        if (parsed.is_discarded()) throw lrf::UsageError("config file is not valid JSON");
        config = lrf::config_from_json(parsed);
    }
    if (cmd->count("--b") > 0 || cmd->count("--beta") > 0) {
        config.b.reset();
        config.beta.reset();
        if (cmd->count("--b") > 0) config.b = opts.b;
        if (cmd->count("--beta") > 0) config.beta = opts.beta;
    }
    if (cmd->count("--K") > 0) config.K = opts.K;
    if (cmd->count("--order") > 0) config.order = opts.order;
    if (cmd->count("--T") > 0) config.T = opts.T;
    if (cmd->count("--reps") > 0) config.reps = opts.reps;
    if (cmd->count("--seed") > 0) config.seed = opts.seed;
    if (cmd->count("--grid") > 0) config.grid = opts.grid;
    if (cmd->count("--format") > 0) config.format = opts.format;
    if (cmd->count("--generator") > 0) config.generator = opts.generator;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary Gaussian sequences with two-sided linear regressions: "
                 "existence, correlations, one-sided models, simulation"};
    app.require_subcommand(1);

    CliOptions opts;
    CLI::App* analyze = app.add_subcommand("analyze", "existence verdict, correlations and v");
    CLI::App* factor =
        app.add_subcommand("factor", "one-sided model by spectral factorization, all routes");
    CLI::App* simulate = app.add_subcommand("simulate", "generate a reproducible sample path");
    CLI::App* verify =
        app.add_subcommand("verify", "Monte Carlo recovery of the regression identities");
    for (CLI::App* cmd : {analyze, factor, simulate, verify}) add_common_options(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        const lrf::JobConfig config = build_config(cmd, opts);

        lrf::CommandResult result;
        if (cmd == analyze) {
            result = lrf::run_analyze(config);
        } else if (cmd == factor) {
            result = lrf::run_factor(config);
        } else if (cmd == simulate) {
            result = lrf::run_simulate(config);
        } else {
            result = lrf::run_verify(config);
        }

        if (result.report.contains("verification")) {
            for (const auto& check : result.report["verification"]["values"]["checks"]) {
                std::cerr << (check["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                          << check["name"].get<std::string>() << " estimate "
                          << check["estimate"].get<double>() << " target "
                          << check["target"].get<double>() << " (z = "
                          << check["z"].get<double>() << ")\n";
            }
        }
        if (result.report.contains("message")) {
            std::cerr << result.report["message"].get<std::string>() << "\n";
        }

        const std::string rendered = lrf::render_report(result.report);
        if (!opts.out_path.empty()) {
            std::ofstream out(opts.out_path);
            if (!out) throw lrf::UsageError("cannot write output file " + opts.out_path);
            out << rendered;
        } else {
            std::cout << rendered;
        }
        return result.exit_code;
    } catch (const lrf::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
