#include "lrf/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>

#include "lrf/fft.hpp"
#include "lrf/simulation.hpp"

namespace lrf {

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kDefaultCorrelationDepth = 128;
constexpr double kRouteTolerance = 1e-6;

std::vector<double> as_doubles(const Json& node, const std::string& key) {
    if (!node.is_array()) throw UsageError("config field '" + key + "' must be an array");
    std::vector<double> values;
    for (const auto& entry : node) {
        if (!entry.is_number()) throw UsageError("config field '" + key + "' must be numeric");
        values.push_back(entry.get<double>());
    }
    return values;
}

SymbolCoefficients symbol_from_config(const JobConfig& config) {
    if (config.b.has_value()) return build_symbol(*config.b);
    return band_beta_to_b(*config.beta);
}

const char* verdict_name(PositivityVerdict verdict) {
    switch (verdict) {
        case PositivityVerdict::Positive: return "positive";
        case PositivityVerdict::NearSingular: return "near_singular";
        case PositivityVerdict::NotPositive: return "not_positive";
    }
    return "unknown";
}

Json existence_block(const PositivityReport& report) {
    Json block;
    block["values"] = {
        {"min_value", report.min_value},
        {"argmin_angle", report.argmin_angle},
        {"is_positive", report.is_positive},
        {"wiener_sum", report.wiener_sum},
        {"sufficient_condition_met", report.sufficient_condition_met},
        {"verdict", verdict_name(report.verdict)},
    };
    block["residuals"] = Json::object();
    return block;
}

struct CorrelationContext {
    CorrelationSequence corr;
    int K_used = 0;
    bool slow_decay = false;
};

CorrelationContext make_correlations(const SymbolCoefficients& sym, const JobConfig& config) {
    CorrelationContext ctx;
    if (config.K > 0) {
        ctx.corr = correlations_from_symbol(sym, config.K);
    } else {
        ctx.corr = correlations_from_symbol_auto(sym);
        ctx.slow_decay = ctx.corr.max_lag() > kDefaultCorrelationDepth;
    }
    ctx.K_used = ctx.corr.max_lag();
    return ctx;
}

Json correlation_block(const SymbolCoefficients& sym, const CorrelationContext& ctx,
                       const JobConfig& config) {
    Json block;
    block["values"] = {
        {"v", ctx.corr.v},
        {"K", ctx.K_used},
        {"slow_decay", ctx.slow_decay},
        {"r", ctx.corr.r},
    };
    if (ctx.slow_decay) {
        block["values"]["note"] = "correlation tail decays slowly; K enlarged automatically";
    }
    block["residuals"] = {
        {"v_identity", check_v_identity(sym, ctx.corr)},
        {"symbol_identity_max", check_br_identity(sym, ctx.corr, config.grid)},
    };
    return block;
}

int resolved_order(const SymbolCoefficients& sym, const JobConfig& config, bool at_least_one) {
    int order = config.order > 0 ? config.order : sym.band_width();
    if (at_least_one) order = std::max(order, 1);
    return order;
}

// Companion-matrix rooting is trusted up to band width 64; beyond that
// the cepstral route is authoritative.
lrf::SpectralFactor authoritative_factor(const SymbolCoefficients& sym) {
    return sym.band_width() <= 64 ? fejer_riesz(sym) : szego_factor_auto(sym);
}

// Shared scaffolding: input block, config validation, domain-error
// capture. Domain failures yield exit code 1 with a partial report;
// config problems propagate as UsageError (exit code 2).
CommandResult guarded(const JobConfig& config, const std::string& command,
                      const std::function<void(Json&, int&)>& body) {
    validate_config(config);
    Json report;
    report["schema"] = kSchemaVersion;
    report["input"] = config_to_json(config);
    report["input"]["command"] = command;

    CommandResult result;
    result.exit_code = 0;
    try {
        body(report, result.exit_code);
    } catch (const UsageError&) {
        throw;
    } catch (const GridTooCoarse& e) {
        throw UsageError(e.what());
    } catch (const InvalidCoefficient& e) {
        throw UsageError(e.what());
    } catch (const Error& e) {
        report["message"] = e.what();
        result.exit_code = 1;
    }
    result.report = std::move(report);
    return result;
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
    double max_diff = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        max_diff = std::max(max_diff, std::abs(x - y));
    }
    return max_diff;
}

struct PooledEstimate {
    std::vector<double> coeffs;
    std::vector<double> stderrs;
    double residual_variance = 0.0;
    double residual_stderr = 0.0;
};

PooledEstimate pool(const std::vector<RegressionEstimate>& estimates) {
    PooledEstimate pooled;
    const double reps = static_cast<double>(estimates.size());
    const std::size_t p = estimates.front().coeffs.size();
    pooled.coeffs.assign(p, 0.0);
    pooled.stderrs.assign(p, 0.0);
    double var_sum = 0.0;
    for (const auto& estimate : estimates) {
        for (std::size_t i = 0; i < p; ++i) {
            pooled.coeffs[i] += estimate.coeffs[i] / reps;
            pooled.stderrs[i] += estimate.stderrs[i] * estimate.stderrs[i];
        }
        pooled.residual_variance += estimate.residual_variance / reps;
        const double dof = static_cast<double>(estimate.sample_size) - static_cast<double>(p);
        const double se = estimate.residual_variance * std::sqrt(2.0 / dof);
        var_sum += se * se;
    }
    for (std::size_t i = 0; i < p; ++i) pooled.stderrs[i] = std::sqrt(pooled.stderrs[i]) / reps;
    pooled.residual_stderr = std::sqrt(var_sum) / reps;
    return pooled;
}

Json make_check(const std::string& name, double estimate, double stderr_value, double target) {
    const double z = stderr_value > 0.0 ? std::abs(estimate - target) / stderr_value
                                        : (estimate == target ? 0.0 : INFINITY);
    Json check;
    check["name"] = name;
    check["estimate"] = estimate;
    check["stderr"] = stderr_value;
    check["target"] = target;
    check["z"] = z;
    check["pass"] = z <= 3.0;
    return check;
}

void append_csv_row(std::ostringstream& out, const std::string& name, const std::string& index,
                    double value, const std::string& stderr_text) {
    out << name << ',' << index << ',' << std::setprecision(17) << value << ',' << stderr_text
        << '\n';
}

std::string csv_number(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

void flatten_csv_object(std::ostringstream& out, const std::string& prefix, const Json& node) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string& key = it.key();
        if (key.size() > 7 && key.ends_with("_stderr")) continue; // folded into the value rows
        const std::string name = prefix + "." + key;
        const Json& value = it.value();

        const std::string stderr_key = key + "_stderr";
        const Json* stderr_node =
            node.contains(stderr_key) ? &node.at(stderr_key) : nullptr;

        if (value.is_number()) {
            append_csv_row(out, name, "", value.get<double>(),
                           stderr_node && stderr_node->is_number()
                               ? csv_number(stderr_node->get<double>())
                               : "");
        } else if (value.is_boolean()) {
            append_csv_row(out, name, "", value.get<bool>() ? 1.0 : 0.0, "");
        } else if (value.is_array() && !value.empty() && value.front().is_number()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                std::string se;
                if (stderr_node && stderr_node->is_array() && i < stderr_node->size()) {
                    se = csv_number(stderr_node->at(i).get<double>());
                }
                append_csv_row(out, name, std::to_string(i), value.at(i).get<double>(), se);
            }
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            for (const auto& entry : value) {
                if (entry.contains("name") && entry.contains("estimate")) {
                    append_csv_row(out, name + "." + entry.at("name").get<std::string>(), "",
                                   entry.at("estimate").get<double>(),
                                   entry.contains("stderr")
                                       ? csv_number(entry.at("stderr").get<double>())
                                       : "");
                }
            }
        }
        // strings and empty arrays carry no numeric quantity
    }
}

} // namespace

JobConfig config_from_json(const Json& node) {
    if (!node.is_object()) throw UsageError("config must be a JSON object");
    JobConfig config;
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string& key = it.key();
        const Json& value = it.value();
        if (key == "b") {
            config.b = as_doubles(value, key);
        } else if (key == "beta") {
            config.beta = as_doubles(value, key);
        } else if (key == "K") {
            config.K = value.get<int>();
        } else if (key == "order") {
            config.order = value.get<int>();
        } else if (key == "T") {
            config.T = value.get<long long>();
        } else if (key == "reps") {
            config.reps = value.get<int>();
        } else if (key == "seed") {
            config.seed = value.get<std::uint64_t>();
        } else if (key == "grid") {
            config.grid = value.get<int>();
        } else if (key == "format") {
            config.format = value.get<std::string>();
        } else if (key == "generator") {
            config.generator = value.get<std::string>();
        } else if (key == "command") {
            // embedded by reports; ignored on re-load
        } else {
            throw UsageError("unknown config field '" + key + "'");
        }
    }
    return config;
}

Json config_to_json(const JobConfig& config) {
    Json node;
    if (config.b.has_value()) node["b"] = *config.b;
    if (config.beta.has_value()) node["beta"] = *config.beta;
    node["K"] = config.K;
    node["order"] = config.order;
    node["T"] = config.T;
    node["reps"] = config.reps;
    node["seed"] = config.seed;
    node["grid"] = config.grid;
    node["format"] = config.format;
    node["generator"] = config.generator;
    return node;
}

void validate_config(const JobConfig& config) {
    if (config.b.has_value() == config.beta.has_value()) {
        throw UsageError("exactly one of b / beta must be given");
    }
    if (config.K < 0) throw UsageError("K must be nonnegative (0 = automatic)");
    if (config.order < 0) throw UsageError("order must be nonnegative (0 = band width)");
    if (config.T < 1) throw UsageError("T must be positive");
    if (config.reps < 1) throw UsageError("reps must be positive");
    if (config.grid < 4 || !fft::is_power_of_two(static_cast<std::size_t>(config.grid))) {
        throw UsageError("grid must be a power of two, at least 4");
    }
    if (config.format != "json" && config.format != "csv") {
        throw UsageError("format must be 'json' or 'csv'");
    }
    if (config.generator != "ar" && config.generator != "circulant") {
        throw UsageError("generator must be 'ar' or 'circulant'");
    }
}

CommandResult run_analyze(const JobConfig& config) {
    return guarded(config, "analyze", [&config](Json& report, int& exit_code) {
        const SymbolCoefficients sym = symbol_from_config(config);
        const PositivityReport positivity = check_positivity(sym, config.grid);
        report["existence"] = existence_block(positivity);
        if (!positivity.is_positive) {
            report["message"] = "symbol attains 0 or is not strictly positive";
            exit_code = 1;
            return;
        }
        const CorrelationContext ctx = make_correlations(sym, config);
        report["correlation"] = correlation_block(sym, ctx, config);
    });
}

CommandResult run_factor(const JobConfig& config) {
    return guarded(config, "factor", [&config](Json& report, int& exit_code) {
        const SymbolCoefficients sym = symbol_from_config(config);
        const PositivityReport positivity = check_positivity(sym, config.grid);
        report["existence"] = existence_block(positivity);
        if (!positivity.is_positive) {
            report["message"] = "symbol attains 0 or is not strictly positive";
            exit_code = 1;
            return;
        }
        const CorrelationContext ctx = make_correlations(sym, config);
        report["correlation"] = correlation_block(sym, ctx, config);

        const int N = sym.band_width();
        const bool rooting_trusted = N <= 64;
        const SpectralFactor primary = authoritative_factor(sym);
        const BetaFromFactorResult from_factor = beta_from_factor(primary, ctx.corr);

        // Companion rooting is only a meaningful cross-check at band
        // widths it can handle; beyond that the cepstral factor is
        // checked against Yule-Walker alone. Only the coefficient lists
        // are compared, so the cross-check has no lag-depth needs.
        double route_gap = 0.0;
        if (rooting_trusted) {
            const SpectralFactor cepstral = szego_factor_auto(sym);
            std::vector<double> cepstral_betas(cepstral.c.size() - 1);
            for (std::size_t j = 1; j < cepstral.c.size(); ++j) {
                cepstral_betas[j - 1] = -cepstral.c[j] / cepstral.c[0];
            }
            route_gap = max_abs_difference(from_factor.model.betas, cepstral_betas);
        }
        const int yw_order = std::min(std::max(4 * N, 1), ctx.K_used);
        const YuleWalkerSolution yw = yule_walker(ctx.corr, yw_order);

        // Yule-Walker system residual ||T_n beta - r||_inf.
        const Eigen::MatrixXd section = toeplitz_section(ctx.corr, yw_order);
        Eigen::VectorXd beta_vec(yw_order), rhs(yw_order);
        for (int i = 0; i < yw_order; ++i) {
            beta_vec(i) = yw.betas[static_cast<std::size_t>(i)];
            rhs(i) = ctx.corr.r[static_cast<std::size_t>(i + 1)];
        }
        const double yw_residual = (section * beta_vec - rhs).cwiseAbs().maxCoeff();

        const double yw_gap = max_abs_difference(from_factor.model.betas, yw.betas);
        const double bbeta_residual = verify_bbeta_identity(
            sym, from_factor.model, ctx.corr.v, from_factor.model.w, config.grid);

        Json block;
        block["values"] = {
            {"b", sym.coeffs},
            {"band_width", N},
            {"factor_route", rooting_trusted ? "fejer_riesz" : "szego_cepstral"},
            {"beta", from_factor.model.betas},
            {"w", from_factor.model.w},
            {"v_over_w", from_factor.v_over_w},
            {"c", primary.c},
            {"yule_walker_order", yw_order},
            {"yule_walker_w", yw.w},
        };
        block["residuals"] = {
            {"route_yule_walker", yw_gap},
            {"bbeta_identity", bbeta_residual},
            {"yule_walker_system", yw_residual},
        };
        if (rooting_trusted) block["residuals"]["route_fejer_szego"] = route_gap;
        if (config.beta.has_value()) {
            block["residuals"]["beta_round_trip"] =
                max_abs_difference(*config.beta, from_factor.model.betas);
        }
        report["factorization"] = block;

        if (route_gap > kRouteTolerance || yw_gap > kRouteTolerance) {
            report["message"] = "factorization routes disagree beyond tolerance";
            exit_code = 1;
        }
    });
}

CommandResult run_simulate(const JobConfig& config) {
    return guarded(config, "simulate", [&config](Json& report, int& exit_code) {
        const SymbolCoefficients sym = symbol_from_config(config);
        const PositivityReport positivity = check_positivity(sym, config.grid);
        report["existence"] = existence_block(positivity);
        if (!positivity.is_positive) {
            report["message"] = "symbol attains 0 or is not strictly positive";
            exit_code = 1;
            return;
        }
        const CorrelationContext ctx = make_correlations(sym, config);

        SamplePath path;
        if (config.generator == "ar") {
            const BetaFromFactorResult model =
                beta_from_factor(authoritative_factor(sym), ctx.corr);
            path = simulate_ar(model.model, config.T,
                               default_burn_in(model.model.order()), config.seed);
        } else {
            path = simulate_circulant(ctx.corr, config.T, config.seed);
        }

        double mean = 0.0;
        for (double x : path.values) mean += x;
        mean /= static_cast<double>(path.length());
        double variance = 0.0;
        if (path.length() > 1) {
            for (double x : path.values) variance += (x - mean) * (x - mean);
            variance /= static_cast<double>(path.length() - 1);
        }

        const int lag_depth =
            std::min<int>(8, static_cast<int>((path.length() - 1) / 10));
        const EmpiricalCorrelations empirical = empirical_correlations(path, lag_depth);
        std::vector<double> target(empirical.r.size());
        for (std::size_t k = 0; k < target.size(); ++k) {
            target[k] = k <= static_cast<std::size_t>(ctx.K_used) ? ctx.corr.r[k] : 0.0;
        }

        Json block;
        block["values"] = {
            {"T", path.length()},
            {"generator", config.generator},
            {"rng", GaussianRng::kAlgorithm},
            {"seed", path.seed},
            {"burn_in", path.burn_in},
            {"mean", mean},
            {"variance", variance},
            {"r_hat", empirical.r},
            {"r_hat_stderr", empirical.stderrs},
            {"r_target", target},
        };
        block["residuals"] = Json::object();
        block["path"] = path.values;
        report["simulation"] = block;
        exit_code = 0;
    });
}

CommandResult run_verify(const JobConfig& config) {
    return guarded(config, "verify", [&config](Json& report, int& exit_code) {
        const SymbolCoefficients sym = symbol_from_config(config);
        const PositivityReport positivity = check_positivity(sym, config.grid);
        report["existence"] = existence_block(positivity);
        if (!positivity.is_positive) {
            report["message"] = "symbol attains 0 or is not strictly positive";
            exit_code = 1;
            return;
        }
        const CorrelationContext ctx = make_correlations(sym, config);
        report["correlation"] = correlation_block(sym, ctx, config);

        const BetaFromFactorResult factor =
            beta_from_factor(authoritative_factor(sym), ctx.corr);
        const OneSidedModel& model = factor.model;
        const int order = resolved_order(sym, config, /*at_least_one=*/true);
        const int N = sym.band_width();

        struct Replication {
            RegressionEstimate two_sided;
            RegressionEstimate one_sided;
        };
        std::vector<std::future<Replication>> futures;
        futures.reserve(static_cast<std::size_t>(config.reps));
        for (int rep = 0; rep < config.reps; ++rep) {
            futures.push_back(std::async(std::launch::async, [&, rep]() {
                const SamplePath path =
                    simulate_ar(model, config.T, default_burn_in(model.order()),
                                stream_seed(config.seed, static_cast<std::uint64_t>(rep)));
                Replication result;
                result.two_sided = estimate_two_sided(path, order);
                result.one_sided = estimate_one_sided(path, order);
                return result;
            }));
        }
        std::vector<RegressionEstimate> two_sided, one_sided;
        for (auto& future : futures) {
            Replication rep = future.get();
            two_sided.push_back(std::move(rep.two_sided));
            one_sided.push_back(std::move(rep.one_sided));
        }

        const PooledEstimate pooled_two = pool(two_sided);
        const PooledEstimate pooled_one = pool(one_sided);

        Json checks = Json::array();
        for (int j = 1; j <= order; ++j) {
            const double target = j <= N ? sym.coeffs[static_cast<std::size_t>(j - 1)] : 0.0;
            checks.push_back(make_check("b_" + std::to_string(j),
                                        pooled_two.coeffs[static_cast<std::size_t>(j - 1)],
                                        pooled_two.stderrs[static_cast<std::size_t>(j - 1)],
                                        target));
        }
        checks.push_back(
            make_check("v", pooled_two.residual_variance, pooled_two.residual_stderr, ctx.corr.v));
        for (int j = 1; j <= order; ++j) {
            const double target =
                j <= model.order() ? model.betas[static_cast<std::size_t>(j - 1)] : 0.0;
            checks.push_back(make_check("beta_" + std::to_string(j),
                                        pooled_one.coeffs[static_cast<std::size_t>(j - 1)],
                                        pooled_one.stderrs[static_cast<std::size_t>(j - 1)],
                                        target));
        }
        checks.push_back(
            make_check("w", pooled_one.residual_variance, pooled_one.residual_stderr, model.w));

        bool all_pass = true;
        for (const auto& check : checks) all_pass = all_pass && check.at("pass").get<bool>();

        Json block;
        block["values"] = {
            {"T", config.T},
            {"reps", config.reps},
            {"order", order},
            {"rng", GaussianRng::kAlgorithm},
            {"b_hat", pooled_two.coeffs},
            {"b_hat_stderr", pooled_two.stderrs},
            {"v_hat", pooled_two.residual_variance},
            {"v_hat_stderr", pooled_two.residual_stderr},
            {"beta_hat", pooled_one.coeffs},
            {"beta_hat_stderr", pooled_one.stderrs},
            {"w_hat", pooled_one.residual_variance},
            {"w_hat_stderr", pooled_one.residual_stderr},
            {"all_pass", all_pass},
            {"checks", checks},
        };
        block["residuals"] = Json::object();
        report["verification"] = block;
        exit_code = all_pass ? 0 : 1;
    });
}

std::string render_csv(const Json& report) {
    std::ostringstream out;
    out << "name,index,value,stderr\n";
    for (const char* block : {"existence", "correlation", "factorization", "verification",
                              "simulation"}) {
        if (!report.contains(block)) continue;
        const Json& node = report.at(block);
        if (node.contains("values")) flatten_csv_object(out, block, node.at("values"));
        if (node.contains("residuals")) {
            flatten_csv_object(out, std::string(block) + ".residuals", node.at("residuals"));
        }
        if (node.contains("path")) {
            const Json& path = node.at("path");
            for (std::size_t i = 0; i < path.size(); ++i) {
                append_csv_row(out, std::string(block) + ".path", std::to_string(i),
                               path.at(i).get<double>(), "");
            }
        }
    }
    return out.str();
}

std::string render_report(const Json& report) {
    if (report.contains("input") && report.at("input").value("format", "json") == "csv") {
        return render_csv(report);
    }
    return report.dump(2) + "\n";
}

} // namespace lrf
