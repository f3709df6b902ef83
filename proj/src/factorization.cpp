#include "lrf/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lrf/fft.hpp"

namespace lrf {

namespace {

constexpr double kUnitCircleMargin = 1e-8;
constexpr double kLevinsonBreakdown = 1.0 - 1e-12;

// Coefficients of z^N b(z), low-to-high: -b_N, ..., -b_1, 1, -b_1, ..., -b_N.
std::vector<double> laurent_polynomial(const SymbolCoefficients& sym) {
    const int N = sym.band_width();
    std::vector<double> p(static_cast<std::size_t>(2 * N + 1), 0.0);
    p[static_cast<std::size_t>(N)] = 1.0;
    for (int j = 1; j <= N; ++j) {
        p[static_cast<std::size_t>(N - j)] = -sym.coeffs[static_cast<std::size_t>(j - 1)];
        p[static_cast<std::size_t>(N + j)] = -sym.coeffs[static_cast<std::size_t>(j - 1)];
    }
    return p;
}

// Multiply out prod (1 - z/zeta) over the given roots, pairing complex
// conjugates so the result is exactly real. The constant term is 1.
std::vector<double> real_polynomial_from_roots(std::vector<std::complex<double>> roots) {
    std::vector<double> q{1.0};
    auto convolve = [&q](const std::vector<double>& factor) {
        std::vector<double> out(q.size() + factor.size() - 1, 0.0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            for (std::size_t j = 0; j < factor.size(); ++j) out[i + j] += q[i] * factor[j];
        }
        q = std::move(out);
    };

    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const std::complex<double> zeta = roots[i];
        if (std::abs(zeta.imag()) <= 1e-12 * std::abs(zeta)) {
            convolve({1.0, -1.0 / zeta.real()});
            continue;
        }
        // Find the conjugate partner.
        std::size_t partner = roots.size();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(roots[j] - std::conj(zeta));
            if (d < best) {
                best = d;
                partner = j;
            }
        }
        if (partner == roots.size() || best > 1e-8 * std::abs(zeta)) {
            throw Error("factor reconstruction: complex root without conjugate partner");
        }
        used[partner] = true;
        const double inv_mod2 = 1.0 / std::norm(zeta);
        convolve({1.0, -2.0 * zeta.real() * inv_mod2, inv_mod2});
    }
    return q;
}

SpectralFactor normalized_factor(std::vector<double> q) {
    double sum_sq = 0.0;
    for (double x : q) sum_sq += x * x;
    const double scale = 1.0 / std::sqrt(sum_sq);
    for (double& x : q) x *= scale;
    if (q[0] < 0.0) {
        for (double& x : q) x = -x;
    }
    return SpectralFactor{std::move(q)};
}

int factorization_grid(const SymbolCoefficients& sym) {
    return std::max<int>(4096, static_cast<int>(fft::next_power_of_two(
                                   static_cast<std::size_t>(4 * sym.band_width() + 4))));
}

std::vector<double> strip_trailing_zeros(std::vector<double> values) {
    while (!values.empty() && values.back() == 0.0) values.pop_back();
    return values;
}

} // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2) return {};
    const std::size_t degree = coeffs.size() - 1;
    const double lead = coeffs.back();
    if (lead == 0.0) throw Error("polynomial_roots: leading coefficient is zero");

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                      static_cast<Eigen::Index>(degree));
    for (std::size_t i = 1; i < degree; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < degree; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) =
            -coeffs[i] / lead;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("polynomial_roots: eigen solver failed");

    std::vector<std::complex<double>> roots(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    }
    return roots;
}

double min_root_modulus(const std::vector<double>& betas) {
    const std::vector<double> canon = strip_trailing_zeros(betas);
    if (canon.empty()) return std::numeric_limits<double>::infinity();
    std::vector<double> poly(canon.size() + 1);
    poly[0] = 1.0;
    for (std::size_t j = 0; j < canon.size(); ++j) poly[j + 1] = -canon[j];
    double min_mod = std::numeric_limits<double>::infinity();
    for (const auto& root : polynomial_roots(poly)) min_mod = std::min(min_mod, std::abs(root));
    return min_mod;
}

SpectralFactor fejer_riesz(const SymbolCoefficients& sym) {
    if (sym.empty()) return SpectralFactor{{1.0}};

    const PositivityReport report = check_positivity(sym, factorization_grid(sym));
    if (report.min_value < -kPositivityTolerance) {
        throw SymbolNotInvertible("symbol goes negative (min = " +
                                  std::to_string(report.min_value) + ")");
    }
    if (!report.is_positive) {
        throw SymbolNearSingular("symbol minimum " + std::to_string(report.min_value) +
                                 " is within the positivity tolerance of zero");
    }

    const std::vector<std::complex<double>> all_roots = polynomial_roots(laurent_polynomial(sym));
    std::vector<std::complex<double>> outside;
    for (const auto& root : all_roots) {
        const double mod = std::abs(root);
        if (std::abs(mod - 1.0) < kUnitCircleMargin) {
            throw SymbolNearSingular("factorization root at modulus " + std::to_string(mod) +
                                     " is within 1e-8 of the unit circle");
        }
        if (mod > 1.0) outside.push_back(root);
    }
    if (static_cast<int>(outside.size()) != sym.band_width()) {
        throw Error("fejer_riesz: expected " + std::to_string(sym.band_width()) +
                    " roots outside the unit circle, found " + std::to_string(outside.size()));
    }

    return normalized_factor(real_polynomial_from_roots(std::move(outside)));
}

SpectralFactor szego_factor(const SymbolCoefficients& sym, int M, int grid) {
    if (M < 0) throw Error("szego_factor: negative truncation order");
    if (grid < 2 * (M + 1)) {
        throw GridTooCoarse("cepstral grid " + std::to_string(grid) +
                            " cannot resolve coefficients up to " + std::to_string(M));
    }

    const PositivityReport report = check_positivity(sym, grid);
    if (!report.is_positive) {
        throw SymbolNotInvertible("cepstrum requires a strictly positive symbol (min = " +
                                  std::to_string(report.min_value) + ")");
    }

    const SpectralGrid values = evaluate_grid(sym, grid);
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(grid));
    for (int m = 0; m < grid; ++m) {
        buf[static_cast<std::size_t>(m)] = std::log(values.values[static_cast<std::size_t>(m)]);
    }
    fft::transform(buf, true);

    // The recursion below is triangular in the cepstral coefficients, so
    // c_0..c_M only ever see a_0..a_M. Overshooting a little past M lets
    // us measure the factor mass a truncation at M would discard.
    const int limit = std::min(M + 16, grid / 2);
    std::vector<double> cepstrum(static_cast<std::size_t>(limit) + 1);
    for (int n = 0; n <= limit; ++n) {
        cepstrum[static_cast<std::size_t>(n)] = buf[static_cast<std::size_t>(n)].real();
    }

    // Power-series exponential: k c_k = sum_{j=1}^{k} j a_j c_{k-j}.
    std::vector<double> c(static_cast<std::size_t>(limit) + 1, 0.0);
    c[0] = std::exp(cepstrum[0] / 2.0);
    for (int k = 1; k <= limit; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) {
            acc += static_cast<double>(j) * cepstrum[static_cast<std::size_t>(j)] *
                   c[static_cast<std::size_t>(k - j)];
        }
        c[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }

    for (int k = M + 1; k <= limit; ++k) {
        if (std::abs(c[static_cast<std::size_t>(k)]) / c[0] > 1e-10) {
            throw TruncationWarning("spectral factor has mass beyond truncation order " +
                                    std::to_string(M) + "; enlarge M");
        }
    }

    c.resize(static_cast<std::size_t>(M) + 1);
    return normalized_factor(std::move(c));
}

SpectralFactor szego_factor_auto(const SymbolCoefficients& sym) {
    int M = std::max(4 * sym.band_width(), 64);
    for (;; M *= 2) {
        const int grid = std::max<int>(
            4096, static_cast<int>(fft::next_power_of_two(static_cast<std::size_t>(
                      std::max(8 * (M + 1), 4 * sym.band_width() + 4)))));
        try {
            return szego_factor(sym, M, grid);
        } catch (const TruncationWarning&) {
            if (M >= 4096) throw;
        }
    }
}

BetaFromFactorResult beta_from_factor(const SpectralFactor& factor,
                                      const CorrelationSequence& corr) {
    if (factor.c.empty() || factor.c[0] <= 0.0) {
        throw Error("beta_from_factor: factor must have c_0 > 0");
    }
    BetaFromFactorResult result;
    result.v_over_w = factor.c[0] * factor.c[0];
    result.model.betas.resize(factor.c.size() - 1);
    for (std::size_t j = 1; j < factor.c.size(); ++j) {
        result.model.betas[j - 1] = -factor.c[j] / factor.c[0];
    }
    if (corr.max_lag() < result.model.order()) {
        throw InsufficientCorrelations("beta_from_factor needs lags up to the model order");
    }
    double acc = 0.0;
    for (int j = 1; j <= result.model.order(); ++j) {
        acc += result.model.betas[static_cast<std::size_t>(j - 1)] * corr.r[static_cast<std::size_t>(j)];
    }
    result.model.w = 1.0 - acc;
    return result;
}

YuleWalkerSolution yule_walker(const CorrelationSequence& corr, int n) {
    if (n < 0) throw InsufficientCorrelations("system size must be nonnegative");
    if (n > corr.max_lag()) {
        throw InsufficientCorrelations("Yule-Walker system of size " + std::to_string(n) +
                                       " needs lags up to " + std::to_string(n) +
                                       ", have " + std::to_string(corr.max_lag()));
    }

    YuleWalkerSolution solution;
    solution.betas.assign(static_cast<std::size_t>(n), 0.0);
    solution.w = 1.0;
    std::vector<double> prev(static_cast<std::size_t>(n), 0.0);

    for (int m = 1; m <= n; ++m) {
        double acc = corr.r[static_cast<std::size_t>(m)];
        for (int j = 1; j < m; ++j) {
            acc -= solution.betas[static_cast<std::size_t>(j - 1)] * corr.r[static_cast<std::size_t>(m - j)];
        }
        const double reflection = acc / solution.w;
        if (std::abs(reflection) >= kLevinsonBreakdown) {
            throw NotPositiveDefinite("Levinson reflection coefficient " +
                                      std::to_string(reflection) + " at order " +
                                      std::to_string(m));
        }
        std::copy(solution.betas.begin(), solution.betas.begin() + (m - 1), prev.begin());
        for (int j = 1; j < m; ++j) {
            solution.betas[static_cast<std::size_t>(j - 1)] =
                prev[static_cast<std::size_t>(j - 1)] - reflection * prev[static_cast<std::size_t>(m - j - 1)];
        }
        solution.betas[static_cast<std::size_t>(m - 1)] = reflection;
        solution.w *= 1.0 - reflection * reflection;
    }
    return solution;
}

SymbolCoefficients band_beta_to_b(const std::vector<double>& betas) {
    for (double beta : betas) {
        if (!std::isfinite(beta)) throw InvalidCoefficient("one-sided coefficient is not finite");
    }
    const std::vector<double> canon = strip_trailing_zeros(betas);
    if (canon.empty()) return SymbolCoefficients{};

    const double margin = min_root_modulus(canon);
    if (!(margin > 1.0)) {
        throw NotMinimumPhase("beta polynomial has a root of modulus " + std::to_string(margin) +
                              " inside or on the unit circle");
    }

    const int N = static_cast<int>(canon.size());
    double denom = 1.0;
    for (double beta : canon) denom += beta * beta;

    std::vector<double> b(static_cast<std::size_t>(N));
    for (int r = 1; r <= N; ++r) {
        double acc = canon[static_cast<std::size_t>(r - 1)];
        for (int k = 1; k + r <= N; ++k) {
            acc -= canon[static_cast<std::size_t>(k - 1)] * canon[static_cast<std::size_t>(k + r - 1)];
        }
        b[static_cast<std::size_t>(r - 1)] = acc / denom;
    }
    return build_symbol(b);
}

double verify_bbeta_identity(const SymbolCoefficients& sym, const OneSidedModel& model,
                             double v, double w, int grid) {
    if (grid < model.order() + 1) {
        throw GridTooCoarse("identity grid smaller than the model order");
    }
    const SpectralGrid values = evaluate_grid(sym, grid);

    std::vector<std::complex<double>> beta(static_cast<std::size_t>(grid), 0.0);
    beta[0] = 1.0;
    for (int j = 1; j <= model.order(); ++j) {
        beta[static_cast<std::size_t>(j)] = -model.betas[static_cast<std::size_t>(j - 1)];
    }
    fft::transform(beta, false);

    const double ratio = v / w;
    double max_residual = 0.0;
    for (int m = 0; m < grid; ++m) {
        const double beta_sq = std::norm(beta[static_cast<std::size_t>(m)]);
        max_residual = std::max(max_residual,
                                std::abs(values.values[static_cast<std::size_t>(m)] - ratio * beta_sq));
    }
    return max_residual;
}

} // namespace lrf
