#include "lrf/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrf/fft.hpp"

namespace lrf {

namespace {

CorrelationSequence from_inverse(const InverseSymbol& inv, int K) {
    CorrelationSequence corr;
    corr.v = 1.0 / inv.g[0];
    corr.r.resize(static_cast<std::size_t>(K) + 1);
    corr.r[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        corr.r[static_cast<std::size_t>(k)] = inv.g[static_cast<std::size_t>(k)] * corr.v;
    }
    return corr;
}

} // namespace

CorrelationSequence correlations_from_symbol(const SymbolCoefficients& sym, int K) {
    if (K < 0) throw InsufficientCorrelations("correlation depth K must be nonnegative");
    const int wanted = std::max(4 * sym.band_width() + 4, 2 * K + 2);
    int M = std::max<int>(4096, static_cast<int>(fft::next_power_of_two(static_cast<std::size_t>(wanted))));
    // Enlarge the grid until the edge of the reciprocal spectrum decays
    // to rounding level, so aliasing cannot contaminate g_0..g_K.
    for (;; M *= 2) {
        const InverseSymbol full = invert_symbol(sym, M / 2, M);
        double edge = 0.0;
        for (std::size_t k = full.g.size() - std::min<std::size_t>(5, full.g.size()); k < full.g.size(); ++k) {
            edge = std::max(edge, std::abs(full.g[k]));
        }
        if (edge / full.g[0] < std::max(1e-13, full.noise_floor)) return from_inverse(full, K);
        if (M >= (1 << 18)) {
            throw TruncationWarning("reciprocal symbol does not decay within the maximum grid; "
                                    "the symbol is too close to singular");
        }
    }
}

CorrelationSequence correlations_from_symbol_auto(const SymbolCoefficients& sym) {
    // |r_K| < 1e-12 is |g_K|/g_0 < 1e-12 since r_k = g_k / g_0.
    const InverseSymbol inv = invert_symbol_auto(sym, 1e-12);
    const int K = std::max(128, static_cast<int>(inv.g.size()) - 1);
    return correlations_from_symbol(sym, K);
}

Eigen::MatrixXd toeplitz_section(const CorrelationSequence& corr, int n) {
    if (n < 1) throw InsufficientCorrelations("section size must be positive");
    if (n - 1 > corr.max_lag()) {
        throw InsufficientCorrelations("section of size " + std::to_string(n) +
                                       " needs lags up to " + std::to_string(n - 1) +
                                       ", have " + std::to_string(corr.max_lag()));
    }
    Eigen::MatrixXd section(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            section(i, j) = corr.r[static_cast<std::size_t>(std::abs(i - j))];
        }
    }
    return section;
}

double check_v_identity(const SymbolCoefficients& sym, const CorrelationSequence& corr) {
    if (corr.max_lag() < sym.band_width()) {
        throw InsufficientCorrelations("v identity needs lags up to the band width");
    }
    double sum = 0.0;
    for (int j = 1; j <= sym.band_width(); ++j) {
        sum += sym.coeffs[static_cast<std::size_t>(j - 1)] * corr.r[static_cast<std::size_t>(j)];
    }
    return std::abs(corr.v - (1.0 - 2.0 * sum));
}

double check_br_identity(const SymbolCoefficients& sym, const CorrelationSequence& corr,
                         int grid) {
    const int K = corr.max_lag();
    const int wanted = std::max({grid, 2 * K + 2, 4 * sym.band_width() + 4});
    const int M = static_cast<int>(fft::next_power_of_two(static_cast<std::size_t>(wanted)));

    const SpectralGrid symbol_values = evaluate_grid(sym, M);

    // r(theta) on the same grid, by the same symmetric embedding.
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(M), 0.0);
    buf[0] = corr.r[0];
    for (int k = 1; k <= K; ++k) {
        buf[static_cast<std::size_t>(k)] = corr.r[static_cast<std::size_t>(k)];
        buf[static_cast<std::size_t>(M - k)] = corr.r[static_cast<std::size_t>(k)];
    }
    fft::transform(buf, false);

    double max_residual = 0.0;
    for (int m = 0; m < M; ++m) {
        const double br = symbol_values.values[static_cast<std::size_t>(m)] *
                          buf[static_cast<std::size_t>(m)].real();
        max_residual = std::max(max_residual, std::abs(br - corr.v));
    }
    return max_residual;
}

} // namespace lrf
