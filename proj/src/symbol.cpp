#include "lrf/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "lrf/fft.hpp"

namespace lrf {

namespace {

constexpr double kImagTruncation = 1e-12;
constexpr int kMaxGridSize = 1 << 18;

int minimum_grid(int band_width) {
    return 4 * band_width + 4;
}

void require_grid(const SymbolCoefficients& sym, int M) {
    if (M < 1 || !fft::is_power_of_two(static_cast<std::size_t>(M))) {
        throw GridTooCoarse("grid size must be a power of two, got " + std::to_string(M));
    }
    if (M < minimum_grid(sym.band_width())) {
        throw GridTooCoarse("grid size " + std::to_string(M) + " < 4N+4 = " +
                            std::to_string(minimum_grid(sym.band_width())));
    }
}

// Golden-section minimization of the symbol on [lo, hi].
std::pair<double, double> golden_min(const SymbolCoefficients& sym, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = evaluate_at(sym, x1);
    double f2 = evaluate_at(sym, x2);
    for (int it = 0; it < 120 && (b - a) > 1e-14; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = evaluate_at(sym, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = evaluate_at(sym, x2);
        }
    }
    const double mid = 0.5 * (a + b);
    return {mid, evaluate_at(sym, mid)};
}

struct ReciprocalSpectrum {
    std::vector<double> g; ///< g_0..g_{M/2}
    double peak = 0.0;     ///< max of 1/b over the grid
};

// Inverse-symbol coefficients g_0..g_{M/2} from the M-point grid.
ReciprocalSpectrum reciprocal_coefficients(const SymbolCoefficients& sym, int M) {
    const SpectralGrid grid = evaluate_grid(sym, M);
    ReciprocalSpectrum spectrum;
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const double reciprocal = 1.0 / grid.values[static_cast<std::size_t>(m)];
        buf[static_cast<std::size_t>(m)] = reciprocal;
        spectrum.peak = std::max(spectrum.peak, std::abs(reciprocal));
    }
    fft::transform(buf, true);
    spectrum.g.resize(static_cast<std::size_t>(M / 2 + 1));
    for (int k = 0; k <= M / 2; ++k) {
        spectrum.g[static_cast<std::size_t>(k)] = buf[static_cast<std::size_t>(k)].real();
    }
    return spectrum;
}

// The transform cannot resolve coefficients below its rounding floor,
// which scales with the peak of the reciprocal grid. Decay tolerances
// are clamped there so near-singular symbols terminate honestly.
double resolution_floor(const ReciprocalSpectrum& spectrum) {
    return 32.0 * std::numeric_limits<double>::epsilon() * spectrum.peak / spectrum.g[0];
}

void require_positive(const SymbolCoefficients& sym, int M) {
    const PositivityReport report = check_positivity(sym, M);
    if (report.verdict == PositivityVerdict::NotPositive) {
        throw SymbolNotInvertible("symbol attains 0 or goes negative (min = " +
                                  std::to_string(report.min_value) + ")");
    }
    if (report.verdict == PositivityVerdict::NearSingular) {
        throw SymbolNotInvertible("symbol minimum " + std::to_string(report.min_value) +
                                  " is below the positivity tolerance (near-singular)");
    }
}

} // namespace

SymbolCoefficients build_symbol(const std::vector<double>& coeffs) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (!std::isfinite(coeffs[j])) {
            throw InvalidCoefficient("coefficient b_" + std::to_string(j + 1) + " is not finite");
        }
    }
    SymbolCoefficients sym{coeffs};
    while (!sym.coeffs.empty() && sym.coeffs.back() == 0.0) sym.coeffs.pop_back();
    return sym;
}

double evaluate_at(const SymbolCoefficients& sym, double theta) {
    double value = 1.0;
    for (std::size_t j = 0; j < sym.coeffs.size(); ++j) {
        value -= 2.0 * sym.coeffs[j] * std::cos(static_cast<double>(j + 1) * theta);
    }
    return value;
}

SpectralGrid evaluate_grid(const SymbolCoefficients& sym, int M) {
    require_grid(sym, M);
    // Symmetric embedding: a_0 = 1, a_j = a_{M-j} = -b_j, so the DFT is
    // exactly 1 - 2 sum_j b_j cos(j theta_m), real by symmetry.
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(M), 0.0);
    buf[0] = 1.0;
    for (int j = 1; j <= sym.band_width(); ++j) {
        buf[static_cast<std::size_t>(j)] = -sym.coeffs[static_cast<std::size_t>(j - 1)];
        buf[static_cast<std::size_t>(M - j)] = -sym.coeffs[static_cast<std::size_t>(j - 1)];
    }
    fft::transform(buf, false);

    SpectralGrid grid;
    grid.size = M;
    grid.values.resize(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const std::complex<double> z = buf[static_cast<std::size_t>(m)];
        if (std::abs(z.imag()) > kImagTruncation) {
            throw Error("evaluate_grid: imaginary residue above truncation tolerance");
        }
        grid.values[static_cast<std::size_t>(m)] = z.real();
    }
    return grid;
}

PositivityReport check_positivity(const SymbolCoefficients& sym, int M) {
    const SpectralGrid grid = evaluate_grid(sym, M);

    int argmin = 0;
    for (int m = 1; m < M; ++m) {
        if (grid.values[static_cast<std::size_t>(m)] < grid.values[static_cast<std::size_t>(argmin)]) argmin = m;
    }
    const double step = 2.0 * M_PI / static_cast<double>(M);
    const auto [refined_angle, refined_value] =
        golden_min(sym, (argmin - 1) * step, (argmin + 1) * step);

    PositivityReport report;
    if (refined_value <= grid.values[static_cast<std::size_t>(argmin)]) {
        report.min_value = refined_value;
        report.argmin_angle = refined_angle;
    } else {
        report.min_value = grid.values[static_cast<std::size_t>(argmin)];
        report.argmin_angle = argmin * step;
    }

    report.wiener_sum = 0.0;
    for (double b : sym.coeffs) report.wiener_sum += std::abs(b);
    report.sufficient_condition_met = report.wiener_sum < 0.5;

    if (report.min_value > kPositivityTolerance) {
        report.verdict = PositivityVerdict::Positive;
    } else if (report.min_value > 0.0) {
        report.verdict = PositivityVerdict::NearSingular;
    } else {
        report.verdict = PositivityVerdict::NotPositive;
    }
    report.is_positive = report.verdict == PositivityVerdict::Positive;
    return report;
}

InverseSymbol invert_symbol(const SymbolCoefficients& sym, int K, int M, double tail_tol) {
    require_grid(sym, M);
    if (K < 0 || K > M / 2) {
        throw GridTooCoarse("truncation K = " + std::to_string(K) +
                            " needs a grid of at least 2K points, got " + std::to_string(M));
    }
    require_positive(sym, M);

    const ReciprocalSpectrum spectrum = reciprocal_coefficients(sym, M);
    InverseSymbol inv;
    inv.g.assign(spectrum.g.begin(), spectrum.g.begin() + K + 1);
    inv.tail_ratio = std::abs(inv.g.back()) / spectrum.g[0];
    inv.grid_size = M;
    inv.noise_floor = resolution_floor(spectrum);
    if (inv.tail_ratio > tail_tol) {
        throw TruncationWarning("inverse-symbol tail |g_K|/g_0 = " + std::to_string(inv.tail_ratio) +
                                " exceeds " + std::to_string(tail_tol) +
                                "; enlarge K or the grid");
    }
    return inv;
}

InverseSymbol invert_symbol_auto(const SymbolCoefficients& sym, double tail_tol) {
    int M = std::max(4096, static_cast<int>(fft::next_power_of_two(
                               static_cast<std::size_t>(minimum_grid(sym.band_width())))));
    require_positive(sym, M);

    for (;; M *= 2) {
        const ReciprocalSpectrum spectrum = reciprocal_coefficients(sym, M);
        const std::vector<double>& g = spectrum.g;
        const int half = M / 2;

        // Tolerances are clamped at the transform's resolution floor so
        // near-singular symbols cannot loop forever chasing rounding noise.
        const double floor = resolution_floor(spectrum);
        const double alias_tol = std::max(std::min(tail_tol, 1e-12), floor);
        const double trunc_tol = std::max(tail_tol, floor);

        // Aliasing proxy: envelope of the last few coefficients.
        double edge = 0.0;
        for (int k = std::max(0, half - 4); k <= half; ++k) {
            edge = std::max(edge, std::abs(g[static_cast<std::size_t>(k)]));
        }
        const bool aliasing_ok = edge / g[0] < alias_tol;
        if (!aliasing_ok && M < kMaxGridSize) continue;

        // Smallest K >= 1 whose whole tail g_K..g_{M/2} stays below the
        // tolerance; -1 if even the edge coefficient fails.
        int K = -1;
        double suffix_max = 0.0;
        for (int k = half; k >= 1; --k) {
            suffix_max = std::max(suffix_max, std::abs(g[static_cast<std::size_t>(k)]));
            if (suffix_max / g[0] < trunc_tol) K = k;
            else break;
        }
        if (K < 0) {
            if (M < kMaxGridSize) continue;
            throw TruncationWarning("inverse symbol does not decay below tolerance within " +
                                    std::to_string(kMaxGridSize) + " grid points");
        }

        InverseSymbol inv;
        inv.g.assign(g.begin(), g.begin() + K + 1);
        inv.tail_ratio = std::abs(inv.g.back()) / g[0];
        inv.grid_size = M;
        inv.noise_floor = floor;
        return inv;
    }
}

} // namespace lrf
