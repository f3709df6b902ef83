#ifndef LRF_SYMBOL_HPP
#define LRF_SYMBOL_HPP

#include <vector>

#include "lrf/errors.hpp"

namespace lrf {

/// Two-sided regression weights b_1..b_N in canonical form (trailing
/// zeros stripped, so b_N != 0 whenever N > 0). The associated symbol
/// on the unit circle is
///
///     b(theta) = 1 - 2 * sum_j b_j * cos(j*theta),
///
/// the symbol of the Laurent matrix with unit diagonal and -b_|i-j|
/// off the diagonal. An empty sequence means b == 1 (white noise).
struct SymbolCoefficients {
    std::vector<double> coeffs;

    int band_width() const { return static_cast<int>(coeffs.size()); }
    bool empty() const { return coeffs.empty(); }
};

/// Uniform samples of the symbol at theta_m = 2*pi*m/M.
struct SpectralGrid {
    int size = 0;
    std::vector<double> values;
};

enum class PositivityVerdict {
    Positive,     ///< min over the circle exceeds the tolerance
    NearSingular, ///< 0 < min <= tolerance; inversion would be unreliable
    NotPositive,  ///< the symbol attains zero or goes negative
};

struct PositivityReport {
    double min_value = 0.0;
    double argmin_angle = 0.0;
    bool is_positive = false;
    double wiener_sum = 0.0;             ///< sum_j |b_j|
    bool sufficient_condition_met = false; ///< wiener_sum < 1/2
    PositivityVerdict verdict = PositivityVerdict::NotPositive;
};

/// Fourier coefficients g_0..g_K of the reciprocal symbol 1/b, with
/// g_k = g_{-k} (the symbol is real and even).
struct InverseSymbol {
    std::vector<double> g;
    double tail_ratio = 0.0;  ///< |g_K| / g_0, decay diagnostic
    int grid_size = 0;        ///< FFT size the coefficients came from
    double noise_floor = 0.0; ///< relative level below which entries are rounding noise
};

/// Positivity margin below which a symbol is treated as effectively
/// singular; see PositivityVerdict::NearSingular.
inline constexpr double kPositivityTolerance = 1e-9;

/// Canonicalize a coefficient sequence (strip trailing zeros).
/// Throws InvalidCoefficient on NaN/inf entries.
SymbolCoefficients build_symbol(const std::vector<double>& coeffs);

/// Direct evaluation of b(theta) by the cosine sum.
double evaluate_at(const SymbolCoefficients& sym, double theta);

/// Sample the symbol on the M-point grid via an FFT of the coefficient
/// vector embedded symmetrically. M must be a power of two with
/// M >= 4N + 4; otherwise GridTooCoarse is thrown.
SpectralGrid evaluate_grid(const SymbolCoefficients& sym, int M);

/// Minimum of the symbol over the circle: grid scan plus golden-section
/// refinement around the bracketing interval, the exact Wiener sum and
/// the sufficient condition sum |b_j| < 1/2.
PositivityReport check_positivity(const SymbolCoefficients& sym, int M = 4096);

/// Fourier coefficients g_0..g_K of 1/b from the reciprocal of the
/// M-point grid. Requires a positive symbol (SymbolNotInvertible
/// otherwise) and K <= M/2 (GridTooCoarse otherwise). If the decay
/// diagnostic |g_K|/g_0 exceeds tail_tol, TruncationWarning is thrown;
/// the default never triggers since |g_k| <= g_0.
InverseSymbol invert_symbol(const SymbolCoefficients& sym, int K, int M,
                            double tail_tol = 1.0);

/// Like invert_symbol, but picks K and the grid size automatically:
/// K is the smallest truncation with the whole tail below tail_tol and
/// the grid is doubled until aliasing is negligible. The tolerance is
/// clamped at the transform's rounding floor (noise_floor in the
/// result), which matters only for nearly singular symbols. Throws
/// TruncationWarning if the cap (2^18 points) cannot achieve it.
InverseSymbol invert_symbol_auto(const SymbolCoefficients& sym,
                                 double tail_tol = 1e-10);

} // namespace lrf

#endif // LRF_SYMBOL_HPP
