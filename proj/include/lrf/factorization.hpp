#ifndef LRF_FACTORIZATION_HPP
#define LRF_FACTORIZATION_HPP

#include <complex>
#include <vector>

#include "lrf/correlation.hpp"
#include "lrf/symbol.hpp"

namespace lrf {

/// One-sided (autoregressive) representation: the regression of X_k on
/// its past is sum_j beta_j X_{k-j} with innovation variance w. The
/// polynomial beta(z) = 1 - sum_j beta_j z^j is minimum phase for any
/// model produced by this module.
struct OneSidedModel {
    std::vector<double> betas; ///< beta_1..beta_M
    double w = 1.0;            ///< one-sided conditional variance

    int order() const { return static_cast<int>(betas.size()); }
};

/// Outer spectral factor: b(theta) = |C(e^{i theta})|^2 with
/// C(z) = sum_j c_j z^j, c_0 > 0, sum_j c_j^2 = 1 and no roots in the
/// closed unit disk. The factor coefficients reproduce the symbol via
/// b_r = -sum_j c_j c_{j+r}.
struct SpectralFactor {
    std::vector<double> c; ///< c_0..c_M

    int degree() const { return static_cast<int>(c.size()) - 1; }
};

struct BetaFromFactorResult {
    OneSidedModel model;
    double v_over_w = 1.0; ///< c_0^2, the variance ratio
};

struct YuleWalkerSolution {
    std::vector<double> betas; ///< beta^(n), the order-n predictor
    double w = 1.0;            ///< final prediction-error variance
};

/// Roots of a real polynomial given by coefficients low-to-high
/// (leading coefficient nonzero), via the companion matrix.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// Smallest root modulus of beta(z) = 1 - sum_j beta_j z^j; +infinity
/// for the empty model. Minimum phase means this exceeds 1.
double min_root_modulus(const std::vector<double>& betas);

/// Spectral factorization of a band symbol by rooting z^N b(z): the 2N
/// roots pair as (rho, 1/rho); the N roots outside the unit circle
/// rebuild the outer polynomial, normalized to sum c_j^2 = 1.
/// Throws SymbolNearSingular when a root sits within 1e-8 of the unit
/// circle and SymbolNotInvertible when the symbol goes negative.
SpectralFactor fejer_riesz(const SymbolCoefficients& sym);

/// Spectral factorization through the cepstrum: a_n are the Fourier
/// coefficients of log b on the grid, and C = exp(a_0/2 + sum a_n z^n)
/// is expanded by the power-series recursion k c_k = sum_j j a_j c_{k-j},
/// truncated at M and renormalized. Throws TruncationWarning when the
/// cepstral tail |a_M| exceeds 1e-10.
SpectralFactor szego_factor(const SymbolCoefficients& sym, int M, int grid);

/// szego_factor with M = max(4N, 64) doubled until |a_M| < 1e-10.
SpectralFactor szego_factor_auto(const SymbolCoefficients& sym);

/// One-sided model from an outer factor: beta_j = -c_j/c_0 and
/// v/w = c_0^2; w is evaluated against the correlations as
/// w = 1 - sum_j beta_j r_j.
BetaFromFactorResult beta_from_factor(const SpectralFactor& factor,
                                      const CorrelationSequence& corr);

/// Levinson-Durbin solve of T_n(r) beta = (r_1..r_n)^T in O(n^2);
/// w is the recursion's final prediction-error variance. Throws
/// NotPositiveDefinite when a reflection coefficient reaches modulus
/// 1 - 1e-12.
YuleWalkerSolution yule_walker(const CorrelationSequence& corr, int n);

/// Two-sided coefficients of the symbol whose one-sided model is beta:
/// b_r = (beta_r - sum_k beta_k beta_{k+r}) / (1 + sum_j beta_j^2).
/// Requires beta(z) minimum phase (NotMinimumPhase otherwise).
SymbolCoefficients band_beta_to_b(const std::vector<double>& betas);

/// Max grid residual of b(theta) - (v/w) |beta(e^{i theta})|^2, the
/// central identity linking the two-sided and one-sided models.
double verify_bbeta_identity(const SymbolCoefficients& sym, const OneSidedModel& model,
                             double v, double w, int grid);

} // namespace lrf

#endif // LRF_FACTORIZATION_HPP
