#ifndef LRF_CORRELATION_HPP
#define LRF_CORRELATION_HPP

#include <vector>

#include <Eigen/Dense>

#include "lrf/symbol.hpp"

namespace lrf {

/// Stationary correlations r_0..r_K (r_0 = 1) together with the
/// two-sided conditional variance v. Both come from the reciprocal
/// symbol: the covariance sequence is v times the Fourier coefficients
/// of 1/b, so that b(t) r(t) = v on the circle.
struct CorrelationSequence {
    std::vector<double> r; ///< r_0 = 1, r_1..r_K
    double v = 1.0;        ///< conditional variance given all other values

    int max_lag() const { return static_cast<int>(r.size()) - 1; }
};

/// Correlations and v from a positive symbol: v = 1/g_0, r_k = v*g_k.
/// Propagates SymbolNotInvertible from the inversion.
CorrelationSequence correlations_from_symbol(const SymbolCoefficients& sym, int K);

/// Same, with the lag depth chosen automatically: K = max(128, first
/// lag with |r_K| < 1e-12).
CorrelationSequence correlations_from_symbol_auto(const SymbolCoefficients& sym);

/// Leading n-by-n Toeplitz section with entries r_{|i-j|}. All lags up
/// to n-1 must be available (InsufficientCorrelations otherwise).
Eigen::MatrixXd toeplitz_section(const CorrelationSequence& corr, int n);

/// Residual |v - (1 - 2 sum_j b_j r_j)| of the conditional-variance
/// identity tying the correlations back to their generating symbol.
double check_v_identity(const SymbolCoefficients& sym, const CorrelationSequence& corr);

/// Max residual of b(theta) * r(theta) - v over the grid, where
/// r(theta) = 1 + 2 sum_k r_k cos(k theta) is truncated at the stored
/// lag depth. The grid is enlarged internally if it cannot hold the
/// correlation tail.
double check_br_identity(const SymbolCoefficients& sym, const CorrelationSequence& corr,
                         int grid);

} // namespace lrf

#endif // LRF_CORRELATION_HPP
