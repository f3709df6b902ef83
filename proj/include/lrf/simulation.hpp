#ifndef LRF_SIMULATION_HPP
#define LRF_SIMULATION_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "lrf/correlation.hpp"
#include "lrf/factorization.hpp"

namespace lrf {

enum class GeneratorKind { AR, Circulant };

/// A simulated realization X_1..X_T with the metadata needed to
/// reproduce it bit for bit.
struct SamplePath {
    std::vector<double> values;
    std::uint64_t seed = 0;
    long long burn_in = 0;
    GeneratorKind generator = GeneratorKind::AR;

    long long length() const { return static_cast<long long>(values.size()); }
};

struct EmpiricalCorrelations {
    std::vector<double> r;       ///< r_0 = 1, r_1..r_K
    std::vector<double> stderrs; ///< Bartlett standard error per lag
};

struct RegressionEstimate {
    std::vector<double> coeffs;
    std::vector<double> stderrs;
    double residual_variance = 0.0;
    long long sample_size = 0;
};

/// Standard normal generator: mt19937_64 driving the Marsaglia polar
/// method. The algorithm is fixed so identical seeds give identical
/// variates on every platform.
class GaussianRng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64/polar";

    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform(); // in [0, 1)

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Seed for an independent replication stream derived from the master
/// seed (splitmix64 mixing).
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream);

/// Steps discarded before recording an AR path: 10*order + 1000.
long long default_burn_in(int order);

/// Drive X_k = sum_j beta_j X_{k-j} + sqrt(w) eps_k from a zero initial
/// state, discarding the first burn_in steps. The model must be minimum
/// phase (NotMinimumPhase otherwise).
SamplePath simulate_ar(const OneSidedModel& model, long long T, long long burn_in,
                       std::uint64_t seed);

/// Exact stationary sample by circulant embedding of the covariance
/// (no burn-in error). Embedding eigenvalues below -1e-10 raise
/// EmbeddingNotPSD; tiny negatives are clipped to zero.
SamplePath simulate_circulant(const CorrelationSequence& corr, long long T,
                              std::uint64_t seed);

/// Autocorrelation estimates r_hat_k = (1/(T-k)) sum_i X_i X_{i+k},
/// normalized by r_hat_0, with Bartlett standard errors. Requires
/// T > 10*K (InsufficientData otherwise).
EmpiricalCorrelations empirical_correlations(const SamplePath& path, int K);

/// OLS of X_k on the symmetric sums (X_{k-j} + X_{k+j}), j = 1..J.
/// Coefficients estimate b_1..b_J; the residual variance estimates v.
/// Requires T > 50*J.
RegressionEstimate estimate_two_sided(const SamplePath& path, int J);

/// OLS of X_k on X_{k-1}..X_{k-M}. Coefficients estimate beta_1..beta_M;
/// the residual variance estimates w. Requires T > 50*M.
RegressionEstimate estimate_one_sided(const SamplePath& path, int M);

} // namespace lrf

#endif // LRF_SIMULATION_HPP
