#include "lrf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "lrf/fft.hpp"

namespace lrf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RegressionEstimate solve_ols(const Eigen::MatrixXd& gram, const Eigen::VectorXd& moment,
                             double target_sq_sum, long long n_rows) {
    const int p = static_cast<int>(gram.rows());
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success ||
        ldlt.vectorD().minCoeff() <= 1e-12 * gram.trace() / static_cast<double>(p)) {
        throw DegenerateDesign("regression design matrix is singular");
    }
    const Eigen::VectorXd coeffs = ldlt.solve(moment);

    // x solves Ax = b, so the sum of squared residuals is y'y - x'b.
    const double ssr = std::max(0.0, target_sq_sum - coeffs.dot(moment));
    const double sigma2 = ssr / static_cast<double>(n_rows - p);
    const Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(p, p)) * sigma2;

    RegressionEstimate estimate;
    estimate.coeffs.resize(static_cast<std::size_t>(p));
    estimate.stderrs.resize(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        estimate.coeffs[static_cast<std::size_t>(i)] = coeffs(i);
        estimate.stderrs[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, cov(i, i)));
    }
    estimate.residual_variance = sigma2;
    estimate.sample_size = n_rows;
    return estimate;
}

} // namespace

double GaussianRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
    return splitmix64(master_seed ^ splitmix64(stream + 1));
}

long long default_burn_in(int order) {
    return 10LL * order + 1000;
}

SamplePath simulate_ar(const OneSidedModel& model, long long T, long long burn_in,
                       std::uint64_t seed) {
    if (T < 1) throw InsufficientData("path length must be at least 1");
    if (burn_in < 0) throw InsufficientData("burn-in must be nonnegative");
    if (!(model.w > 0.0)) throw Error("innovation variance must be positive");
    if (!(min_root_modulus(model.betas) > 1.0)) {
        throw NotMinimumPhase("AR recursion would diverge: root inside the closed unit disk");
    }

    const int order = model.order();
    const double noise_scale = std::sqrt(model.w);
    GaussianRng rng(seed);

    SamplePath path;
    path.seed = seed;
    path.burn_in = burn_in;
    path.generator = GeneratorKind::AR;
    path.values.assign(static_cast<std::size_t>(T), 0.0);

    std::vector<double> state(static_cast<std::size_t>(order), 0.0); // X_{k-1}..X_{k-order}
    for (long long k = 0; k < burn_in + T; ++k) {
        double x = noise_scale * rng.next();
        for (int j = 0; j < order; ++j) {
            x += model.betas[static_cast<std::size_t>(j)] * state[static_cast<std::size_t>(j)];
        }
        if (order > 0) {
            for (int j = order - 1; j > 0; --j) {
                state[static_cast<std::size_t>(j)] = state[static_cast<std::size_t>(j - 1)];
            }
            state[0] = x;
        }
        if (k >= burn_in) path.values[static_cast<std::size_t>(k - burn_in)] = x;
    }
    return path;
}

SamplePath simulate_circulant(const CorrelationSequence& corr, long long T,
                              std::uint64_t seed) {
    if (T < 1) throw InsufficientData("path length must be at least 1");
    const long long K = corr.max_lag();
    const std::size_t L = fft::next_power_of_two(static_cast<std::size_t>(2 * (T + K)));

    // First row of the circulant: covariance by shortest wrap distance,
    // zero beyond the available lags.
    std::vector<std::complex<double>> lambda(L, 0.0);
    for (std::size_t j = 0; j < L; ++j) {
        const std::size_t dist = std::min(j, L - j);
        if (dist <= static_cast<std::size_t>(K)) lambda[j] = corr.r[dist];
    }
    fft::transform(lambda, false);

    GaussianRng rng(seed);
    std::vector<std::complex<double>> spectrum(L);
    for (std::size_t k = 0; k < L; ++k) {
        const double eig = lambda[k].real();
        if (eig < -1e-10) {
            throw EmbeddingNotPSD("circulant embedding eigenvalue " + std::to_string(eig) +
                                  "; enlarge the embedding");
        }
        const double amplitude = std::sqrt(std::max(0.0, eig));
        spectrum[k] = amplitude * std::complex<double>(rng.next(), rng.next());
    }
    fft::transform(spectrum, false);

    SamplePath path;
    path.seed = seed;
    path.burn_in = 0;
    path.generator = GeneratorKind::Circulant;
    path.values.resize(static_cast<std::size_t>(T));
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    for (long long i = 0; i < T; ++i) {
        path.values[static_cast<std::size_t>(i)] = spectrum[static_cast<std::size_t>(i)].real() * scale;
    }
    return path;
}

EmpiricalCorrelations empirical_correlations(const SamplePath& path, int K) {
    const long long T = path.length();
    if (K < 0) throw InsufficientData("lag depth must be nonnegative");
    if (T <= 10LL * K) throw InsufficientData("need T > 10K samples for lag " + std::to_string(K));

    std::vector<double> raw(static_cast<std::size_t>(K) + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (long long i = 0; i + k < T; ++i) {
            acc += path.values[static_cast<std::size_t>(i)] * path.values[static_cast<std::size_t>(i + k)];
        }
        raw[static_cast<std::size_t>(k)] = acc / static_cast<double>(T - k);
    }
    if (raw[0] <= 0.0) throw DegenerateDesign("path has zero empirical variance");

    EmpiricalCorrelations result;
    result.r.resize(static_cast<std::size_t>(K) + 1);
    result.stderrs.resize(static_cast<std::size_t>(K) + 1);
    result.r[0] = 1.0;
    result.stderrs[0] = 0.0;
    double bartlett = 1.0; // 1 + 2 sum_{j<k} r_j^2
    for (int k = 1; k <= K; ++k) {
        result.r[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)] / raw[0];
        result.stderrs[static_cast<std::size_t>(k)] = std::sqrt(bartlett / static_cast<double>(T));
        bartlett += 2.0 * result.r[static_cast<std::size_t>(k)] * result.r[static_cast<std::size_t>(k)];
    }
    return result;
}

RegressionEstimate estimate_two_sided(const SamplePath& path, int J) {
    const long long T = path.length();
    if (J < 1) throw InsufficientData("need at least one regression lag");
    if (T <= 50LL * J) throw InsufficientData("need T > 50J samples for order " + std::to_string(J));

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(J, J);
    Eigen::VectorXd moment = Eigen::VectorXd::Zero(J);
    Eigen::VectorXd z(J);
    double target_sq = 0.0;
    long long rows = 0;
    for (long long k = J; k + J < T; ++k) {
        for (int j = 1; j <= J; ++j) {
            z(j - 1) = path.values[static_cast<std::size_t>(k - j)] +
                       path.values[static_cast<std::size_t>(k + j)];
        }
        const double y = path.values[static_cast<std::size_t>(k)];
        gram.selfadjointView<Eigen::Lower>().rankUpdate(z);
        moment += z * y;
        target_sq += y * y;
        ++rows;
    }
    gram = gram.selfadjointView<Eigen::Lower>();
    return solve_ols(gram, moment, target_sq, rows);
}

RegressionEstimate estimate_one_sided(const SamplePath& path, int M) {
    const long long T = path.length();
    if (M < 1) throw InsufficientData("need at least one regression lag");
    if (T <= 50LL * M) throw InsufficientData("need T > 50M samples for order " + std::to_string(M));

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(M, M);
    Eigen::VectorXd moment = Eigen::VectorXd::Zero(M);
    Eigen::VectorXd z(M);
    double target_sq = 0.0;
    long long rows = 0;
    for (long long k = M; k < T; ++k) {
        for (int j = 1; j <= M; ++j) {
            z(j - 1) = path.values[static_cast<std::size_t>(k - j)];
        }
        const double y = path.values[static_cast<std::size_t>(k)];
        gram.selfadjointView<Eigen::Lower>().rankUpdate(z);
        moment += z * y;
        target_sq += y * y;
        ++rows;
    }
    gram = gram.selfadjointView<Eigen::Lower>();
    return solve_ols(gram, moment, target_sq, rows);
}

} // namespace lrf
