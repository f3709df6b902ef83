#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lrf/factorization.hpp"
#include "oracles.hpp"

using lrf::band_beta_to_b;
using lrf::beta_from_factor;
using lrf::build_symbol;
using lrf::correlations_from_symbol;
using lrf::correlations_from_symbol_auto;
using lrf::fejer_riesz;
using lrf::min_root_modulus;
using lrf::szego_factor;
using lrf::szego_factor_auto;
using lrf::toeplitz_section;
using lrf::verify_bbeta_identity;
using lrf::yule_walker;

namespace {

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        gap = std::max(gap, std::abs(x - y));
    }
    return gap;
}

// |C(e^{i theta})|^2 evaluated directly.
double factor_square(const std::vector<double>& c, double theta) {
    std::complex<double> value = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        value += c[j] * std::exp(std::complex<double>(0.0, theta * static_cast<double>(j)));
    }
    return std::norm(value);
}

} // namespace

TEST_CASE("fejer_riesz on the single-coefficient chain") {
    const auto factor = fejer_riesz(build_symbol({0.4}));
    REQUIRE(factor.c.size() == 2);
    CHECK(factor.c[0] == doctest::Approx(std::sqrt(0.8)).epsilon(1e-12));
    CHECK(factor.c[1] == doctest::Approx(-0.5 * std::sqrt(0.8)).epsilon(1e-12));

    // Expansion oracle: |c_0 + c_1 e^{i theta}|^2 reproduces 1 - 0.8 cos.
    for (int m = 0; m < 64; ++m) {
        const double theta = 2.0 * M_PI * m / 64;
        CHECK(std::abs(factor_square(factor.c, theta) - (1.0 - 0.8 * std::cos(theta))) < 1e-12);
    }
}

TEST_CASE("fejer_riesz edge cases") {
    const auto white = fejer_riesz(build_symbol({}));
    REQUIRE(white.c.size() == 1);
    CHECK(white.c[0] == 1.0);

    CHECK_THROWS_AS(fejer_riesz(build_symbol({0.5})), lrf::SymbolNearSingular);
    CHECK_THROWS_AS(fejer_riesz(build_symbol({0.6})), lrf::SymbolNotInvertible);
}

TEST_CASE("factor invariants: normalization, sign convention, outer roots") {
    std::mt19937_64 rng(8811);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sym = build_symbol(oracles::random_band_symbol(rng, 8, 0.45));
        const auto factor = fejer_riesz(sym);
        REQUIRE(factor.degree() == sym.band_width());
        CHECK(factor.c[0] > 0.0);

        double sum_sq = 0.0;
        for (double c : factor.c) sum_sq += c * c;
        CHECK(std::abs(sum_sq - 1.0) < 1e-10);

        // b_r = -sum_j c_j c_{j+r}
        for (int r = 1; r <= sym.band_width(); ++r) {
            double acc = 0.0;
            for (std::size_t j = 0; j + static_cast<std::size_t>(r) < factor.c.size(); ++j) {
                acc += factor.c[j] * factor.c[j + static_cast<std::size_t>(r)];
            }
            CHECK(std::abs(-acc - sym.coeffs[static_cast<std::size_t>(r - 1)]) < 1e-10);
        }

        // C has no roots in the closed unit disk: equivalently the
        // derived one-sided polynomial is minimum phase.
        std::vector<double> betas(factor.c.size() - 1);
        for (std::size_t j = 1; j < factor.c.size(); ++j) betas[j - 1] = -factor.c[j] / factor.c[0];
        CHECK(oracles::min_root_modulus(betas) > 1.0);
    }
}

TEST_CASE("szego agrees with fejer_riesz") {
    const auto sym = build_symbol({0.4});
    const auto direct = fejer_riesz(sym);
    const auto cepstral = szego_factor(sym, 16, 4096);
    CHECK(max_gap(direct.c, cepstral.c) < 1e-8);

    const auto white = szego_factor(build_symbol({}), 8, 4096);
    CHECK(white.c[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t j = 1; j < white.c.size(); ++j) CHECK(std::abs(white.c[j]) < 1e-14);

    const auto pair_sym = build_symbol({0.212389, 0.176991});
    const auto pair_direct = fejer_riesz(pair_sym);
    const auto pair_cepstral = szego_factor(pair_sym, 32, 4096);
    CHECK(max_gap(pair_direct.c, pair_cepstral.c) < 1e-10);

    const auto corr = correlations_from_symbol_auto(pair_sym);
    const auto model = beta_from_factor(pair_direct, corr);
    const double v_over_w = corr.v / model.model.w;
    CHECK(pair_cepstral.c[0] * pair_cepstral.c[0] == doctest::Approx(v_over_w).epsilon(1e-10));
}

TEST_CASE("szego error paths") {
    CHECK_THROWS_AS(szego_factor(build_symbol({0.5}), 16, 4096), lrf::SymbolNotInvertible);
    // Truncating a genuinely degree-2 factor at M=1 discards real mass.
    CHECK_THROWS_AS(szego_factor(build_symbol({0.212389, 0.176991}), 1, 4096),
                    lrf::TruncationWarning);
    CHECK_THROWS_AS(szego_factor(build_symbol({0.4}), 16, 16), lrf::GridTooCoarse);
}

TEST_CASE("beta_from_factor on the worked chains") {
    const auto sym = build_symbol({0.4});
    const auto corr = correlations_from_symbol_auto(sym);
    const auto result = beta_from_factor(fejer_riesz(sym), corr);
    REQUIRE(result.model.order() == 1);
    CHECK(result.model.betas[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(result.v_over_w == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(result.model.w == doctest::Approx(0.75).epsilon(1e-12));

    const auto trivial = beta_from_factor(lrf::SpectralFactor{{1.0}},
                                          correlations_from_symbol(build_symbol({}), 4));
    CHECK(trivial.model.order() == 0);
    CHECK(trivial.v_over_w == 1.0);
    CHECK(trivial.model.w == 1.0);

    const auto pair_sym = build_symbol({0.212389, 0.176991});
    const auto pair = beta_from_factor(fejer_riesz(pair_sym),
                                       correlations_from_symbol_auto(pair_sym));
    REQUIRE(pair.model.order() == 2);
    // The symbol was built from beta = (0.3, 0.2) rounded to 6 digits.
    CHECK(pair.model.betas[0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(pair.model.betas[1] == doctest::Approx(0.2).epsilon(1e-5));
}

TEST_CASE("yule_walker matches the dense solve") {
    const auto corr = correlations_from_symbol(build_symbol({0.4}), 16);
    const auto solution = yule_walker(corr, 4);
    CHECK(solution.betas[0] == doctest::Approx(0.5).epsilon(1e-12));
    for (int j = 1; j < 4; ++j) CHECK(std::abs(solution.betas[static_cast<std::size_t>(j)]) < 1e-12);
    CHECK(solution.w == doctest::Approx(0.75).epsilon(1e-12));

    const auto dense = oracles::dense_yule_walker(corr.r, 4);
    CHECK(max_gap(solution.betas, dense) < 1e-12);

    const auto trivial = yule_walker(correlations_from_symbol(build_symbol({}), 4), 3);
    for (double beta : trivial.betas) CHECK(beta == 0.0);
    CHECK(trivial.w == 1.0);

    const auto pair_corr = correlations_from_symbol(build_symbol({0.212389, 0.176991}), 16);
    const auto pair = yule_walker(pair_corr, 8);
    const auto pair_dense = oracles::dense_yule_walker(pair_corr.r, 8);
    CHECK(max_gap(pair.betas, pair_dense) < 1e-10);
    CHECK(pair.betas[0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(pair.betas[1] == doctest::Approx(0.2).epsilon(1e-5));
    for (int j = 2; j < 8; ++j) CHECK(std::abs(pair.betas[static_cast<std::size_t>(j)]) < 1e-10);
}

TEST_CASE("yule_walker error paths") {
    const auto corr = correlations_from_symbol(build_symbol({0.4}), 4);
    CHECK_THROWS_AS(yule_walker(corr, 8), lrf::InsufficientCorrelations);

    lrf::CorrelationSequence degenerate;
    degenerate.r = {1.0, 1.0};
    degenerate.v = 0.0;
    CHECK_THROWS_AS(yule_walker(degenerate, 1), lrf::NotPositiveDefinite);
}

TEST_CASE("band_beta_to_b on the worked cases") {
    const auto single = band_beta_to_b({0.5});
    REQUIRE(single.band_width() == 1);
    CHECK(single.coeffs[0] == doctest::Approx(0.4).epsilon(1e-15));

    const auto pair = band_beta_to_b({0.3, 0.2});
    REQUIRE(pair.band_width() == 2);
    CHECK(pair.coeffs[0] == doctest::Approx(0.24 / 1.13).epsilon(1e-14));
    CHECK(pair.coeffs[1] == doctest::Approx(0.2 / 1.13).epsilon(1e-14));

    CHECK(band_beta_to_b({}).band_width() == 0);
    CHECK(band_beta_to_b({0.5, 0.0}).band_width() == 1);

    CHECK_THROWS_AS(band_beta_to_b({1.2}), lrf::NotMinimumPhase);
    CHECK_THROWS_AS(band_beta_to_b({0.0, 1.1}), lrf::NotMinimumPhase);
}

TEST_CASE("central identity residuals") {
    const auto sym = build_symbol({0.4});
    const auto corr = correlations_from_symbol_auto(sym);
    const auto result = beta_from_factor(fejer_riesz(sym), corr);
    CHECK(verify_bbeta_identity(sym, result.model, corr.v, result.model.w, 4096) < 1e-10);

    lrf::OneSidedModel white;
    CHECK(verify_bbeta_identity(build_symbol({}), white, 1.0, 1.0, 64) == 0.0);

    const auto round = band_beta_to_b({0.3, 0.2});
    const auto round_corr = correlations_from_symbol_auto(round);
    const auto round_model = beta_from_factor(fejer_riesz(round), round_corr);
    CHECK(verify_bbeta_identity(round, round_model.model, round_corr.v, round_model.model.w,
                                4096) < 1e-10);
}

TEST_CASE("round trip recovers the one-sided model exactly in band width") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> band_dist(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const int band = band_dist(rng);
        const auto betas = oracles::random_minimum_phase_beta(rng, band);
        const auto sym = band_beta_to_b(betas);
        REQUIRE(sym.band_width() == band);

        const auto corr = correlations_from_symbol_auto(sym);
        const auto recovered = beta_from_factor(fejer_riesz(sym), corr);
        REQUIRE(recovered.model.order() == band);
        CHECK(max_gap(recovered.model.betas, betas) < 1e-8);
    }
}

TEST_CASE("routes agree and satisfy the ratio identity") {
    std::mt19937_64 rng(515151);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sym = build_symbol(oracles::random_band_symbol(rng, 8, 0.45));
        const int N = sym.band_width();
        const auto corr = correlations_from_symbol_auto(sym);

        const auto direct = beta_from_factor(fejer_riesz(sym), corr);
        const auto cepstral = beta_from_factor(szego_factor_auto(sym), corr);
        CHECK(max_gap(direct.model.betas, cepstral.model.betas) < 1e-8);

        const auto yw = yule_walker(corr, 4 * N);
        for (int j = 0; j < N; ++j) {
            CHECK(std::abs(yw.betas[static_cast<std::size_t>(j)] -
                           direct.model.betas[static_cast<std::size_t>(j)]) < 1e-8);
        }
        for (int j = N; j < 4 * N; ++j) {
            CHECK(std::abs(yw.betas[static_cast<std::size_t>(j)]) < 1e-8);
        }

        // Yule-Walker system residual in max norm.
        const auto section = toeplitz_section(corr, 4 * N);
        double residual = 0.0;
        for (int i = 0; i < 4 * N; ++i) {
            double acc = -corr.r[static_cast<std::size_t>(i + 1)];
            for (int j = 0; j < 4 * N; ++j) {
                acc += section(i, j) * yw.betas[static_cast<std::size_t>(j)];
            }
            residual = std::max(residual, std::abs(acc));
        }
        CHECK(residual < 1e-10);

        // v/w = c_0^2 = b_N / beta_N, and the variances are ordered.
        const double v_over_w = corr.v / direct.model.w;
        const auto factor = fejer_riesz(sym);
        CHECK(std::abs(v_over_w - factor.c[0] * factor.c[0]) < 1e-10);
        CHECK(std::abs(v_over_w - sym.coeffs.back() / direct.model.betas.back()) < 1e-10);
        CHECK(direct.model.w >= corr.v - 1e-14);
        CHECK(direct.model.w <= 1.0 + 1e-14);
        CHECK(corr.v > 0.0);

        CHECK(min_root_modulus(direct.model.betas) > 1.0);
        const double w_identity = [&] {
            double acc = 0.0;
            for (int j = 1; j <= direct.model.order(); ++j) {
                acc += direct.model.betas[static_cast<std::size_t>(j - 1)] *
                       corr.r[static_cast<std::size_t>(j)];
            }
            return std::abs(direct.model.w - (1.0 - acc));
        }();
        CHECK(w_identity < 1e-10);
    }
}
