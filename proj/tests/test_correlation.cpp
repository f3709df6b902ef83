#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "lrf/correlation.hpp"
#include "oracles.hpp"

using lrf::build_symbol;
using lrf::check_br_identity;
using lrf::check_v_identity;
using lrf::correlations_from_symbol;
using lrf::correlations_from_symbol_auto;
using lrf::toeplitz_section;

TEST_CASE("correlations for the single-coefficient chain") {
    const auto sym = build_symbol({0.4});
    const auto corr = correlations_from_symbol(sym, 3);
    REQUIRE(corr.max_lag() == 3);
    CHECK(corr.r[0] == 1.0);
    CHECK(corr.r[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(corr.r[2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(corr.r[3] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(corr.v == doctest::Approx(0.6).epsilon(1e-12));

    // Quadrature oracle: v = 1/g_0, r_k = g_k/g_0.
    const double g0 = oracles::reciprocal_fourier_coefficient(sym.coeffs, 0);
    CHECK(std::abs(corr.v - 1.0 / g0) < 1e-12);
    for (int k = 1; k <= 3; ++k) {
        const double gk = oracles::reciprocal_fourier_coefficient(sym.coeffs, k);
        CHECK(std::abs(corr.r[static_cast<std::size_t>(k)] - gk / g0) < 1e-12);
    }
}

TEST_CASE("white-noise correlations") {
    const auto corr = correlations_from_symbol(build_symbol({}), 2);
    CHECK(corr.v == 1.0);
    CHECK(corr.r[0] == 1.0);
    CHECK(corr.r[1] == 0.0);
    CHECK(corr.r[2] == 0.0);
    CHECK(check_v_identity(build_symbol({}), corr) == 0.0);
}

TEST_CASE("two-band symbol satisfies the v identity") {
    const auto sym = build_symbol({0.212389, 0.176991});
    const auto corr = correlations_from_symbol(sym, 2);
    CHECK(check_v_identity(sym, corr) < 1e-10);

    const double g0 = oracles::reciprocal_fourier_coefficient(sym.coeffs, 0);
    const double g1 = oracles::reciprocal_fourier_coefficient(sym.coeffs, 1);
    const double g2 = oracles::reciprocal_fourier_coefficient(sym.coeffs, 2);
    CHECK(std::abs(corr.v - 1.0 / g0) < 1e-12);
    CHECK(std::abs(corr.r[1] - g1 / g0) < 1e-12);
    CHECK(std::abs(corr.r[2] - g2 / g0) < 1e-12);
}

TEST_CASE("non-invertible symbols propagate") {
    CHECK_THROWS_AS(correlations_from_symbol(build_symbol({0.5}), 8), lrf::SymbolNotInvertible);
}

TEST_CASE("toeplitz sections") {
    const auto corr = correlations_from_symbol(build_symbol({0.4}), 8);
    const auto section = toeplitz_section(corr, 2);
    CHECK(section(0, 0) == 1.0);
    CHECK(section(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(section(1, 0) == section(0, 1));
    CHECK(section(1, 1) == 1.0);

    const auto one = toeplitz_section(corr, 1);
    CHECK(one.rows() == 1);
    CHECK(one(0, 0) == 1.0);

    const auto trivial = correlations_from_symbol(build_symbol({}), 4);
    const auto identity = toeplitz_section(trivial, 3);
    CHECK(identity.isApprox(Eigen::MatrixXd::Identity(3, 3)));

    // Stationarity is structural: entries depend on |i-j| only.
    const auto big = toeplitz_section(corr, 6);
    for (int i = 0; i + 1 < 6; ++i) {
        for (int j = 0; j + 1 < 6; ++j) {
            CHECK(big(i, j) == big(i + 1, j + 1));
        }
    }

    CHECK_THROWS_AS(toeplitz_section(corr, 10), lrf::InsufficientCorrelations);
}

TEST_CASE("sections stay positive definite for positive symbols") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sym = build_symbol(oracles::random_band_symbol(rng, 8, 0.45));
        const auto corr = correlations_from_symbol_auto(sym);
        REQUIRE(corr.max_lag() >= 64);
        for (int n : {2, 8, 64}) {
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(toeplitz_section(corr, n));
            CHECK(eigs.eigenvalues().minCoeff() > 0.0);
        }
        CHECK(std::abs(corr.r[0] - 1.0) == 0.0);
        for (double r : corr.r) CHECK(std::abs(r) <= 1.0 + 1e-12);
    }
}

TEST_CASE("geometric law for single-band symbols") {
    for (double a : {0.4, 0.25, -0.3, 0.49}) {
        const auto sym = build_symbol({a});
        const auto corr = correlations_from_symbol_auto(sym);
        const double rho = (1.0 - std::sqrt(1.0 - 4.0 * a * a)) / (2.0 * a);
        for (int k = 0; k <= corr.max_lag(); ++k) {
            CHECK(std::abs(corr.r[static_cast<std::size_t>(k)] - std::pow(rho, k)) < 1e-10);
        }
        CHECK(check_v_identity(sym, corr) < 1e-12);
    }
}

TEST_CASE("pointwise symbol identity b*r = v") {
    std::mt19937_64 rng(556);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sym = build_symbol(oracles::random_band_symbol(rng, 8, 0.45));
        const auto corr = correlations_from_symbol_auto(sym);
        CHECK(check_br_identity(sym, corr, 4096) < 1e-10);
        CHECK(check_v_identity(sym, corr) < 1e-10);
    }
}

TEST_CASE("auto depth: at least 128 lags and decayed tail") {
    const auto corr = correlations_from_symbol_auto(build_symbol({0.4}));
    CHECK(corr.max_lag() >= 128);
    CHECK(std::abs(corr.r.back()) < 1e-12);

    // Slow-decay case grows beyond the default depth.
    const auto slow = correlations_from_symbol_auto(build_symbol({0.49}));
    CHECK(slow.max_lag() > 128);
    CHECK(std::abs(slow.r.back()) < 1e-12);
}
