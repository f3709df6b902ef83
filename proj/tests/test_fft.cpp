#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "lrf/fft.hpp"
#include "oracles.hpp"

namespace {

std::vector<std::complex<double>> random_complex(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<std::complex<double>> data(n);
    for (auto& z : data) z = {unit(rng), unit(rng)};
    return data;
}

} // namespace

TEST_CASE("power-of-two helpers") {
    CHECK(lrf::fft::is_power_of_two(1));
    CHECK(lrf::fft::is_power_of_two(1024));
    CHECK_FALSE(lrf::fft::is_power_of_two(0));
    CHECK_FALSE(lrf::fft::is_power_of_two(12));
    CHECK(lrf::fft::next_power_of_two(1) == 1);
    CHECK(lrf::fft::next_power_of_two(5) == 8);
    CHECK(lrf::fft::next_power_of_two(4096) == 4096);
}

TEST_CASE("transform matches the brute-force DFT") {
    std::mt19937_64 rng(7101);
    for (std::size_t n : {2u, 8u, 64u, 256u}) {
        auto data = random_complex(rng, n);
        const auto expected = oracles::dft(data, false);
        auto actual = data;
        lrf::fft::transform(actual, false);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(actual[k] - expected[k]) < 1e-11);
        }
    }
}

TEST_CASE("inverse transform matches and round-trips") {
    std::mt19937_64 rng(7102);
    auto data = random_complex(rng, 128);
    const auto expected = oracles::dft(data, true);
    auto actual = data;
    lrf::fft::transform(actual, true);
    for (std::size_t k = 0; k < data.size(); ++k) {
        CHECK(std::abs(actual[k] - expected[k]) < 1e-12);
    }

    auto round_trip = data;
    lrf::fft::transform(round_trip, false);
    lrf::fft::transform(round_trip, true);
    for (std::size_t k = 0; k < data.size(); ++k) {
        CHECK(std::abs(round_trip[k] - data[k]) < 1e-13);
    }
}

TEST_CASE("non-power-of-two lengths are rejected") {
    std::vector<std::complex<double>> data(12, 0.0);
    CHECK_THROWS_AS(lrf::fft::transform(data, false), std::invalid_argument);
}
