#include "lrf/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace lrf {
namespace fft {

bool is_power_of_two(std::size_t n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("fft::transform: length must be a power of two");
    }
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                // Refresh the twiddle periodically; pure recurrence drifts
                // by O(len * eps) on long transforms.
                if ((k & 31) == 0) {
                    w = std::polar(1.0, ang * static_cast<double>(k));
                }
                const std::complex<double> u = data[i + k];
                const std::complex<double> t = data[i + k + len / 2] * w;
                data[i + k] = u + t;
                data[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : data) x *= scale;
    }
}

std::vector<std::complex<double>> forward_real(const std::vector<double>& data) {
    std::vector<std::complex<double>> buf(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) buf[i] = data[i];
    transform(buf, false);
    return buf;
}

} // namespace fft
} // namespace lrf
