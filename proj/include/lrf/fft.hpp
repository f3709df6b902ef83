#ifndef LRF_FFT_HPP
#define LRF_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace lrf {
namespace fft {

/// True if n is a power of two (n >= 1).
bool is_power_of_two(std::size_t n);

/// Smallest power of two >= n (n >= 1).
std::size_t next_power_of_two(std::size_t n);

/// In-place radix-2 transform. Forward uses kernel exp(-2*pi*i*k*n/M);
/// inverse uses exp(+2*pi*i*k*n/M) and divides by M. The length must be
/// a power of two.
void transform(std::vector<std::complex<double>>& data, bool inverse);

/// Forward transform of a real vector; returns the full complex spectrum.
std::vector<std::complex<double>> forward_real(const std::vector<double>& data);

} // namespace fft
} // namespace lrf

#endif // LRF_FFT_HPP
