#pragma once

// In-place iterative radix-2 FFT for power-of-two lengths, plus a strided
// variant used to transform one axis of an s-dimensional periodic array.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "dhilbert/errors.hpp"

namespace dhilbert::fft {

using complex = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

/// Twiddles w_k = exp(-2 pi i k / n), k < n/2, each taken directly from sin/cos.
inline std::vector<complex> twiddles(std::size_t n) {
  std::vector<complex> w(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = complex(std::cos(a), std::sin(a));
  }
  return w;
}

/// Forward: X_l = sum_j x_j e^{-2 pi i j l / n}. Inverse includes the 1/n factor.
inline void transform(complex* x, std::size_t n, std::size_t stride, bool inverse, const std::vector<complex>& w) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i * stride], x[j * stride]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        complex t = w[k * step];
        if (inverse) t = std::conj(t);
        complex& a = x[(i + k) * stride];
        complex& b = x[(i + k + len / 2) * stride];
        const complex v = b * t;
        b = a - v;
        a += v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i * stride] *= scale;
  }
}

inline void check_length(std::size_t n) {
  if (n < 2 || !is_power_of_two(n))
    throw InvalidArgument("period must be a power of two >= 2, got " + std::to_string(n));
}

inline void forward(std::vector<complex>& x) {
  check_length(x.size());
  transform(x.data(), x.size(), 1, false, twiddles(x.size()));
}

inline void inverse(std::vector<complex>& x) {
  check_length(x.size());
  transform(x.data(), x.size(), 1, true, twiddles(x.size()));
}

/// Transforms every axis of an n^s array stored row-major.
inline void transform_nd(std::vector<complex>& x, std::size_t n, int s, bool inverse_dir) {
  check_length(n);
  const auto w = twiddles(n);
  std::size_t total = 1;
  for (int a = 0; a < s; ++a) total *= n;
  if (x.size() != total) throw InvalidArgument("array size does not match period^s");
  for (int axis = 0; axis < s; ++axis) {
    std::size_t stride = 1;
    for (int a = axis + 1; a < s; ++a) stride *= n;
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block)
      for (std::size_t off = 0; off < stride; ++off) transform(&x[base + off], n, stride, inverse_dir, w);
  }
}

}  // namespace dhilbert::fft
