#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dhilbert/fft.hpp"

using namespace dhilbert;
using fft::complex;

namespace {

std::vector<complex> naive_dft(const std::vector<complex>& x) {
  const std::size_t n = x.size();
  std::vector<complex> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      out[k] += x[j] * std::polar(1.0, -2.0 * std::acos(-1.0) * static_cast<double>(j * k % n) / static_cast<double>(n));
  return out;
}

std::vector<complex> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<complex> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

double max_diff(const std::vector<complex>& a, const std::vector<complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("power of two detection") {
  CHECK(fft::is_power_of_two(1));
  CHECK(fft::is_power_of_two(4096));
  CHECK_FALSE(fft::is_power_of_two(0));
  CHECK_FALSE(fft::is_power_of_two(12));
}

TEST_CASE("forward transform matches the naive DFT") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {2u, 4u, 8u, 64u, 256u}) {
    const auto x = random_vector(n, rng);
    auto y = x;
    fft::forward(y);
    CHECK(max_diff(y, naive_dft(x)) <= 1e-12 * static_cast<double>(n));
  }
}

TEST_CASE("inverse undoes forward") {
  std::mt19937_64 rng(2);
  const auto x = random_vector(4096, rng);
  auto y = x;
  fft::forward(y);
  fft::inverse(y);
  CHECK(max_diff(x, y) <= 1e-13);
}

TEST_CASE("delta and constant transform pairs") {
  std::vector<complex> d(16, 0.0);
  d[0] = 1.0;
  fft::forward(d);
  for (const auto& z : d) CHECK(std::abs(z - complex(1.0)) <= 1e-15);
  std::vector<complex> c(16, 1.0);
  fft::forward(c);
  CHECK(std::abs(c[0] - complex(16.0)) <= 1e-13);
  for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(c[i]) <= 1e-13);
}

TEST_CASE("multi-dimensional transform is separable") {
  std::mt19937_64 rng(3);
  const std::size_t n = 8;
  const auto x = random_vector(n * n, rng);
  auto y = x;
  fft::transform_nd(y, n, 2, false);
  // Reference: rows then columns through the 1-d naive DFT.
  std::vector<complex> ref = x;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<complex> row(ref.begin() + static_cast<long>(r * n), ref.begin() + static_cast<long>((r + 1) * n));
    row = naive_dft(row);
    for (std::size_t c = 0; c < n; ++c) ref[r * n + c] = row[c];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<complex> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = ref[r * n + c];
    col = naive_dft(col);
    for (std::size_t r = 0; r < n; ++r) ref[r * n + c] = col[r];
  }
  CHECK(max_diff(y, ref) <= 1e-12);
  fft::transform_nd(y, n, 2, true);
  CHECK(max_diff(y, x) <= 1e-14);
}

TEST_CASE("non power-of-two lengths are rejected") {
  std::vector<complex> x(12);
  CHECK_THROWS_AS(fft::forward(x), InvalidArgument);
  std::vector<complex> one(1);
  CHECK_THROWS_AS(fft::forward(one), InvalidArgument);
}
