#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dhilbert/spectral.hpp"

using namespace dhilbert;
using Catch::Approx;
using spectral::complex;
using spectral::pi;

namespace {

std::vector<double> grid(int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(-pi + 2.0 * pi * (i + 1) / count);
  return out;
}

double cdist(complex a, complex b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("rho closed forms") {
  CHECK(spectral::rho(0.0) == 1.0);
  // 3 - 2 sqrt 2 written as 1 / (3 + 2 sqrt 2) to avoid cancellation in the reference.
  CHECK(spectral::rho(pi) == Approx(1.0 / (3.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(spectral::rho(pi / 2) == Approx(1.0 / (2.0 + std::sqrt(3.0))).epsilon(1e-15));
  CHECK(spectral::rho_sqrt(0.0) == 1.0);
  CHECK(spectral::rho_sqrt(pi) == Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(spectral::rho_sqrt(0.3) == Approx(std::sqrt(spectral::rho(0.3))).epsilon(1e-15));
}

TEST_CASE("rho solves the quadratic and its square root squares back") {
  double worst = 0.0, worst_sq = 0.0;
  for (double t : grid(10000)) {
    const double r = spectral::rho(t);
    worst = std::max(worst, std::abs(r + 1.0 / r - (4.0 - 2.0 * std::cos(t))));
    const double q = spectral::rho_sqrt(t);
    worst_sq = std::max(worst_sq, std::abs(q * q - r));
    REQUIRE(r > 0.0);
    REQUIRE(r <= 1.0);
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_sq <= 1e-14);
}

TEST_CASE("rho is accurate near the origin") {
  // 1 - rho ~ |theta| for small theta; a naive alpha - sqrt(alpha^2 - 1) would lose this.
  const double t = 1e-9;
  CHECK(1.0 - spectral::rho(t) == Approx(t).epsilon(1e-6));
}

TEST_CASE("f closed forms and expansion") {
  CHECK(spectral::f(0.0) == 0.0);
  CHECK(spectral::f(pi) == Approx(std::sqrt(2.0) - 2.0).epsilon(1e-15));
  const double h = 1e-3;
  const double second = (spectral::f(2 * h) - 2 * spectral::f(h) + spectral::f(0.0)) / (h * h);
  CHECK(second == Approx(0.25).margin(1e-3));
  CHECK(spectral::f(h) / h == Approx(-0.5).margin(1e-3));
  for (double t : grid(257)) CHECK(spectral::f(t) == Approx(spectral::rho_sqrt(t) - 1.0).margin(1e-15));
}

TEST_CASE("Hilbert and Riesz-Titchmarsh multipliers") {
  CHECK(std::abs(spectral::multiplier_hd(0.0)) == 0.0);
  CHECK(std::abs(spectral::multiplier_hplus(0.0)) == 0.0);
  CHECK(cdist(spectral::multiplier_hd(pi), complex(std::sqrt(2.0) - 1.0, 0.0)) < 1e-15);
  CHECK(cdist(spectral::multiplier_hplus(pi), complex(1.0, 0.0)) < 1e-15);
  for (double t : grid(999)) {
    if (t == 0.0) continue;
    const complex md = spectral::multiplier_hd(t);
    CHECK(std::abs(md) == Approx(spectral::rho_sqrt(t)).epsilon(1e-14));
    CHECK(std::abs(md) <= 1.0);
    CHECK(cdist(spectral::multiplier_hd(-t), -std::polar(1.0, -t) * md) < 1e-14);
  }
}

TEST_CASE("difference multiplier is i theta / 2 to first order") {
  for (double t : {1e-3, -1e-3, 1e-2, -1e-2}) {
    const complex d = spectral::multiplier_hd(t) - spectral::multiplier_hplus(t);
    CHECK(std::abs(d - complex(0.0, 0.5 * t)) <= t * t);
  }
}

TEST_CASE("rho - 1 factors through the half-step multiplier") {
  double worst = 0.0;
  for (double t : grid(10000)) {
    if (t == 0.0) continue;
    const complex lhs = (spectral::rho(t) - 1.0) + (std::polar(1.0, t) - 1.0) * complex(0.0, -spectral::sgn(t)) *
                                                         std::polar(1.0, -0.5 * t) * spectral::rho_sqrt(t);
    worst = std::max(worst, std::abs(lhs));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("rho_s and omega") {
  const std::array<double, 2> zero{0.0, 0.0};
  const std::array<double, 2> corner{pi, pi};
  const std::array<double, 2> half{pi / 2, pi / 2};
  CHECK(spectral::rho_s(zero) == 1.0);
  CHECK(spectral::rho_s(corner) == Approx(1.0 / (5.0 + 2.0 * std::sqrt(6.0))).epsilon(1e-14));
  const std::array<double, 1> one{0.7};
  CHECK(spectral::rho_s(one) == Approx(spectral::rho(0.7)).epsilon(1e-15));
  CHECK(spectral::omega(half, 1) == Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(spectral::omega(zero, 1) == 0.0);
  CHECK(spectral::omega(zero, 2) == 0.0);
  const std::array<double, 1> neg{-1.3};
  CHECK(spectral::omega(neg, 1) == Approx(1.0).epsilon(1e-15));
  const std::array<double, 2> tiny{1e-300, -1e-300};
  CHECK(spectral::omega(tiny, 1) == Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(spectral::omega(tiny, 2) == Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("vector multipliers") {
  const std::array<double, 1> q{pi / 2};
  CHECK(cdist(spectral::multiplier_tj(q, 1), spectral::multiplier_hd(pi / 2)) < 1e-15);
  const std::array<double, 1> r{0.4};
  CHECK(cdist(spectral::multiplier_rj(r, 1), spectral::multiplier_hplus(0.4)) < 1e-15);
  const std::array<double, 2> zero{0.0, 0.0};
  CHECK(std::abs(spectral::multiplier_tj(zero, 1)) == 0.0);
  const std::array<double, 2> edge{pi, 0.0};
  CHECK(std::abs(spectral::multiplier_tj(edge, 2)) == 0.0);
  const std::array<double, 2> half{pi / 2, pi / 2};
  const complex expect = complex(0.0, -1.0) * std::sqrt(0.5) * std::polar(1.0, pi / 4);
  CHECK(cdist(spectral::multiplier_rj(half, 1), expect) < 1e-15);
  CHECK_THROWS_AS(spectral::multiplier_tj(half, 3), InvalidArgument);
  CHECK_THROWS_AS(spectral::omega(half, 0), InvalidArgument);
}

TEST_CASE("vector identity for rho_s, s = 1..3") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-pi, pi);
  double worst = 0.0;
  for (int s = 1; s <= 3; ++s) {
    for (int i = 0; i < 3000; ++i) {
      std::vector<double> th(static_cast<std::size_t>(s));
      for (double& t : th) t = u(rng);
      complex acc = spectral::rho_s(th) - 1.0;
      for (int j = 1; j <= s; ++j) {
        const double tj = th[static_cast<std::size_t>(j - 1)];
        acc += spectral::rho_sqrt_s(th) * spectral::omega(th, j) * (std::polar(1.0, tj) - 1.0) *
               complex(0.0, -spectral::sgn(tj)) * std::polar(1.0, -0.5 * tj);
      }
      worst = std::max(worst, std::abs(acc));
    }
  }
  CHECK(worst <= 1e-12);
}
