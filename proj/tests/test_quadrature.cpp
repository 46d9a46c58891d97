#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "dhilbert/quadrature.hpp"
#include "dhilbert/spectral.hpp"

using namespace dhilbert;
using Catch::Approx;
using quad::Trig;

namespace {

const double kPi = spectral::pi;
auto one = [](double) { return 1.0; };

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const quad::GaussRule r = quad::gauss_legendre(12);
  REQUIRE(r.nodes.size() == 12);
  double wsum = 0.0;
  for (double w : r.weights) wsum += w;
  CHECK(wsum == Approx(2.0).epsilon(1e-15));
  for (int p = 0; p <= 23; ++p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], p);
    const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
    CHECK(acc == Approx(exact).margin(1e-14));
  }
}

TEST_CASE("oscillatory integrals with constant amplitude") {
  CHECK(quad::integrate_oscillatory(one, Trig::Cos, 0.0) == Approx(1.0).epsilon(1e-14));
  CHECK(quad::integrate_oscillatory(one, Trig::Sin, 0.5) == Approx(2.0 / kPi).epsilon(1e-14));
  CHECK(quad::integrate_oscillatory(one, Trig::Cos, 3.0) == Approx(0.0).margin(1e-14));
  for (long n : {0L, 1L, 10L, 100L, 1000L}) {
    const double nu = static_cast<double>(n) + 0.5;
    CHECK(quad::integrate_oscillatory(one, Trig::Sin, nu) == Approx(1.0 / (kPi * nu)).margin(1e-13));
  }
}

TEST_CASE("ladder matches single evaluations and is deterministic") {
  auto g = [](double t) { return spectral::rho(t); };
  const auto ladder = quad::integrate_ladder(g, Trig::Cos, 0.0, 80);
  for (std::size_t n : {0u, 1u, 17u, 79u}) {
    const double single = quad::integrate_oscillatory(g, Trig::Cos, static_cast<double>(n));
    CHECK(ladder[n].value == Approx(single).margin(1e-13));
    CHECK(ladder[n].error <= 1e-12);
  }
  const double a = quad::integrate_oscillatory(g, Trig::Sin, 37.5);
  const double b = quad::integrate_oscillatory(g, Trig::Sin, 37.5);
  CHECK(a == b);
}

TEST_CASE("engine and oracle agree on the corpus") {
  for (int k : {0, 1, 5, 20}) {
    auto pk = [k](double t) { return std::pow(spectral::rho(t), k); };
    auto qk = [k](double t) { return std::pow(spectral::rho_sqrt(t), 2 * k + 1); };
    for (long n : {0L, 1L, 10L, 100L, 1000L}) {
      const double nc = static_cast<double>(n);
      const auto oc = quad::oracle_integrate(pk, Trig::Cos, nc);
      CHECK(std::abs(quad::integrate_oscillatory(pk, Trig::Cos, nc) - oc.value) <= 1e-10);
      const auto os = quad::oracle_integrate(qk, Trig::Sin, nc + 0.5);
      CHECK(std::abs(quad::integrate_oscillatory(qk, Trig::Sin, nc + 0.5) - os.value) <= 1e-10);
    }
  }
}

TEST_CASE("engine matches oracle for the kernel anchors") {
  auto sq = [](double t) { return spectral::rho_sqrt(t); };
  const double kd0 = quad::integrate_oscillatory(sq, Trig::Sin, 0.5);
  CHECK(kd0 == Approx(quad::oracle_integrate(sq, Trig::Sin, 0.5).value).margin(1e-10));
  CHECK(kd0 == Approx(1.0 / kPi).margin(1e-13));
  auto r = [](double t) { return spectral::rho(t); };
  CHECK(quad::integrate_oscillatory(r, Trig::Cos, 0.0) ==
        Approx(quad::oracle_integrate(r, Trig::Cos, 0.0).value).margin(1e-10));
}

TEST_CASE("non-convergence is reported, not hidden") {
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-300;
  auto g = [](double t) { return std::sqrt(t); };
  CHECK_THROWS_AS(quad::integrate_oscillatory(g, Trig::Cos, 0.0, spec), NonConvergence);
}

TEST_CASE("invalid quadrature settings are rejected") {
  quad::QuadratureSpec spec;
  spec.nodes_per_panel = 2;
  CHECK_THROWS_AS(quad::integrate_oscillatory(one, Trig::Cos, 0.0, spec), InvalidArgument);
  CHECK_THROWS_AS(quad::integrate_oscillatory(one, Trig::Cos, -1.0), InvalidArgument);
  CHECK_THROWS_AS(quad::oracle_integrate(one, Trig::Cos, 0.0, 1), InvalidArgument);
}

TEST_CASE("tensor rule in two dimensions") {
  const std::array<quad::AxisFactor, 2> flat{{{Trig::Cos, 0.0}, {Trig::Cos, 0.0}}};
  auto unit = [](std::span<const double>) { return 1.0; };
  CHECK(quad::integrate_tensor(unit, flat) == Approx(1.0).epsilon(1e-14));

  const std::array<quad::AxisFactor, 2> off{{{Trig::Cos, 1.0}, {Trig::Cos, 0.0}}};
  CHECK(quad::integrate_tensor(unit, off) == Approx(0.0).margin(1e-13));

  auto rho2 = [](std::span<const double> th) { return spectral::rho_s(th); };
  const double p1 = quad::integrate_tensor(rho2, flat);
  CHECK(p1 > 0.0);
  CHECK(p1 < 1.0);
  CHECK(p1 == Approx(quad::oracle_integrate_tensor(rho2, flat).value).margin(1e-9));

  const std::array<quad::AxisFactor, 2> osc{{{Trig::Cos, 3.0}, {Trig::Cos, 2.0}}};
  CHECK(quad::integrate_tensor(rho2, osc) == Approx(quad::oracle_integrate_tensor(rho2, osc).value).margin(1e-9));
}

TEST_CASE("tensor batch agrees with single-frequency calls") {
  auto g = [](std::span<const double> th, std::span<double> out) {
    out[0] = spectral::rho_s(th);
    out[1] = spectral::omega(th, 1) * spectral::rho_sqrt_s(th);
  };
  const std::array<quad::AxisTrig, 2> axes{{{Trig::Sin, {0.5, 1.5, 2.5}}, {Trig::Cos, {0.0, 1.0}}}};
  const quad::TensorResult res = quad::integrate_tensor_batch(2, 2, g, std::span<const quad::AxisTrig>(axes));
  REQUIRE(res.values.size() == 12);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t l = 0; l < 2; ++l) {
      const std::array<quad::AxisFactor, 2> f{{{Trig::Sin, axes[0].nus[i]}, {Trig::Cos, axes[1].nus[l]}}};
      auto c1 = [](std::span<const double> th) { return spectral::omega(th, 1) * spectral::rho_sqrt_s(th); };
      CHECK(res.at(1, {i, l, 0}) == Approx(quad::integrate_tensor(c1, f)).margin(1e-13));
    }
  }
}

TEST_CASE("tensor rule rejects unsupported dimensions") {
  const std::array<quad::AxisFactor, 4> four{};
  auto unit = [](std::span<const double>) { return 1.0; };
  CHECK_THROWS_AS(quad::integrate_tensor(unit, four), DimensionTooLarge);
}
