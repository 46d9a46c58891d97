#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "dhilbert/operators.hpp"

using namespace dhilbert;
using Catch::Approx;

namespace {

const double kPi = spectral::pi;

BoundarySequence random_on(long half, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(2 * half + 1));
  for (double& x : v) x = u(rng);
  return BoundarySequence::from_values(-half, v);
}

double lp(const std::vector<double>& v, double p) {
  double acc = 0.0;
  if (std::isinf(p)) {
    for (double x : v) acc = std::max(acc, std::abs(x));
    return acc;
  }
  for (double x : v) acc += std::pow(std::abs(x), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace

TEST_CASE("covering radius") {
  CHECK(covering_radius(Box::cube(1, -10, 10), Box::cube(1, -2, 3)) == 13);
  CHECK(covering_radius(Box::cube(2, -1, 1), Box::cube(2, 0, 0)) == 1);
}

TEST_CASE("transforms of a delta reproduce the kernels") {
  const auto d = BoundarySequence::delta(1);
  TransformOptions opt;
  opt.margin = 20;
  const auto h = hilbert_transform(d, opt);
  const auto p = riesz_titchmarsh_transform(d, opt);
  const auto df = difference_transform(d, opt);
  CHECK(h.truncation_bound == 0.0);
  for (long n = -20; n <= 20; ++n) {
    const Index x{n, 0, 0};
    CHECK(h.output.at(x) == Approx(hilbert_kernel(n)).margin(1e-13));
    CHECK(p.output.at(x) == Approx(1.0 / (kPi * (n + 0.5))).epsilon(1e-15));
    CHECK(df.output.at(x) == Approx(h.output.at(x) - p.output.at(x)).margin(2e-12));
  }
}

TEST_CASE("radius selection honours the tolerance") {
  const auto a = random_on(3, 1);
  TransformOptions opt;
  opt.margin = 2000;
  opt.tol = 1e-2;
  const auto r = hilbert_transform(a, opt);
  CHECK(r.radius < covering_radius(a.support.grown(2000), a.support));
  CHECK(r.truncation_bound > 0.0);
  CHECK(r.truncation_bound <= opt.tol);
  // Compare against an exact (covering) evaluation.
  TransformOptions exact = opt;
  exact.tol = 0.0;
  const auto e = hilbert_transform(a, exact);
  CHECK(e.truncation_bound == 0.0);
  double gap = 0.0;
  for (std::size_t i = 0; i < e.output.values.size(); ++i)
    gap = std::max(gap, std::abs(e.output.values[i] - r.output.values[i]));
  CHECK(gap <= r.truncation_bound + 1e-11);

  TransformOptions tight = opt;
  tight.tol = 1e-12;
  tight.max_radius = 100;
  CHECK_THROWS_AS(hilbert_transform(a, tight), RadiusInsufficient);
}

TEST_CASE("transform argument validation") {
  TransformOptions opt;
  opt.margin = -1;
  CHECK_THROWS_AS(hilbert_transform(BoundarySequence::delta(1), opt), InvalidArgument);
  CHECK_THROWS_AS(hilbert_transform(BoundarySequence::delta(2)), InvalidArgument);
  CHECK_THROWS_AS(tj_transform(3, BoundarySequence::delta(2)), InvalidArgument);
}

TEST_CASE("l2 bound and the difference-operator bound on random data") {
  const KernelTable d = build_table(KernelKind::Difference, {}, 2000);
  double dl1 = 0.0;
  for (double v : d.values) dl1 += std::abs(v);
  CHECK(dl1 <= kPi * kPi * curvature_constant(0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = random_on(8, seed);
    TransformOptions opt;
    opt.margin = 1000;
    opt.tol = 1e-6;
    const auto h = hilbert_transform(a, opt);
    CHECK(h.output.norm2() <= a.norm2() + h.truncation_bound * std::sqrt(h.output.values.size()));
    const Box w = a.support.grown(1992);
    const auto g = apply_table(a, d, w);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      const double lhs = lp(g.output.values, p);
      const double rhs = (dl1 + d.tail_bound) * lp(a.values, p);
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("T_j transform in one and two dimensions") {
  TransformOptions opt;
  opt.margin = 6;
  const auto a = random_on(2, 4);
  const auto t1 = tj_transform(1, a, opt);
  const auto h = hilbert_transform(a, opt);
  for (std::size_t i = 0; i < h.output.values.size(); ++i)
    CHECK(t1.output.values[i] == Approx(h.output.values[i]).margin(1e-11));

  TransformOptions opt2;
  opt2.margin = 4;
  const auto t2 = tj_transform(1, BoundarySequence::delta(2), opt2);
  CHECK(t2.truncation_bound == 0.0);
  double sum = 0.0;
  for (double v : t2.output.values) sum += v;
  // Antisymmetry x -> -x - e_1 cancels the window sum except for the unpaired column x_1 = 4.
  double column = 0.0;
  for (long x1 = -4; x1 <= 4; ++x1) column += t2.output.at(Index{4, x1, 0});
  CHECK(sum == Approx(column).margin(1e-11));
  CHECK(t2.output.at(Index{0, 0, 0}) == Approx(tj_kernel(2, 1, Index{0, 0, 0})).margin(1e-12));
}

TEST_CASE("extensions of a delta") {
  ExtensionOptions opt;
  opt.k_max = 3;
  opt.margin = 5;
  const auto d = BoundarySequence::delta(1);
  const auto u = extend_poisson(d, opt);
  const auto v = extend_conjugate(d, opt);
  CHECK_FALSE(u.staggered);
  CHECK(v.staggered);
  for (int k = 0; k <= 3; ++k) {
    for (long n = -5; n <= 5; ++n) {
      CHECK(u.at(n, k) == Approx(poisson_kernel(k, n)).margin(1e-13));
      CHECK(v.at(n, k) == Approx(conjugate_kernel(k, n)).margin(1e-13));
    }
  }
  const auto a = random_on(4, 9);
  const auto ua = extend_poisson(a, opt);
  a.support.for_each([&](const Index& x) { CHECK(ua(x, 0) == a.at(x)); });
  CHECK_THROWS_AS(extend_poisson(BoundarySequence::delta(2)), InvalidArgument);
  ExtensionOptions bad;
  bad.k_max = 0;
  CHECK_THROWS_AS(extend_poisson(d, bad), InvalidArgument);
}

TEST_CASE("constant boundary data extends to nearly the same constant") {
  ExtensionOptions opt;
  opt.k_max = 2;
  const auto c = BoundarySequence::from_values(-400, std::vector<double>(801, 2.5));
  const auto u = extend_poisson(c, opt);
  CHECK(u.at(0, 2) == Approx(2.5).margin(2.5 * 8.0 / (kPi * 400.0)));
  CHECK(u.at(0, 2) <= 2.5);
}

TEST_CASE("two-dimensional extensions of a delta") {
  ExtensionOptions opt;
  opt.k_max = 2;
  opt.margin = 2;
  const auto d = BoundarySequence::delta(2);
  const auto u = extend_poisson_s(d, opt);
  const auto vs = extend_conjugate_s(d, opt);
  REQUIRE(vs.size() == 2);
  CHECK(u(Index{1, -2, 0}, 1) == Approx(poisson_kernel_s(2, 1, Index{1, 2, 0})).margin(1e-12));
  CHECK(vs[0](Index{0, 1, 0}, 0) == Approx(tj_kernel(2, 1, Index{0, 1, 0})).margin(1e-12));
  CHECK(vs[1](Index{1, 0, 0}, 0) == Approx(tj_kernel(2, 1, Index{0, 1, 0})).margin(1e-12));
  CHECK(vs[0](Index{0, 0, 0}, 2) == Approx(conjugate_kernel_s(2, 2, 1, Index{0, 0, 0})).margin(1e-12));
}

TEST_CASE("zero data gives zero fields") {
  ExtensionOptions opt;
  opt.k_max = 2;
  opt.margin = 3;
  const auto z = BoundarySequence::from_values(0, {0.0, 0.0});
  CHECK(max_abs(extend_poisson(z, opt)) == 0.0);
  CHECK(max_abs(extend_conjugate(z, opt)) == 0.0);
  const BoundarySequence z2(Box::cube(2, 0, 0), {0.0});
  for (const auto& v : extend_conjugate_s(z2, opt)) CHECK(max_abs(v) == 0.0);
}

TEST_CASE("periodic multiplier path") {
  SECTION("bins map into (-pi, pi]") {
    CHECK(bin_angle(0, 8) == 0.0);
    CHECK(bin_angle(4, 8) == Approx(kPi));
    CHECK(bin_angle(5, 8) == Approx(-3.0 * kPi / 4.0));
  }
  SECTION("Poisson symbol preserves the sum") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PeriodicSequence a{1, 256, std::vector<double>(256)};
    for (double& x : a.values) x = u(rng);
    const auto r = multiplier_apply_periodic(a, {SymbolId::Poisson, 4, 1});
    double s_in = 0.0, s_out = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
      s_in += a.values[i];
      s_out += r.output.values[i];
    }
    CHECK(s_out == Approx(s_in).margin(1e-12));
  }
  SECTION("the pi mode is an eigenvector of H_d") {
    PeriodicSequence a{1, 64, std::vector<double>(64)};
    for (std::size_t i = 0; i < 64; ++i) a.values[i] = i % 2 == 0 ? 1.0 : -1.0;
    const auto r = multiplier_apply_periodic(a, {SymbolId::Hilbert, 0, 1});
    for (std::size_t i = 0; i < 64; ++i) CHECK(r.output.values[i] == Approx((std::sqrt(2.0) - 1.0) * a.values[i]).margin(1e-14));
    CHECK(r.max_imag <= 1e-14);
  }
  SECTION("Parseval bound") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    PeriodicSequence a{1, 1024, std::vector<double>(1024)};
    for (double& x : a.values) x = g(rng);
    const auto r = multiplier_apply_periodic(a, {SymbolId::Hilbert, 0, 1});
    CHECK(r.max_symbol <= 1.0);
    CHECK(lp(r.output.values, 2) <= r.max_symbol * lp(a.values, 2) + 1e-12);
  }
  SECTION("validation") {
    PeriodicSequence bad{1, 12, std::vector<double>(12)};
    CHECK_THROWS_AS(multiplier_apply_periodic(bad, {}), InvalidArgument);
    PeriodicSequence two{2, 4, std::vector<double>(16)};
    CHECK_THROWS_AS(multiplier_apply_periodic(two, {SymbolId::Hilbert, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(multiplier_apply_periodic(two, {SymbolId::Tj, 0, 3}), InvalidArgument);
    CHECK_THROWS_AS((PeriodicSequence{1, 4, {1.0}}.validate()), InvalidArgument);
  }
}

TEST_CASE("convolution and periodic paths agree within certificates") {
  const std::size_t period = 4096;
  const long R = 512, W = 600;
  const auto a = random_on(8, 21);
  const auto ap = embed_periodic(a, period);
  const Box window = Box::cube(1, -W, W);
  struct Case {
    KernelKind kind;
    int k;
    SymbolId sym;
  };
  for (const Case cs : {Case{KernelKind::Hilbert, 0, SymbolId::Hilbert},
                        Case{KernelKind::RieszTitchmarsh, 0, SymbolId::RieszTitchmarsh},
                        Case{KernelKind::Poisson, 3, SymbolId::Poisson},
                        Case{KernelKind::Conjugate, 2, SymbolId::Conjugate}}) {
    const KernelTable t = build_table(cs.kind, {1, cs.k, 1}, R);
    const auto conv = apply_table(a, t, window);
    const Symbol sym{cs.sym, cs.k, 1};
    const auto per = multiplier_apply_periodic(ap, sym);
    window.for_each([&](const Index& x) {
      double cert = conv.truncation_bound + (2.0 * t.abs_tol + 1e-13) * a.norm1();
      for (std::size_t m = 0; m < a.values.size(); ++m) {
        const long off = x[0] - a.support.point(m)[0];
        cert += std::abs(a.values[m]) * (cs.kind == KernelKind::Poisson ? poisson_periodization_bound(t, period, off)
                                                                         : periodization_bound(sym, period, off));
      }
      CHECK(std::abs(conv.output.at(x) - per.output.at(x)) <= cert);
    });
  }
}

TEST_CASE("periodised Riesz-Titchmarsh kernel is the cotangent kernel") {
  const std::size_t n = 64;
  PeriodicSequence d{1, n, std::vector<double>(n, 0.0)};
  d.values[0] = 1.0;
  const auto r = multiplier_apply_periodic(d, {SymbolId::RieszTitchmarsh, 0, 1});
  for (long j = -20; j <= 20; ++j) {
    const double x = j + 0.5;
    const double cot = 1.0 / (static_cast<double>(n) * std::tan(kPi * x / static_cast<double>(n)));
    CHECK(r.output.at(Index{j, 0, 0}) == Approx(cot).margin(1e-14));
    CHECK(std::abs(cot - riesz_titchmarsh_kernel(j)) ==
          Approx(periodization_bound({SymbolId::RieszTitchmarsh, 0, 1}, n, j)).margin(1e-15));
  }
}
