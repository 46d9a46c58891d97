#pragma once

// Named, parameterised numerical checks. Each check returns a Report with its
// largest residual and the threshold it is held to; passed <=> residual <= threshold.
// Thresholds are collected in kThresholds below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dhilbert/box.hpp"
#include "dhilbert/errors.hpp"
#include "dhilbert/fft.hpp"
#include "dhilbert/kernels.hpp"
#include "dhilbert/lattice.hpp"
#include "dhilbert/operators.hpp"
#include "dhilbert/quadrature.hpp"
#include "dhilbert/spectral.hpp"

namespace dhilbert::verify {

using Params = std::map<std::string, double>;
using complex = std::complex<double>;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct Report {
  std::string name;
  Params params;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  long samples = 0;
  long runtime_ms = 0;
  std::string notes;
  std::map<std::string, double> info;
};

struct ThresholdEntry {
  std::string_view check;
  double value;  // NaN: computed at run time, see basis
  std::string_view basis;
};

inline constexpr double kComputed = std::numeric_limits<double>::quiet_NaN();

inline constexpr std::array<ThresholdEntry, 26> kThresholds{{
    {"rho_identity", 1e-12, "machine precision"},
    {"rho_square", 1e-12, "machine precision"},
    {"rho_vector", 1e-12, "machine precision"},
    {"curl_symbol", 1e-12, "machine precision"},
    {"normalization", 1e-12, "distance of 1 - S_R from [0, tail_bound]; quadrature slack"},
    {"periodic_normalization", 1e-12, "FFT rounding"},
    {"positivity", 1e-12, "quadrature-level nonnegativity"},
    {"symmetry", 1e-12, "torus-form quadrature vs table"},
    {"antisymmetry", 1e-13, "torus-form pair sums and window cancellation"},
    {"harmonicity", 1e-8, "quadrature tolerance composition"},
    {"harmonicity_s", 1e-7, "quadrature tolerance composition"},
    {"boundary", 2e-12, "2 x abs_tol; periodic comparison as excess over its certificate"},
    {"cr", 1e-8, "quadrature tolerance composition"},
    {"cr_s", 1e-7, "quadrature tolerance composition"},
    {"asymptotics", kComputed, "C0 = (1/pi) int |f''|, computed"},
    {"kd_bracket", 1.0, "|pi(n+1/2)K_d(n) - 1| in units of pi C0 / (n+1/2)"},
    {"d_l1", kComputed, "pi^2 C0, from |D(n)| <= C0/(n+1/2)^2"},
    {"op_norm_gap", 1.0, "ratio to (S_R + tail) ||a||_p"},
    {"weak11_ratio", 2.0, "empirical cap (param 'cap'), not a proven constant"},
    {"l2_contraction", 1e-12, "sup |m_d| <= 1; rounding slack"},
    {"f_expansion", 1e-4, "finite-difference accuracy at h = 1e-3"},
    {"multiplier_gap", 1.0, "|gap - i theta/2| / theta^2"},
    {"reductions", 1e-11, "s = 1 specialisations"},
    {"oracle_agreement", 1e-10, "engine vs Simpson-Richardson"},
    {"two_path", 1.0, "ratio of |convolution - periodic| to its certificate"},
    {"tj_antisymmetry", 1e-11, "torus-form pair sums"},
}};

inline double threshold_for(std::string_view check) {
  for (const auto& t : kThresholds)
    if (t.check == check) return t.value;
  throw UnknownCheck("no threshold configured for '" + std::string(check) + "'");
}

namespace detail {

struct Context {
  Params params;
  std::uint64_t seed = kDefaultSeed;
  quad::QuadratureSpec spec{};

  [[nodiscard]] double get(const std::string& key) const { return params.at(key); }
  [[nodiscard]] long geti(const std::string& key) const { return std::lround(params.at(key)); }
};

struct Outcome {
  double max_residual = 0.0;
  double threshold = kComputed;  // NaN: take kThresholds
  long samples = 0;
  std::string notes;
  std::map<std::string, double> info;
};

inline double uniform_theta(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-spectral::pi, spectral::pi);
  double t = d(rng);
  return t == -spectral::pi ? spectral::pi : t;
}

// Evenly spaced grid on (-pi, pi] that skips theta = 0.
inline std::vector<double> theta_grid(long count) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  for (long i = 1; i <= count; ++i) {
    const double t = -spectral::pi + 2.0 * spectral::pi * static_cast<double>(i) / static_cast<double>(count);
    if (t != 0.0) g.push_back(t);
  }
  return g;
}

// Random theta vectors in (-pi, pi]^s, plus points with zero coordinates.
inline std::vector<std::array<double, 3>> theta_vectors(int s, long count, std::mt19937_64& rng) {
  std::vector<std::array<double, 3>> out;
  for (long i = 0; i < count; ++i) {
    std::array<double, 3> t{0, 0, 0};
    for (int a = 0; a < s; ++a) t[static_cast<std::size_t>(a)] = uniform_theta(rng);
    if (s > 1 && i % 10 == 0) t[static_cast<std::size_t>(i / 10 % s)] = 0.0;
    out.push_back(t);
  }
  return out;
}

inline BoundarySequence random_boundary(int s, long half_width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const Box b = Box::cube(s, -half_width, half_width);
  std::vector<double> v(b.size());
  for (double& x : v) x = d(rng);
  return {b, std::move(v)};
}

// c_n = (1/2pi) int_{-pi}^{pi} m(theta) e^{i n theta}, n = n_lo .. n_hi, by
// composite Gauss-Legendre on [-pi, 0] and [0, pi] separately.
template <class M>
std::vector<complex> torus_coefficients(M&& m, long n_lo, long n_hi, int panels) {
  const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
  std::vector<complex> acc(count, 0.0);
  const quad::GaussRule rule = quad::gauss_legendre(12);
  for (int half = 0; half < 2; ++half) {
    const quad::Grid g = half == 0 ? quad::composite_grid(rule, -spectral::pi, 0.0, panels)
                                   : quad::composite_grid(rule, 0.0, spectral::pi, panels);
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      const double th = g.x[q];
      const complex wm = g.w[q] * m(th) / (2.0 * spectral::pi);
      const complex step = std::polar(1.0, th);
      for (std::size_t i0 = 0; i0 < count; i0 += 32) {
        complex z = std::polar(1.0, static_cast<double>(n_lo + static_cast<long>(i0)) * th);
        for (std::size_t i = i0; i < std::min(count, i0 + 32); ++i) {
          acc[i] += wm * z;
          z *= step;
        }
      }
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Spectral identities.

inline Outcome rho_identity(const Context& c) {
  Outcome o;
  for (double t : theta_grid(c.geti("grid"))) {
    const double r = spectral::rho(t);
    const complex lhs = (r - 1.0) + (std::polar(1.0, t) - 1.0) * complex(0.0, -spectral::sgn(t)) *
                                        std::polar(1.0, -0.5 * t) * spectral::rho_sqrt(t);
    o.max_residual = std::max(o.max_residual, std::abs(lhs));
    o.info["recurrence"] = std::max(o.info["recurrence"], std::abs(r + 1.0 / r - (4.0 - 2.0 * std::cos(t))));
    ++o.samples;
  }
  o.max_residual = std::max(o.max_residual, o.info["recurrence"]);
  return o;
}

inline Outcome rho_square(const Context& c) {
  Outcome o;
  for (double t : theta_grid(c.geti("grid"))) {
    const double r = spectral::rho(t);
    const double s = std::sin(0.5 * t);
    o.max_residual = std::max(o.max_residual, std::abs((r - 1.0) * (r - 1.0) - 4.0 * s * s * r));
    const double rs = spectral::rho_sqrt(t);
    o.info["rho_sqrt_squared"] = std::max(o.info["rho_sqrt_squared"], std::abs(rs * rs - r));
    ++o.samples;
  }
  o.max_residual = std::max(o.max_residual, o.info["rho_sqrt_squared"]);
  return o;
}

inline Outcome rho_vector(const Context& c) {
  Outcome o;
  std::mt19937_64 rng(c.seed);
  for (int s = 1; s <= c.geti("s_max"); ++s) {
    double worst = 0.0;
    for (const auto& t : theta_vectors(s, c.geti("grid"), rng)) {
      std::span<const double> th(t.data(), static_cast<std::size_t>(s));
      if (spectral::half_angle_sum(th) == 0.0) continue;
      const double r = spectral::rho_s(th);
      complex sum = 0.0;
      for (int j = 1; j <= s; ++j) {
        const double tj = t[static_cast<std::size_t>(j - 1)];
        sum += spectral::omega(th, j) * (std::polar(1.0, tj) - 1.0) * complex(0.0, -spectral::sgn(tj)) *
               std::polar(1.0, -0.5 * tj);
      }
      worst = std::max(worst, std::abs((r - 1.0) + spectral::rho_sqrt_s(th) * sum));
      double w2 = 0.0;
      for (int j = 1; j <= s; ++j) w2 += std::pow(spectral::omega(th, j), 2);
      o.info["omega_unit_norm"] = std::max(o.info["omega_unit_norm"], std::abs(w2 - 1.0));
      ++o.samples;
    }
    o.info["s" + std::to_string(s)] = worst;
    o.max_residual = std::max(o.max_residual, worst);
  }
  o.max_residual = std::max(o.max_residual, o.info["omega_unit_norm"]);
  return o;
}

inline Outcome curl_symbol(const Context& c) {
  Outcome o;
  std::mt19937_64 rng(c.seed);
  for (int s = 2; s <= c.geti("s_max"); ++s) {
    for (const auto& t : theta_vectors(s, c.geti("grid"), rng)) {
      std::span<const double> th(t.data(), static_cast<std::size_t>(s));
      for (int j = 1; j <= s; ++j) {
        for (int l = j + 1; l <= s; ++l) {
          const double tj = t[static_cast<std::size_t>(j - 1)], tl = t[static_cast<std::size_t>(l - 1)];
          const complex lhs = (std::polar(1.0, tj) - 1.0) * complex(0.0, -spectral::sgn(tl)) * spectral::omega(th, l) *
                              std::polar(1.0, 0.5 * tl);
          const complex rhs = (std::polar(1.0, tl) - 1.0) * complex(0.0, -spectral::sgn(tj)) * spectral::omega(th, j) *
                              std::polar(1.0, 0.5 * tj);
          o.max_residual = std::max(o.max_residual, std::abs(lhs - rhs));
          ++o.samples;
        }
      }
    }
  }
  return o;
}

inline Outcome f_expansion(const Context& c) {
  Outcome o;
  const double h = c.get("h");
  const double f0 = spectral::f(0.0), f1 = spectral::f(h), f2 = spectral::f(2 * h), f3 = spectral::f(3 * h);
  const double d1 = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
  const double d2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
  o.info["f0"] = f0;
  o.info["f_prime_0"] = d1;
  o.info["f_second_0"] = d2;
  o.info["theta2_coefficient"] = (f1 - d1 * h) / (h * h);
  o.max_residual = std::max({std::abs(f0), std::abs(d1 + 0.5), std::abs(0.5 * d2 - 0.125)});
  o.samples = 4;
  o.notes = "forward stencils of second order at step h";
  return o;
}

inline Outcome multiplier_gap(const Context& c) {
  Outcome o;
  const long n = c.geti("grid");
  const double lo = std::log(c.get("theta_min")), hi = std::log(c.get("theta_max"));
  for (long i = 0; i < n; ++i) {
    const double mag = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    for (double t : {mag, -mag}) {
      const complex gap = spectral::multiplier_hd(t) - spectral::multiplier_hplus(t);
      o.max_residual = std::max(o.max_residual, std::abs(gap - complex(0.0, 0.5 * t)) / (t * t));
      o.info["abs_gap_vs_half_theta"] =
          std::max(o.info["abs_gap_vs_half_theta"], std::abs(std::abs(gap) - 0.5 * std::abs(t)) / (t * t));
      ++o.samples;
    }
  }
  o.notes = "gap = i theta/2 + O(theta^2); the sign of the imaginary part follows theta";
  return o;
}

// ---------------------------------------------------------------------------
// Kernel structure.

inline Outcome normalization(const Context& c) {
  Outcome o;
  const int k = static_cast<int>(c.geti("k"));
  const long R = c.geti("R");
  const KernelTable t = build_table(KernelKind::Poisson, {1, k, 1}, R, c.spec);
  double sum = 0.0;
  for (double v : t.values) sum += v;
  const double gap = 1.0 - sum;
  o.max_residual = std::max(0.0, -gap) + std::max(0.0, gap - t.tail_bound);
  o.samples = static_cast<long>(t.values.size());
  o.info["one_minus_sum"] = gap;
  o.info["tail_bound"] = t.tail_bound;
  o.notes = "1 - S_R must lie in [0, tail_bound]";
  return o;
}

inline Outcome periodic_normalization(const Context& c) {
  Outcome o;
  const auto n = static_cast<std::size_t>(c.geti("N"));
  const int k = static_cast<int>(c.geti("k"));
  const PeriodicSequence d = embed_periodic(BoundarySequence::delta(1), n);
  const PeriodicResult r = multiplier_apply_periodic(d, Symbol{SymbolId::Poisson, k, 1});
  double sum = 0.0, mn = 0.0;
  for (double v : r.output.values) {
    sum += v;
    mn = std::min(mn, v);
  }
  o.max_residual = std::abs(sum - 1.0);
  o.samples = static_cast<long>(n);
  o.info["sum"] = sum;
  o.info["min_value"] = mn;
  o.info["max_imag"] = r.max_imag;
  return o;
}

inline Outcome positivity(const Context& c) {
  Outcome o;
  const long R = c.geti("R");
  double mn = 1.0, mx = 0.0;
  for (int k = 0; k <= c.geti("k_max"); ++k) {
    const KernelTable t = build_table(KernelKind::Poisson, {1, k, 1}, R, c.spec);
    for (double v : t.values) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      ++o.samples;
    }
  }
  o.max_residual = std::max(0.0, -mn) + std::max(0.0, mx - 1.0);
  o.info["min_value"] = mn;
  o.info["max_value"] = mx;
  return o;
}

// P_k(-n) vs P_k(n) and realness, from the complex torus integral of rho^k
// e^{i n theta}; agreement with the [0, pi] cosine table is reported too.
inline Outcome symmetry(const Context& c) {
  Outcome o;
  const long R = c.geti("R");
  const int panels = static_cast<int>(4 * std::max<long>(1, R));
  double table_gap = 0.0, imag = 0.0;
  for (int k = 0; k <= c.geti("k_max"); ++k) {
    const auto coef = torus_coefficients([k](double th) { return complex(std::pow(spectral::rho(th), k)); }, -R, R, panels);
    const KernelTable t = build_table(KernelKind::Poisson, {1, k, 1}, R, c.spec);
    for (long n = 0; n <= R; ++n) {
      const complex p = coef[static_cast<std::size_t>(R + n)], m = coef[static_cast<std::size_t>(R - n)];
      o.max_residual = std::max(o.max_residual, std::abs(p - m));
      imag = std::max({imag, std::abs(p.imag()), std::abs(m.imag())});
      table_gap = std::max(table_gap, std::abs(p.real() - t.at(n)));
      table_gap = std::max(table_gap, std::abs(t.at(n) - t.at(-n)));
      ++o.samples;
    }
  }
  o.info["imag_part"] = imag;
  o.info["table_vs_torus"] = table_gap;
  o.max_residual = std::max({o.max_residual, imag, table_gap});
  return o;
}

// K_d(n) + K_d(-n-1) from the torus integral of m_d, plus the exact table
// relations and the cancellation of the sum over [-R-1, R].
inline Outcome antisymmetry(const Context& c) {
  Outcome o;
  const long R = c.geti("R");
  const int panels = static_cast<int>(4 * (R + 1));
  const auto coef = torus_coefficients([](double th) { return spectral::multiplier_hd(th); }, -R - 1, R, panels);
  double imag = 0.0;
  for (long n = 0; n <= R; ++n) {
    const complex a = coef[static_cast<std::size_t>(n + R + 1)];
    const complex b = coef[static_cast<std::size_t>(-n - 1 + R + 1)];
    o.max_residual = std::max(o.max_residual, std::abs(a + b));
    imag = std::max({imag, std::abs(a.imag()), std::abs(b.imag())});
    ++o.samples;
  }
  const KernelTable t = build_table(KernelKind::Hilbert, {}, R + 1, c.spec);
  double table_pairs = 0.0, sum = 0.0, torus_vs_table = 0.0;
  for (long n = 0; n <= R; ++n) {
    table_pairs = std::max(table_pairs, std::abs(t.at(n) + t.at(-n - 1)));
    torus_vs_table = std::max(torus_vs_table, std::abs(coef[static_cast<std::size_t>(n + R + 1)].real() - t.at(n)));
  }
  for (long n = -R - 1; n <= R; ++n) sum += t.at(n);
  o.info["imag_part"] = imag;
  o.info["table_pairs"] = table_pairs;
  o.info["window_sum"] = sum;
  o.info["torus_vs_table"] = torus_vs_table;
  o.max_residual = std::max({o.max_residual, imag, table_pairs, std::abs(sum)});
  return o;
}

// T_j kernel pairs K(x) + K(-x-e_j) on |x|_inf <= x_max from the torus form
// (1/(2pi)^s) int m_j(theta) e^{i x.theta}, expanded into real tensor integrals.
inline Outcome tj_antisymmetry(const Context& c) {
  Outcome o;
  const int s = static_cast<int>(c.geti("s"));
  const int j = static_cast<int>(c.geti("j"));
  const long xm = c.geti("x_max");
  check_dimension(s);
  if (j < 1 || j > s) throw InvalidParams("j must lie in [1, s]");
  // Per-axis frequencies -xm-1 .. xm so that -x-e_j is available.
  std::vector<double> nus;
  for (long v = -xm - 1; v <= xm; ++v) nus.push_back(static_cast<double>(v));
  const Box box = Box::cube(s, -xm - 1, xm);
  std::vector<complex> kern(box.size(), 0.0);
  const int patterns = 1 << s;
  for (int tau = 0; tau < patterns; ++tau) {
    std::vector<quad::AxisTrig> axes(static_cast<std::size_t>(s));
    for (int a = 0; a < s; ++a) axes[static_cast<std::size_t>(a)] = {(tau >> a) & 1 ? quad::Trig::Sin : quad::Trig::Cos, nus};
    auto g = [&](std::span<const double> th, std::span<double> out) {
      complex acc = 0.0;
      std::array<double, 3> pt{};
      for (int sig = 0; sig < patterns; ++sig) {
        complex factor = 1.0;
        for (int a = 0; a < s; ++a) {
          const double sa = (sig >> a) & 1 ? -1.0 : 1.0;
          pt[static_cast<std::size_t>(a)] = sa * th[static_cast<std::size_t>(a)];
          if ((tau >> a) & 1) factor *= complex(0.0, sa);
        }
        acc += factor * spectral::multiplier_tj(std::span<const double>(pt.data(), static_cast<std::size_t>(s)), j);
      }
      acc /= std::pow(2.0, s);
      out[0] = acc.real();
      out[1] = acc.imag();
    };
    quad::QuadratureSpec spec = c.spec;
    spec.min_panels = std::max(spec.min_panels, static_cast<int>(4 * (xm + 1)));
    const auto res = quad::integrate_tensor_batch(s, 2, g, std::span<const quad::AxisTrig>(axes), spec);
    for (std::size_t lin = 0; lin < box.size(); ++lin) {
      const Index x = box.point(lin);
      std::array<std::size_t, 3> i{0, 0, 0};
      for (int a = 0; a < s; ++a) i[static_cast<std::size_t>(a)] = static_cast<std::size_t>(x[a] + xm + 1);
      kern[lin] += complex(res.at(0, i), res.at(1, i));
    }
  }
  const Box inner = Box::cube(s, -xm, xm);
  double imag = 0.0;
  inner.for_each([&](const Index& x) {
    const Index y = Index{} - x - unit_vector(j - 1);
    const complex a = kern[box.linear(x)], b = kern[box.linear(y)];
    o.max_residual = std::max(o.max_residual, std::abs(a + b));
    imag = std::max(imag, std::abs(a.imag()));
    ++o.samples;
  });
  const KernelTable t = build_table(KernelKind::TjS, {s, 0, j}, xm + 1, c.spec);
  double vs_table = 0.0;
  inner.for_each([&](const Index& x) { vs_table = std::max(vs_table, std::abs(kern[box.linear(x)].real() - t.at(x))); });
  o.info["imag_part"] = imag;
  o.info["torus_vs_table"] = vs_table;
  o.info["k_origin"] = t.at(Index{});
  o.max_residual = std::max({o.max_residual, imag, vs_table});
  return o;
}

// ---------------------------------------------------------------------------
// Fields.

inline BoundarySequence boundary_for(const Context& c, int s, long half_width) {
  if (c.geti("random") != 0) {
    std::mt19937_64 rng(c.seed);
    return random_boundary(s, half_width, rng);
  }
  return BoundarySequence::delta(s);
}

inline Outcome harmonicity(const Context& c) {
  Outcome o;
  const long nm = c.geti("n_max");
  const int km = static_cast<int>(c.geti("k_max"));
  const BoundarySequence a = boundary_for(c, 1, 5);
  const ExtensionOptions opt{km + 1, nm + 1 - a.support.hi[0], c.spec, nullptr};
  const LatticeField u = extend_poisson(a, opt);
  const LatticeField v = extend_conjugate(a, opt);
  const Box region = Box::cube(1, -nm, nm);
  const double ru = max_abs(laplacian_residual(u), region, 1, km);
  const double rv = max_abs(laplacian_residual(v), region, 1, km);
  o.info["U"] = ru;
  o.info["V"] = rv;
  o.max_residual = std::max(ru, rv);
  o.samples = 2 * static_cast<long>(region.size()) * km;
  return o;
}

inline Outcome harmonicity_s(const Context& c) {
  Outcome o;
  const int s = static_cast<int>(c.geti("s"));
  const long xm = c.geti("x_max");
  const int km = static_cast<int>(c.geti("k_max"));
  const BoundarySequence a = boundary_for(c, s, 5);
  const ExtensionOptions opt{km + 1, xm + 1 - a.support.hi[0], c.spec, nullptr};
  const LatticeField u = extend_poisson_s(a, opt);
  const auto vs = extend_conjugate_s(a, opt);
  const Box region = Box::cube(s, -xm, xm);
  o.info["U"] = max_abs(laplacian_residual(u), region, 1, km);
  o.max_residual = o.info["U"];
  for (int j = 0; j < s; ++j) {
    const double r = max_abs(laplacian_residual(vs[static_cast<std::size_t>(j)]), region, 1, km);
    o.info["V" + std::to_string(j + 1)] = r;
    o.max_residual = std::max(o.max_residual, r);
  }
  o.samples = static_cast<long>(region.size()) * km * (s + 1);
  return o;
}

inline Outcome cr(const Context& c) {
  Outcome o;
  const long nm = c.geti("n_max");
  const int km = static_cast<int>(c.geti("k_max"));
  const BoundarySequence a = boundary_for(c, 1, 5);
  const ExtensionOptions opt{km + 1, nm + 1 - a.support.hi[0], c.spec, nullptr};
  const CrResiduals r = cr_residuals(extend_poisson(a, opt), extend_conjugate(a, opt));
  const Box region = Box::cube(1, -nm, nm);
  o.info["R1"] = max_abs(r.r1, region, 1, km);
  o.info["R2"] = max_abs(r.r2, region, 1, km);
  o.info["R2_k0"] = max_abs(r.r2, region, 0, 0);
  o.max_residual = std::max(o.info["R1"], o.info["R2"]);
  o.samples = 2 * static_cast<long>(region.size()) * km;
  o.notes = "k >= 1 asserted; R2 at k = 0 reported only";
  return o;
}

inline Outcome cr_s(const Context& c) {
  Outcome o;
  const int s = static_cast<int>(c.geti("s"));
  const long xm = c.geti("x_max");
  const int km = static_cast<int>(c.geti("k_max"));
  const BoundarySequence a = boundary_for(c, s, 5);
  const ExtensionOptions opt{km + 1, xm + 1 - a.support.hi[0], c.spec, nullptr};
  const CrResidualsS r = cr_residuals_s(extend_poisson_s(a, opt), extend_conjugate_s(a, opt));
  const Box region = Box::cube(s, -xm, xm);
  o.info["div"] = max_abs(r.div, region, 1, km);
  o.info["div_k0"] = max_abs(r.div, region, 0, 0);
  o.max_residual = o.info["div"];
  for (int j = 0; j < s; ++j) {
    const double g = max_abs(r.grad[static_cast<std::size_t>(j)], region, 1, km);
    o.info["grad" + std::to_string(j + 1)] = g;
    o.max_residual = std::max(o.max_residual, g);
  }
  for (std::size_t q = 0; q < r.curl.size(); ++q) {
    const double cv = max_abs(r.curl[q], region, 1, km);
    o.info["curl" + std::to_string(r.curl_axes[q].first + 1) + std::to_string(r.curl_axes[q].second + 1)] = cv;
    o.max_residual = std::max(o.max_residual, cv);
  }
  o.samples = static_cast<long>(region.size()) * km * static_cast<long>(1 + s + r.curl.size());
  o.notes = "k >= 1 asserted; div at k = 0 reported only";
  return o;
}

inline Outcome boundary(const Context& c) {
  Outcome o;
  const long nm = c.geti("n_max");
  const auto period = static_cast<std::size_t>(c.geti("N"));
  const BoundarySequence a = boundary_for(c, 1, 5);
  const ExtensionOptions opt{1, nm - a.support.hi[0], c.spec, nullptr};
  const LatticeField u = extend_poisson(a, opt);
  const LatticeField v = extend_conjugate(a, opt);
  const Box w = u.window;

  double u_gap = 0.0;
  w.for_each([&](const Index& x) { u_gap = std::max(u_gap, std::abs(u(x, 0) - a.at(x))); });

  // Reference H_d a by direct summation of pointwise kernel values, each on its own grid.
  std::map<long, double> kd;
  auto kernel_at = [&](long n) {
    auto it = kd.find(n);
    if (it == kd.end()) it = kd.emplace(n, hilbert_kernel(n, c.spec)).first;
    return it->second;
  };
  double v_gap = 0.0;
  w.for_each([&](const Index& x) {
    double ref = 0.0;
    for (std::size_t m = 0; m < a.values.size(); ++m) ref += kernel_at(x[0] - a.support.point(m)[0]) * a.values[m];
    v_gap = std::max(v_gap, std::abs(v(x, 0) - ref));
  });
  const double v_gap_norm = v_gap / a.norm1();

  const PeriodicResult p = multiplier_apply_periodic(embed_periodic(a, period), Symbol{SymbolId::Hilbert, 0, 1});
  double excess = 0.0, worst_gap = 0.0, worst_ratio = 0.0;
  w.for_each([&](const Index& x) {
    double cert = (2.0 * c.spec.abs_tol + 1e-13) * a.norm1();
    for (std::size_t m = 0; m < a.values.size(); ++m)
      cert += std::abs(a.values[m]) * periodization_bound(Symbol{SymbolId::Hilbert}, period, x[0] - a.support.point(m)[0]);
    const double gap = std::abs(v(x, 0) - p.output.at(x));
    worst_gap = std::max(worst_gap, gap);
    worst_ratio = std::max(worst_ratio, gap / cert);
    excess = std::max(excess, gap - cert);
  });
  o.info["periodic_gap_over_certificate"] = worst_ratio;
  o.info["U0_minus_a"] = u_gap;
  o.info["V0_minus_Hd_a"] = v_gap;
  o.info["periodic_gap"] = worst_gap;
  o.info["periodic_excess"] = excess;
  o.max_residual = std::max({u_gap, v_gap_norm, std::max(0.0, excess)});
  o.samples = 3 * static_cast<long>(w.size());
  o.notes = "V0 vs H_d a per unit ||a||_1; periodic path judged against its certificate";
  return o;
}

// ---------------------------------------------------------------------------
// Difference kernel and operator bounds.

inline Outcome asymptotics(const Context& c) {
  Outcome o;
  const long lo = c.geti("n_lo"), hi = c.geti("n_hi");
  if (lo < 0 || hi < lo) throw InvalidParams("need 0 <= n_lo <= n_hi");
  auto g = [](double th) { return spectral::f(th); };
  const auto d = quad::integrate_ladder(g, quad::Trig::Sin, static_cast<double>(lo) + 0.5,
                                        static_cast<std::size_t>(hi - lo + 1), c.spec);
  double argmax = 0.0;
  for (long n = lo; n <= hi; ++n) {
    const double m = static_cast<double>(n) + 0.5;
    const double v = m * m * std::abs(d[static_cast<std::size_t>(n - lo)].value);
    if (v > o.max_residual) {
      o.max_residual = v;
      argmax = static_cast<double>(n);
    }
    ++o.samples;
  }
  o.threshold = curvature_constant(0);
  o.info["C0"] = o.threshold;
  o.info["argmax_n"] = argmax;
  return o;
}

inline Outcome kd_bracket(const Context& c) {
  Outcome o;
  const double c0 = curvature_constant(0);
  for (const char* key : {"n1", "n2"}) {
    const long n = c.geti(key);
    const double m = static_cast<double>(n) + 0.5;
    const double scaled = spectral::pi * m * hilbert_kernel(n, c.spec);
    const double ratio = std::abs(scaled - 1.0) / (spectral::pi * c0 / m);
    o.info[std::string("scaled_") + key] = scaled;
    o.max_residual = std::max(o.max_residual, ratio);
    ++o.samples;
  }
  o.info["C0"] = c0;
  return o;
}

inline Outcome d_l1(const Context& c) {
  Outcome o;
  const KernelTable t = build_table(KernelKind::Difference, {}, c.geti("R"), c.spec);
  double sum = 0.0, prev = -1.0;
  bool monotone = true;
  for (long r = 0; r <= t.radius; ++r) {
    sum += std::abs(t.at(r)) + (r > 0 ? std::abs(t.at(-r)) : 0.0);
    if (sum < prev) monotone = false;
    prev = sum;
  }
  sum += std::abs(t.at(-t.radius - 1));
  const double c0 = curvature_constant(0);
  o.max_residual = sum + t.tail_bound;
  o.threshold = spectral::pi * spectral::pi * c0;
  o.samples = static_cast<long>(t.values.size());
  o.info["partial_sum"] = sum;
  o.info["tail_bound"] = t.tail_bound;
  o.info["monotone"] = monotone ? 1.0 : 0.0;
  if (!monotone) o.max_residual = std::numeric_limits<double>::infinity();
  return o;
}

inline double lp_norm(const std::vector<double>& v, double p) {
  double acc = 0.0;
  if (std::isinf(p)) {
    for (double x : v) acc = std::max(acc, std::abs(x));
    return acc;
  }
  for (double x : v) acc += std::pow(std::abs(x), p);
  return std::pow(acc, 1.0 / p);
}

inline Outcome op_norm_gap(const Context& c) {
  Outcome o;
  const KernelTable dt = build_table(KernelKind::Difference, {}, c.geti("R"), c.spec);
  double l1 = 0.0;
  for (double v : dt.values) l1 += std::abs(v);
  const double norm_d = l1 + dt.tail_bound;
  std::mt19937_64 rng(c.seed);
  double two_path = 0.0;
  TransformOptions topt;
  topt.spec = c.spec;
  for (long trial = 0; trial < c.geti("trials"); ++trial) {
    const BoundarySequence a = random_boundary(1, c.geti("support"), rng);
    const auto d = difference_transform(a, topt);
    const auto h = hilbert_transform(a, topt);
    const auto hp = riesz_titchmarsh_transform(a, topt);
    for (std::size_t i = 0; i < d.output.values.size(); ++i)
      two_path = std::max(two_path, std::abs(d.output.values[i] - (h.output.values[i] - hp.output.values[i])));
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      const double ratio = lp_norm(d.output.values, p) / (norm_d * lp_norm(a.values, p));
      o.max_residual = std::max(o.max_residual, ratio);
      ++o.samples;
    }
  }
  o.info["D_l1_bound"] = norm_d;
  o.info["D_vs_Hd_minus_Hplus"] = two_path;
  o.notes = "norms of (H_d - H+)a over the output window";
  return o;
}

inline Outcome weak11_ratio(const Context& c) {
  Outcome o;
  TransformOptions topt;
  topt.margin = c.geti("R");
  topt.spec = c.spec;
  const auto h = hilbert_transform(BoundarySequence::delta(1), topt);
  std::vector<double> v;
  for (double x : h.output.values) v.push_back(std::abs(x));
  std::sort(v.begin(), v.end(), std::greater<>());
  for (std::size_t i = 0; i < v.size(); ++i) o.max_residual = std::max(o.max_residual, static_cast<double>(i + 1) * v[i]);
  o.threshold = c.get("cap");
  o.samples = static_cast<long>(v.size());
  o.notes = "empirical: sup_lambda lambda #{|H_d delta| > lambda} over the window; cap is not a proven constant";
  return o;
}

inline Outcome l2_contraction(const Context& c) {
  Outcome o;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double max_symbol = 0.0;
  for (const char* key : {"N1", "N2"}) {
    const auto n = static_cast<std::size_t>(c.geti(key));
    for (long t = 0; t < c.geti("trials"); ++t) {
      PeriodicSequence a{1, n, std::vector<double>(n)};
      for (double& x : a.values) x = d(rng);
      const PeriodicResult r = multiplier_apply_periodic(a, Symbol{SymbolId::Hilbert});
      const double ratio = lp_norm(r.output.values, 2.0) / lp_norm(a.values, 2.0);
      o.max_residual = std::max(o.max_residual, ratio - 1.0);
      max_symbol = std::max(max_symbol, r.max_symbol);
      ++o.samples;
    }
  }
  o.max_residual = std::max(0.0, o.max_residual);
  o.info["max_symbol"] = max_symbol;
  o.notes = "periodic path; residual is ||H_d a||_2 / ||a||_2 - 1 clipped at 0";
  return o;
}

// ---------------------------------------------------------------------------
// Cross-checks.

inline Outcome reductions(const Context& c) {
  Outcome o;
  auto upd = [&](const char* key, double v) {
    o.info[key] = std::max(o.info[key], v);
    o.max_residual = std::max(o.max_residual, v);
    ++o.samples;
  };
  for (double t : theta_grid(c.geti("grid"))) {
    std::span<const double> th(&t, 1);
    upd("rho_s", std::abs(spectral::rho_s(th) - spectral::rho(t)));
    upd("omega", std::abs(spectral::omega(th, 1) - 1.0));
    upd("m_j", std::abs(spectral::multiplier_tj(th, 1) - spectral::multiplier_hd(t)));
    upd("m_Rj", std::abs(spectral::multiplier_rj(th, 1) - spectral::multiplier_hplus(t)));
  }
  const long n = c.geti("n_max");
  for (int k : {1, 2, 5}) {
    const KernelTable ps = build_table(KernelKind::PoissonS, {1, k, 1}, n, c.spec);
    const KernelTable p = build_table(KernelKind::Poisson, {1, k, 1}, n, c.spec);
    for (long i = -n; i <= n; ++i) upd("P_s", std::abs(ps.at(i) - p.at(i)));
  }
  const KernelTable tj = build_table(KernelKind::TjS, {1, 0, 1}, n, c.spec);
  const KernelTable kd = build_table(KernelKind::Hilbert, {}, n, c.spec);
  for (long i = -n; i <= n; ++i) upd("K_T1", std::abs(tj.at(i) - kd.at(i)));
  std::mt19937_64 rng(c.seed);
  const BoundarySequence a = random_boundary(1, 5, rng);
  TransformOptions topt;
  topt.margin = n;
  topt.spec = c.spec;
  const auto t1 = tj_transform(1, a, topt);
  const auto hd = hilbert_transform(a, topt);
  for (std::size_t i = 0; i < t1.output.values.size(); ++i)
    upd("T_1", std::abs(t1.output.values[i] - hd.output.values[i]));
  return o;
}

/// (k, n) pairs of the engine/oracle corpus.
inline std::vector<std::pair<int, long>> oracle_corpus() {
  std::vector<std::pair<int, long>> out;
  for (int k : {0, 1, 5, 20})
    for (long n : {0L, 1L, 10L, 100L, 1000L}) out.emplace_back(k, n);
  return out;
}

inline Outcome oracle_agreement(const Context& c) {
  Outcome o;
  const int levels = static_cast<int>(c.geti("levels"));
  double worst_est = 0.0;
  for (const auto& [k, n] : oracle_corpus()) {
    auto gc = dhilbert::detail::rho_power(k);
    auto gs = dhilbert::detail::rho_power(k + 0.5);
    const double nu = static_cast<double>(n);
    const double ec = quad::integrate_oscillatory(gc, quad::Trig::Cos, nu, c.spec);
    const auto oc = quad::oracle_integrate(gc, quad::Trig::Cos, nu, levels);
    const double es = quad::integrate_oscillatory(gs, quad::Trig::Sin, nu + 0.5, c.spec);
    const auto os = quad::oracle_integrate(gs, quad::Trig::Sin, nu + 0.5, levels);
    o.max_residual = std::max({o.max_residual, std::abs(ec - oc.value), std::abs(es - os.value)});
    worst_est = std::max({worst_est, oc.err_est, os.err_est});
    o.samples += 2;
  }
  o.info["oracle_err_est"] = worst_est;
  o.notes = "rho^k cos(n theta) and rho^{k+1/2} sin((n+1/2) theta), k in {0,1,5,20}, n in {0,1,10,100,1000}";
  return o;
}

inline Outcome two_path(const Context& c) {
  Outcome o;
  const auto period = static_cast<std::size_t>(c.geti("N"));
  const long S = c.geti("S"), R = c.geti("R"), W = c.geti("W");
  std::mt19937_64 rng(c.seed);
  struct Case {
    const char* name;
    KernelKind kind;
    int k;
    SymbolId sym;
  };
  const Case cases[] = {{"Hd", KernelKind::Hilbert, 0, SymbolId::Hilbert},
                        {"Hplus", KernelKind::RieszTitchmarsh, 0, SymbolId::RieszTitchmarsh},
                        {"P3", KernelKind::Poisson, 3, SymbolId::Poisson},
                        {"Q2", KernelKind::Conjugate, 2, SymbolId::Conjugate}};
  std::vector<KernelTable> tables;
  for (const auto& cs : cases) tables.push_back(build_table(cs.kind, {1, cs.k, 1}, R, c.spec));
  const Box window = Box::cube(1, -W, W);
  for (long trial = 0; trial < c.geti("trials"); ++trial) {
    const BoundarySequence a = random_boundary(1, S, rng);
    const PeriodicSequence ap = embed_periodic(a, period);
    for (std::size_t q = 0; q < std::size(cases); ++q) {
      const Case& cs = cases[q];
      const Symbol sym{cs.sym, cs.k, 1};
      const TransformResult tr = apply_table(a, tables[q], window);
      const PeriodicResult pr = multiplier_apply_periodic(ap, sym);
      double worst = 0.0;
      window.for_each([&](const Index& x) {
        double cert = tr.truncation_bound + (2.0 * c.spec.abs_tol + 1e-13) * a.norm1();
        for (std::size_t m = 0; m < a.values.size(); ++m) {
          const long off = x[0] - a.support.point(m)[0];
          const double b = cs.kind == KernelKind::Poisson ? poisson_periodization_bound(tables[q], period, off)
                                                         : periodization_bound(sym, period, off);
          cert += std::abs(a.values[m]) * b;
        }
        const double gap = std::abs(tr.output.at(x) - pr.output.at(x));
        worst = std::max(worst, gap);
        o.max_residual = std::max(o.max_residual, gap / cert);
        ++o.samples;
      });
      o.info[std::string("gap_") + cs.name] = std::max(o.info[std::string("gap_") + cs.name], worst);
    }
  }
  o.notes = "certificate = truncation tail + periodisation bound + quadrature and FFT rounding";
  return o;
}

// ---------------------------------------------------------------------------

struct CheckDef {
  std::string_view name;
  std::string_view summary;
  Params defaults;
  Outcome (*run)(const Context&);
};

inline const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> checks{
      {"rho_identity", "(rho-1) + (e^{i theta}-1)(-i sgn theta) e^{-i theta/2} rho^{1/2} = 0", {{"grid", 10001}}, &rho_identity},
      {"rho_square", "(rho-1)^2 = 4 sin^2(theta/2) rho", {{"grid", 10001}}, &rho_square},
      {"rho_vector", "vector identity for rho_s and omega_j, s = 1..s_max", {{"grid", 10000}, {"s_max", 3}}, &rho_vector},
      {"curl_symbol", "symbol identity behind the curl relation", {{"grid", 10000}, {"s_max", 3}}, &curl_symbol},
      {"normalization", "1 - sum_{|n|<=R} P_k(n) in [0, tail_bound]", {{"k", 1}, {"R", 500}}, &normalization},
      {"periodic_normalization", "periodic P_k sums to 1", {{"k", 5}, {"N", 4096}}, &periodic_normalization},
      {"positivity", "0 <= P_k(n) <= 1", {{"k_max", 20}, {"R", 200}}, &positivity},
      {"symmetry", "P_k(-n) = P_k(n), torus form", {{"k_max", 20}, {"R", 200}}, &symmetry},
      {"antisymmetry", "K_d(-n-1) = -K_d(n), torus form", {{"R", 100}}, &antisymmetry},
      {"tj_antisymmetry", "K_Tj(-x-e_j) = -K_Tj(x), torus form", {{"s", 2}, {"j", 1}, {"x_max", 4}}, &tj_antisymmetry},
      {"harmonicity", "five-point Laplacian of U and V", {{"n_max", 40}, {"k_max", 10}, {"random", 0}}, &harmonicity},
      {"harmonicity_s", "(2s+3)-point Laplacian of U and V_j", {{"s", 2}, {"x_max", 8}, {"k_max", 4}, {"random", 0}},
       &harmonicity_s},
      {"boundary", "U(.,0) = a, V(.,0) = H_d a (convolution and periodic paths)",
       {{"n_max", 40}, {"N", 4096}, {"random", 0}}, &boundary},
      {"cr", "Cauchy-Riemann residuals on Z x N", {{"n_max", 30}, {"k_max", 8}, {"random", 0}}, &cr},
      {"cr_s", "Cauchy-Riemann residuals on Z^s x N", {{"s", 2}, {"x_max", 8}, {"k_max", 4}, {"random", 0}}, &cr_s},
      {"asymptotics", "sup (n+1/2)^2 |D(n)| <= C0", {{"n_lo", 500}, {"n_hi", 5000}}, &asymptotics},
      {"kd_bracket", "pi(n+1/2) K_d(n) = 1 + O(C0/n)", {{"n1", 1000}, {"n2", 5000}}, &kd_bracket},
      {"d_l1", "sum |D(n)| <= pi^2 C0", {{"R", 2000}}, &d_l1},
      {"op_norm_gap", "||(H_d - H+) a||_p <= ||D||_1 ||a||_p", {{"trials", 20}, {"support", 8}, {"R", 2000}},
       &op_norm_gap},
      {"weak11_ratio", "empirical weak (1,1) ratio of H_d delta", {{"R", 2000}, {"cap", 2.0}}, &weak11_ratio},
      {"l2_contraction", "||H_d a||_2 <= ||a||_2, periodic path", {{"trials", 100}, {"N1", 64}, {"N2", 4096}},
       &l2_contraction},
      {"f_expansion", "f(0) = 0, f'(0) = -1/2, f''(0) = 1/4", {{"h", 1e-3}}, &f_expansion},
      {"multiplier_gap", "m_d - m_H+ = i theta/2 + O(theta^2)",
       {{"grid", 200}, {"theta_min", 1e-3}, {"theta_max", 0.5}}, &multiplier_gap},
      {"reductions", "s = 1 specialisations agree with 1-d objects", {{"grid", 2001}, {"n_max", 10}}, &reductions},
      {"oracle_agreement", "quadrature engine vs Simpson-Richardson oracle", {{"levels", 8}}, &oracle_agreement},
      {"two_path", "truncated convolution vs periodic multiplier",
       {{"N", 4096}, {"S", 8}, {"R", 512}, {"W", 600}, {"trials", 10}}, &two_path},
  };
  return checks;
}

inline const CheckDef& find_check(std::string_view name) {
  for (const auto& d : registry())
    if (d.name == name) return d;
  throw UnknownCheck("unknown check '" + std::string(name) + "'");
}

}  // namespace detail

inline std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& d : detail::registry()) out.emplace_back(d.name);
  return out;
}

/// Runs one check. Keys in `overrides` must be among the check's parameters.
inline Report run_check(std::string_view name, const Params& overrides = {}, std::uint64_t seed = kDefaultSeed,
                        const quad::QuadratureSpec& spec = {}) {
  const auto& def = detail::find_check(name);
  detail::Context ctx;
  ctx.params = def.defaults;
  ctx.seed = seed;
  ctx.spec = spec;
  for (const auto& [key, value] : overrides) {
    if (!def.defaults.count(key)) throw InvalidParams("check '" + std::string(name) + "' has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw InvalidParams("parameter '" + key + "' must be finite");
    ctx.params[key] = value;
  }
  for (const auto& [key, value] : ctx.params)
    if (value < 0.0) throw InvalidParams("parameter '" + key + "' must be >= 0");

  Report r;
  r.name = std::string(name);
  r.params = ctx.params;
  r.params["seed"] = static_cast<double>(seed);
  const auto t0 = std::chrono::steady_clock::now();
  detail::Outcome out;
  try {
    out = def.run(ctx);
  } catch (const InvalidParams&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw InvalidParams(e.what());
  } catch (const DimensionTooLarge& e) {
    throw InvalidParams(e.what());
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  r.max_residual = out.max_residual;
  r.threshold = std::isnan(out.threshold) ? threshold_for(name) : out.threshold;
  r.passed = r.max_residual <= r.threshold;
  r.samples = out.samples;
  r.notes = out.notes;
  r.info = out.info;
  return r;
}

enum class Profile { Fast, Full };

struct SuiteEntry {
  std::string_view check;
  Params params;
};

inline std::vector<SuiteEntry> suite_entries(Profile profile) {
  std::vector<SuiteEntry> e{
      {"rho_identity", {}},
      {"rho_square", {}},
      {"rho_vector", {}},
      {"curl_symbol", {}},
      {"f_expansion", {}},
      {"multiplier_gap", {}},
      {"normalization", {{"k", 1}, {"R", 500}}},
      {"periodic_normalization", {}},
      {"positivity", {}},
      {"symmetry", {}},
      {"antisymmetry", {}},
      {"tj_antisymmetry", {{"x_max", 2}}},
      {"harmonicity", {}},
      {"harmonicity", {{"random", 1}}},
      {"boundary", {}},
      {"boundary", {{"random", 1}}},
      {"cr", {}},
      {"cr", {{"random", 1}}},
      {"asymptotics", {{"n_hi", 2000}}},
      {"kd_bracket", {}},
      {"d_l1", {}},
      {"op_norm_gap", {}},
      {"weak11_ratio", {}},
      {"l2_contraction", {}},
      {"reductions", {}},
      {"oracle_agreement", {}},
      {"two_path", {}},
  };
  if (profile == Profile::Full) {
    e.push_back({"normalization", {{"k", 5}, {"R", 2000}}});
    e.push_back({"normalization", {{"k", 10}, {"R", 4000}}});
    e.push_back({"asymptotics", {}});
    e.push_back({"tj_antisymmetry", {}});
    e.push_back({"harmonicity_s", {}});
    e.push_back({"harmonicity_s", {{"random", 1}}});
    e.push_back({"cr_s", {}});
    e.push_back({"cr_s", {{"random", 1}}});
  }
  return e;
}

/// Runs every entry of the profile; failures are recorded, never thrown.
inline std::vector<Report> run_suite(Profile profile, std::uint64_t seed = kDefaultSeed) {
  std::vector<Report> out;
  for (const auto& entry : suite_entries(profile)) {
    try {
      out.push_back(run_check(entry.check, entry.params, seed));
    } catch (const Error& e) {
      Report r;
      r.name = std::string(entry.check);
      r.params = entry.params;
      r.max_residual = std::numeric_limits<double>::infinity();
      r.threshold = threshold_for(entry.check);
      r.notes = std::string("error: ") + e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::string format_text(const std::vector<Report>& reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-6s %-14s %-14s %8s %8s\n", "check", "status", "max_residual", "threshold",
                "samples", "ms");
  out += line;
  int failed = 0;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-24s %-6s %-14.6e %-14.6e %8ld %8ld\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                  r.max_residual, r.threshold, r.samples, r.runtime_ms);
    out += line;
    if (!r.passed) ++failed;
  }
  out += std::to_string(reports.size() - static_cast<std::size_t>(failed)) + "/" + std::to_string(reports.size()) +
         " passed\n";
  return out;
}

}  // namespace dhilbert::verify
