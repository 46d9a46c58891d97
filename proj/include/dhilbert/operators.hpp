#pragma once

// Harmonic and conjugate extensions of boundary data and the boundary
// transforms H_d, H+, H_d - H+ and T_j, by truncated kernel convolution; plus
// the periodic multiplier path (sample the symbol on the N-point grid, FFT).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dhilbert/box.hpp"
#include "dhilbert/errors.hpp"
#include "dhilbert/fft.hpp"
#include "dhilbert/kernels.hpp"
#include "dhilbert/lattice.hpp"
#include "dhilbert/quadrature.hpp"
#include "dhilbert/spectral.hpp"

namespace dhilbert {

struct TransformOptions {
  double tol = 1e-8;       // allowed truncation error, absolute
  long margin = 64;        // output window = support grown by margin
  long max_radius = 65536;
  quad::QuadratureSpec spec{};
  const KernelCache* cache = nullptr;
};

struct TransformResult {
  BoundarySequence output;
  long radius = 0;
  double truncation_bound = 0.0;
};

/// Largest |x - y| over x in `window`, y in `support`, per axis.
inline long covering_radius(const Box& window, const Box& support) {
  long r = 0;
  for (int a = 0; a < window.s; ++a) {
    r = std::max(r, std::abs(window.hi[a] - support.lo[a]));
    r = std::max(r, std::abs(window.lo[a] - support.hi[a]));
  }
  return r;
}

/// (K * a)(x) for x in `window`, using only the entries stored in the table.
inline TransformResult apply_table(const BoundarySequence& a, const KernelTable& t, const Box& window) {
  if (a.dim() != t.s || window.s != t.s) throw InvalidArgument("kernel and data dimensions differ");
  TransformResult r;
  r.radius = t.radius;
  std::vector<double> out(window.size(), 0.0);
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Index x = window.point(i);
    double acc = 0.0;
    for (std::size_t m = 0; m < a.values.size(); ++m) {
      const double am = a.values[m];
      if (am != 0.0) acc += t.at(x - a.support.point(m)) * am;
    }
    out[i] = acc;
  }
  r.output = BoundarySequence(window, std::move(out));
  r.truncation_bound = covering_radius(window, a.support) <= t.radius ? 0.0 : t.tail_bound * a.norm1();
  return r;
}

namespace detail {

inline double closed_form_tail(KernelKind kind, int k, long radius) {
  const double m = static_cast<double>(radius) + 0.5;
  switch (kind) {
    case KernelKind::Conjugate: return hilbert_type_tail(k, radius);
    case KernelKind::Hilbert: return hilbert_type_tail(0, radius);
    case KernelKind::RieszTitchmarsh: return 1.0 / (spectral::pi * m);
    case KernelKind::Difference: return curvature_constant(0) * (2.0 / m + 1.0 / (m * m));
    default: return std::numeric_limits<double>::infinity();
  }
}

// Smallest radius from {cover} u {64, 128, ...} that is exact on the window or
// whose certified tail meets the tolerance.
inline long select_radius(KernelKind kind, int k, const BoundarySequence& a, const Box& window,
                          const TransformOptions& opt) {
  const long cover = covering_radius(window, a.support);
  const double mass = a.norm1();
  for (long r = 64; r < cover && r <= opt.max_radius; r *= 2)
    if (closed_form_tail(kind, k, r) * mass <= opt.tol) return r;
  if (cover <= opt.max_radius) return cover;
  std::ostringstream msg;
  msg << "no kernel radius <= " << opt.max_radius << " meets tolerance " << opt.tol << " (exact coverage needs "
      << cover << ")";
  throw RadiusInsufficient(msg.str());
}

inline TransformResult transform_1d(KernelKind kind, const BoundarySequence& a, const TransformOptions& opt) {
  a.validate();
  if (a.dim() != 1) throw InvalidArgument("this transform acts on one-dimensional data");
  if (opt.margin < 0) throw InvalidArgument("margin must be >= 0");
  const Box window = a.support.grown(opt.margin);
  const long r = select_radius(kind, 0, a, window, opt);
  const KernelTable t = build_table(kind, KernelParams{1, 0, 1}, r, opt.spec, opt.cache);
  return apply_table(a, t, window);
}

}  // namespace detail

inline TransformResult hilbert_transform(const BoundarySequence& a, const TransformOptions& opt = {}) {
  return detail::transform_1d(KernelKind::Hilbert, a, opt);
}

inline TransformResult riesz_titchmarsh_transform(const BoundarySequence& a, const TransformOptions& opt = {}) {
  return detail::transform_1d(KernelKind::RieszTitchmarsh, a, opt);
}

/// (H_d - H+) a, i.e. convolution with the difference kernel.
inline TransformResult difference_transform(const BoundarySequence& a, const TransformOptions& opt = {}) {
  return detail::transform_1d(KernelKind::Difference, a, opt);
}

/// T_j a on Z^s, s = a.dim(). No tail certificate is available, so the kernel
/// radius always covers the output window.
inline TransformResult tj_transform(int j, const BoundarySequence& a, const TransformOptions& opt = {}) {
  a.validate();
  const int s = a.dim();
  if (j < 1 || j > s) throw InvalidArgument("axis j=" + std::to_string(j) + " outside [1, " + std::to_string(s) + "]");
  if (opt.margin < 0) throw InvalidArgument("margin must be >= 0");
  const Box window = a.support.grown(opt.margin);
  const long r = detail::select_radius(KernelKind::TjS, 0, a, window, opt);
  const KernelTable t = build_table(KernelKind::TjS, KernelParams{s, 0, j}, r, opt.spec, opt.cache);
  return apply_table(a, t, window);
}

// ---------------------------------------------------------------------------
// Extensions. The kernel radius always covers window - support, so the fields
// carry no truncation error beyond quadrature.

struct ExtensionOptions {
  int k_max = 1;
  long margin = 0;
  quad::QuadratureSpec spec{};
  const KernelCache* cache = nullptr;
};

namespace detail {

inline void check_extension(const BoundarySequence& a, const ExtensionOptions& opt) {
  a.validate();
  if (opt.k_max < 1) throw InvalidArgument("k_max must be >= 1");
  if (opt.margin < 0) throw InvalidArgument("margin must be >= 0");
}

inline void fill_row(LatticeField& f, int k, const BoundarySequence& a, const KernelTable& t) {
  const TransformResult r = apply_table(a, t, f.window);
  for (std::size_t i = 0; i < f.window.size(); ++i) f.values[f.offset(f.window.point(i), k)] = r.output.values[i];
}

}  // namespace detail

/// U(x, k) = sum_y P^(s)_k(x - y) a(y) for k = 0..k_max on supp(a) grown by margin.
inline LatticeField extend_poisson_s(const BoundarySequence& a, const ExtensionOptions& opt = {}) {
  detail::check_extension(a, opt);
  const int s = a.dim();
  const Box window = a.support.grown(opt.margin);
  const long r = covering_radius(window, a.support);
  LatticeField u = LatticeField::zeros(window, 0, opt.k_max, false);
  window.for_each([&](const Index& x) { u(x, 0) = a.at(x); });
  for (int k = 1; k <= opt.k_max; ++k) {
    const KernelTable t = s == 1 ? build_table(KernelKind::Poisson, {1, k, 1}, r, opt.spec, opt.cache)
                                 : build_table(KernelKind::PoissonS, {s, k, 1}, r, opt.spec, opt.cache);
    detail::fill_row(u, k, a, t);
  }
  return u;
}

inline LatticeField extend_poisson(const BoundarySequence& a, const ExtensionOptions& opt = {}) {
  if (a.dim() != 1) throw InvalidArgument("extend_poisson takes one-dimensional data; use extend_poisson_s");
  return extend_poisson_s(a, opt);
}

/// V(n + 1/2, k) = sum_m Q_k(n - m) a_m, stored at n; row 0 is H_d a.
inline LatticeField extend_conjugate(const BoundarySequence& a, const ExtensionOptions& opt = {}) {
  detail::check_extension(a, opt);
  if (a.dim() != 1) throw InvalidArgument("extend_conjugate takes one-dimensional data; use extend_conjugate_s");
  const Box window = a.support.grown(opt.margin);
  const long r = covering_radius(window, a.support);
  LatticeField v = LatticeField::zeros(window, 0, opt.k_max, true);
  for (int k = 0; k <= opt.k_max; ++k)
    detail::fill_row(v, k, a, build_table(KernelKind::Conjugate, {1, k, 1}, r, opt.spec, opt.cache));
  return v;
}

/// V_1 .. V_s on Z^s x N; V_j is staggered along axis j and V_j(., 0) = T_j a.
inline std::vector<LatticeField> extend_conjugate_s(const BoundarySequence& a, const ExtensionOptions& opt = {}) {
  detail::check_extension(a, opt);
  const int s = a.dim();
  const Box window = a.support.grown(opt.margin);
  const long r = covering_radius(window, a.support);
  std::vector<LatticeField> vs;
  for (int j = 1; j <= s; ++j) {
    LatticeField v = LatticeField::zeros(window, 0, opt.k_max, true);
    for (int k = 0; k <= opt.k_max; ++k)
      detail::fill_row(v, k, a, build_table(KernelKind::TjS, {s, k, j}, r, opt.spec, opt.cache));
    vs.push_back(std::move(v));
  }
  return vs;
}

// ---------------------------------------------------------------------------
// Periodic multiplier path.

enum class SymbolId { Poisson, Conjugate, Hilbert, RieszTitchmarsh, Difference, PoissonS, Tj, Riesz };

struct Symbol {
  SymbolId id = SymbolId::Hilbert;
  int k = 0;
  int j = 1;

  [[nodiscard]] spectral::complex operator()(std::span<const double> th) const {
    using spectral::complex;
    const double t = th[0];
    switch (id) {
      case SymbolId::Poisson: return std::pow(spectral::rho(t), k);
      case SymbolId::Conjugate:
        return complex(0.0, -spectral::sgn(t)) * std::pow(spectral::rho_sqrt(t), 2 * k + 1) * std::polar(1.0, 0.5 * t);
      case SymbolId::Hilbert: return spectral::multiplier_hd(t);
      case SymbolId::RieszTitchmarsh: return spectral::multiplier_hplus(t);
      case SymbolId::Difference: return spectral::multiplier_hd(t) - spectral::multiplier_hplus(t);
      case SymbolId::PoissonS: return std::pow(spectral::rho_s(th), k);
      case SymbolId::Tj: return spectral::multiplier_tj(th, j);
      case SymbolId::Riesz: return spectral::multiplier_rj(th, j);
    }
    return 0.0;
  }
};

/// Real data on the discrete torus (Z / N)^s, stored row-major.
struct PeriodicSequence {
  int s = 1;
  std::size_t period = 0;
  std::vector<double> values;

  void validate() const {
    check_dimension(s);
    if (period < 2) throw InvalidArgument("period must be >= 2");
    std::size_t total = 1;
    for (int a = 0; a < s; ++a) total *= period;
    if (values.size() != total) throw InvalidArgument("periodic data must have period^s values");
  }

  [[nodiscard]] std::size_t index(const Index& x) const {
    std::size_t idx = 0;
    const auto n = static_cast<long>(period);
    for (int a = 0; a < s; ++a) idx = idx * period + static_cast<std::size_t>(((x[a] % n) + n) % n);
    return idx;
  }

  [[nodiscard]] double at(const Index& x) const { return values[index(x)]; }
};

/// Bin l of an N-point grid as an angle in (-pi, pi].
inline double bin_angle(std::size_t l, std::size_t n) {
  const double t = 2.0 * spectral::pi * static_cast<double>(l) / static_cast<double>(n);
  return 2 * l <= n ? t : t - 2.0 * spectral::pi;
}

/// Wraps finitely supported data onto the torus of period N (entries that
/// collide are added).
inline PeriodicSequence embed_periodic(const BoundarySequence& a, std::size_t period) {
  a.validate();
  PeriodicSequence p{a.dim(), period, {}};
  std::size_t total = 1;
  for (int i = 0; i < p.s; ++i) total *= period;
  p.values.assign(total, 0.0);
  p.validate();
  for (std::size_t m = 0; m < a.values.size(); ++m) p.values[p.index(a.support.point(m))] += a.values[m];
  return p;
}

struct PeriodicResult {
  PeriodicSequence output;
  double max_imag = 0.0;  // largest discarded imaginary part
  double max_symbol = 0.0;  // max_l |m(theta_l)|
};

/// Forward FFT, multiply bin l by m(theta_l), inverse FFT, keep the real part.
inline PeriodicResult multiplier_apply_periodic(const PeriodicSequence& a, const Symbol& m) {
  a.validate();
  fft::check_length(a.period);
  const bool multi = m.id == SymbolId::PoissonS || m.id == SymbolId::Tj || m.id == SymbolId::Riesz;
  if (!multi && a.s != 1) throw InvalidArgument("one-dimensional symbol applied to multi-dimensional data");
  if ((m.id == SymbolId::Tj || m.id == SymbolId::Riesz) && (m.j < 1 || m.j > a.s))
    throw InvalidArgument("axis j outside [1, s]");

  std::vector<fft::complex> buf(a.values.begin(), a.values.end());
  fft::transform_nd(buf, a.period, a.s, false);
  PeriodicResult r;
  std::array<double, kMaxDimension> th{};
  for (std::size_t lin = 0; lin < buf.size(); ++lin) {
    std::size_t rem = lin;
    for (int ax = a.s - 1; ax >= 0; --ax) {
      th[static_cast<std::size_t>(ax)] = bin_angle(rem % a.period, a.period);
      rem /= a.period;
    }
    const auto mv = m(std::span<const double>(th.data(), static_cast<std::size_t>(a.s)));
    r.max_symbol = std::max(r.max_symbol, std::abs(mv));
    buf[lin] *= mv;
  }
  fft::transform_nd(buf, a.period, a.s, true);
  r.output = PeriodicSequence{a.s, a.period, std::vector<double>(buf.size())};
  for (std::size_t i = 0; i < buf.size(); ++i) {
    r.output.values[i] = buf[i].real();
    r.max_imag = std::max(r.max_imag, std::abs(buf[i].imag()));
  }
  return r;
}

/// |K_per(j) - K(j)| for the antisymmetric 1-d kernels, where K_per is the
/// N-periodisation the sampled symbol produces. For H+ this is exact
/// (K_per(j) = cot(pi (j+1/2) / N) / N); the others add C (pi^2/3) / (N - |j+1/2|)^2
/// for their l^1 part. Needs |j + 1/2| < N.
inline double periodization_bound(const Symbol& m, std::size_t period, long j) {
  const double n = static_cast<double>(period);
  const double x = static_cast<double>(j) + 0.5;
  if (std::abs(x) >= n) throw InvalidArgument("offset outside one period");
  const double riesz = std::abs(1.0 / (n * std::tan(spectral::pi * x / n)) - 1.0 / (spectral::pi * x));
  const double wrap = (spectral::pi * spectral::pi / 3.0) / ((n - std::abs(x)) * (n - std::abs(x)));
  switch (m.id) {
    case SymbolId::RieszTitchmarsh: return riesz;
    case SymbolId::Hilbert: return riesz + curvature_constant(0) * wrap;
    case SymbolId::Difference: return curvature_constant(0) * wrap;
    case SymbolId::Conjugate: return riesz + curvature_constant(m.k) * wrap;
    default: throw InvalidArgument("no closed-form periodisation bound for this symbol");
  }
}

/// For P_k, every wrapped entry lies at distance >= N - |j| from the origin,
/// so the Poisson mass outside a table of radius <= N - |j| - 1 bounds it.
inline double poisson_periodization_bound(const KernelTable& t, std::size_t period, long j) {
  if (t.kind != KernelKind::Poisson) throw InvalidArgument("expected a Poisson table");
  if (t.radius > static_cast<long>(period) - std::abs(j) - 1)
    throw InvalidArgument("table radius too large for this offset");
  return t.tail_bound;
}

}  // namespace dhilbert
