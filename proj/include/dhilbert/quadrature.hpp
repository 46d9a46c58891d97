#pragma once

// Deterministic quadrature for the kernel integrals
//     (1/pi) int_0^pi g(theta) trig(nu theta) d theta
// and their s-dimensional analogues over [0, pi]^s.
//
// The production engine is composite Gauss-Legendre with a panel width of at
// most pi / (panels_per_oscillation * max(1, nu)). The error estimate compares
// against one global panel doubling; if that disagrees by more than abs_tol a
// second doubling is tried, then NonConvergence is raised.
//
// The oracles (trapezoid sequences with Richardson extrapolation, i.e. composite
// Simpson and beyond) share nothing with the engine and exist for cross-checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dhilbert/box.hpp"
#include "dhilbert/errors.hpp"

namespace dhilbert::quad {

inline constexpr double pi = std::numbers::pi;

enum class Trig { Cos, Sin };

inline double trig(Trig kind, double x) { return kind == Trig::Cos ? std::cos(x) : std::sin(x); }

struct QuadratureSpec {
  int nodes_per_panel = 12;
  int min_panels = 1;
  double panels_per_oscillation = 4.0;
  double abs_tol = 1e-12;

  void validate() const {
    if (nodes_per_panel < 4) throw InvalidArgument("nodes_per_panel must be >= 4");
    if (min_panels < 1) throw InvalidArgument("min_panels must be >= 1");
    if (!(panels_per_oscillation >= 2.0)) throw InvalidArgument("panels_per_oscillation must be >= 2");
    if (!(abs_tol > 0.0)) throw InvalidArgument("abs_tol must be > 0");
  }
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int order) {
  if (order < 1) throw InvalidArgument("Gauss-Legendre order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
  return rule;
}

/// Composite rule: `panels` equal panels on [a, b], each carrying `rule`.
struct Grid {
  std::vector<double> x;
  std::vector<double> w;
};

inline Grid composite_grid(const GaussRule& rule, double a, double b, int panels) {
  Grid g;
  const std::size_t q = rule.nodes.size();
  g.x.reserve(q * static_cast<std::size_t>(panels));
  g.w.reserve(q * static_cast<std::size_t>(panels));
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (std::size_t i = 0; i < q; ++i) {
      g.x.push_back(mid + 0.5 * width * rule.nodes[i]);
      g.w.push_back(0.5 * width * rule.weights[i]);
    }
  }
  return g;
}

inline int panel_count(const QuadratureSpec& spec, double nu_max) {
  const double need = std::ceil(spec.panels_per_oscillation * std::max(1.0, std::abs(nu_max)));
  return std::max(spec.min_panels, static_cast<int>(need));
}

/// Plain composite Gauss-Legendre of an arbitrary (possibly complex-valued) f on [a, b].
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule) {
  using R = decltype(f(a));
  R acc{};
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += (0.5 * width * rule.weights[i]) * f(mid + 0.5 * width * rule.nodes[i]);
  }
  return acc;
}

namespace detail {

// Rotation-based evaluation of trig((nu0 + i) theta) for consecutive i,
// re-seeded from the library sin/cos every kReseed steps so rounding stays
// at a few ulps.
inline constexpr std::size_t kReseed = 32;

template <class G>
std::vector<double> ladder_pass(G& g, Trig kind, double nu0, std::size_t count, int panels, const GaussRule& rule) {
  std::vector<double> acc(count, 0.0);
  const Grid grid = composite_grid(rule, 0.0, pi, panels);
  for (std::size_t q = 0; q < grid.x.size(); ++q) {
    const double th = grid.x[q];
    const double wg = grid.w[q] * g(th) / pi;
    if (wg == 0.0) continue;
    const double c = std::cos(th), s = std::sin(th);
    for (std::size_t i0 = 0; i0 < count; i0 += kReseed) {
      const double phase = (nu0 + static_cast<double>(i0)) * th;
      double zr = std::cos(phase), zi = std::sin(phase);
      const std::size_t iend = std::min(count, i0 + kReseed);
      if (kind == Trig::Cos) {
        for (std::size_t i = i0; i < iend; ++i) {
          acc[i] += wg * zr;
          const double nr = zr * c - zi * s;
          zi = zr * s + zi * c;
          zr = nr;
        }
      } else {
        for (std::size_t i = i0; i < iend; ++i) {
          acc[i] += wg * zi;
          const double nr = zr * c - zi * s;
          zi = zr * s + zi * c;
          zr = nr;
        }
      }
    }
  }
  return acc;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace detail

/// (1/pi) int_0^pi g(theta) trig((nu0 + i) theta) d theta for i = 0 .. count-1,
/// all on one shared grid sized for the largest frequency.
template <class G>
std::vector<Estimate> integrate_ladder(G&& g, Trig kind, double nu0, std::size_t count, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (nu0 < 0.0) throw InvalidArgument("frequency must be >= 0");
  std::vector<Estimate> out(count);
  if (count == 0) return out;
  const GaussRule rule = gauss_legendre(spec.nodes_per_panel);
  int panels = panel_count(spec, nu0 + static_cast<double>(count - 1));
  std::vector<double> coarse = detail::ladder_pass(g, kind, nu0, count, panels, rule);
  for (int attempt = 0; attempt < 2; ++attempt) {
    panels *= 2;
    std::vector<double> fine = detail::ladder_pass(g, kind, nu0, count, panels, rule);
    const double diff = detail::max_abs_diff(coarse, fine);
    if (std::isfinite(diff) && diff <= spec.abs_tol) {
      for (std::size_t i = 0; i < count; ++i) out[i] = {fine[i], std::abs(fine[i] - coarse[i])};
      return out;
    }
    coarse = std::move(fine);
  }
  throw NonConvergence("oscillatory quadrature did not stabilise within abs_tol=" + std::to_string(spec.abs_tol) +
                       " after two panel doublings (nu up to " + std::to_string(nu0 + static_cast<double>(count - 1)) + ")");
}

template <class G>
Estimate integrate_oscillatory_estimate(G&& g, Trig kind, double nu, const QuadratureSpec& spec = {}) {
  return integrate_ladder(g, kind, nu, 1, spec).front();
}

/// (1/pi) int_0^pi g(theta) trig(nu theta) d theta within spec.abs_tol.
template <class G>
double integrate_oscillatory(G&& g, Trig kind, double nu, const QuadratureSpec& spec = {}) {
  return integrate_oscillatory_estimate(g, kind, nu, spec).value;
}

// ---------------------------------------------------------------------------
// Tensor rule over [0, pi]^s.
//
// The cube is split into s pyramids by which coordinate is largest. On the
// pyramid where theta_p = u is largest, the others are written u * t with
// t in [0, 1] (Jacobian u^{s-1}). Integrands whose only non-smooth point is a
// cone at the origin (rho_s, omega_j) become analytic in (u, t), so
// Gauss-Legendre keeps its spectral accuracy.

/// One trig factor per axis, evaluated at several frequencies.
struct AxisTrig {
  Trig kind = Trig::Cos;
  std::vector<double> nus{0.0};
};

/// Single-frequency axis factor trig(nu * theta_l).
struct AxisFactor {
  Trig kind = Trig::Cos;
  double nu = 0.0;
};

struct TensorResult {
  int s = 1;
  std::size_t channels = 1;
  std::array<std::size_t, kMaxDimension> shape{1, 1, 1};
  std::vector<double> values;  // [channel][i_0][i_1][i_2], row-major
  double error = 0.0;          // largest change under the last panel doubling

  [[nodiscard]] std::size_t per_channel() const { return shape[0] * shape[1] * shape[2]; }

  [[nodiscard]] double at(std::size_t c, const std::array<std::size_t, kMaxDimension>& i) const {
    return values[c * per_channel() + (i[0] * shape[1] + i[1]) * shape[2] + i[2]];
  }
};

namespace detail {

// Contracts axis `axis` of a row-major tensor with matrix m (rows x dims[axis]).
inline std::vector<double> contract(const std::vector<double>& t, std::vector<std::size_t>& dims, std::size_t axis,
                                    const std::vector<double>& m, std::size_t rows) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= dims[a];
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  const std::size_t n = dims[axis];
  std::vector<double> out(outer * rows * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < rows; ++r) {
      double* dst = &out[(o * rows + r) * inner];
      for (std::size_t k = 0; k < n; ++k) {
        const double mk = m[r * n + k];
        const double* src = &t[(o * n + k) * inner];
        for (std::size_t in = 0; in < inner; ++in) dst[in] += mk * src[in];
      }
    }
  }
  dims[axis] = rows;
  return out;
}

template <class G>
std::vector<double> tensor_pass(int s, std::size_t channels, G& g, std::span<const AxisTrig> axes, int panels,
                                const GaussRule& rule, const std::array<std::size_t, kMaxDimension>& shape) {
  const std::size_t per = shape[0] * shape[1] * shape[2];
  std::vector<double> out(channels * per, 0.0);
  const Grid ugrid = composite_grid(rule, 0.0, pi, panels);
  const Grid tgrid = s > 1 ? composite_grid(rule, 0.0, 1.0, panels) : Grid{};
  const std::size_t nt = tgrid.x.size();
  const int m = s - 1;

  std::vector<double> theta(static_cast<std::size_t>(s));
  std::vector<double> buf(channels);

  for (int p = 0; p < s; ++p) {
    std::array<int, kMaxDimension> others{};
    for (int a = 0, l = 0; a < s; ++a)
      if (a != p) others[static_cast<std::size_t>(l++)] = a;

    std::size_t tcount = 1;
    for (int l = 0; l < m; ++l) tcount *= nt;

    for (std::size_t iu = 0; iu < ugrid.x.size(); ++iu) {
      const double u = ugrid.x[iu];
      const double jac = ugrid.w[iu] * std::pow(u, m);

      // Integrand samples G[c][t_0]..[t_{m-1}] with all weights folded in.
      std::vector<double> tens(channels * tcount);
      for (std::size_t tlin = 0; tlin < tcount; ++tlin) {
        double w = jac;
        std::size_t rem = tlin;
        for (int l = m - 1; l >= 0; --l) {
          const std::size_t it = rem % nt;
          rem /= nt;
          theta[static_cast<std::size_t>(others[static_cast<std::size_t>(l)])] = u * tgrid.x[it];
          w *= tgrid.w[it];
        }
        theta[static_cast<std::size_t>(p)] = u;
        g(std::span<const double>(theta), std::span<double>(buf));
        for (std::size_t c = 0; c < channels; ++c) tens[c * tcount + tlin] = w * buf[c];
      }

      std::vector<std::size_t> dims{channels};
      for (int l = 0; l < m; ++l) dims.push_back(nt);
      for (int l = m - 1; l >= 0; --l) {
        const AxisTrig& ax = axes[static_cast<std::size_t>(others[static_cast<std::size_t>(l)])];
        const std::size_t rows = ax.nus.size();
        std::vector<double> mat(rows * nt);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t k = 0; k < nt; ++k) mat[r * nt + k] = trig(ax.kind, ax.nus[r] * u * tgrid.x[k]);
        tens = contract(tens, dims, static_cast<std::size_t>(l + 1), mat, rows);
      }

      const AxisTrig& axp = axes[static_cast<std::size_t>(p)];
      std::vector<double> tp(axp.nus.size());
      for (std::size_t r = 0; r < tp.size(); ++r) tp[r] = trig(axp.kind, axp.nus[r] * u);

      // Scatter [c][i_others...] * trig_p into out[c][i_0][i_1][i_2].
      std::size_t rest = 1;
      for (int l = 0; l < m; ++l) rest *= dims[static_cast<std::size_t>(l + 1)];
      for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t lin = 0; lin < rest; ++lin) {
          const double v = tens[c * rest + lin];
          std::array<std::size_t, kMaxDimension> idx{0, 0, 0};
          std::size_t r2 = lin;
          for (int l = m - 1; l >= 0; --l) {
            const std::size_t d = dims[static_cast<std::size_t>(l + 1)];
            idx[static_cast<std::size_t>(others[static_cast<std::size_t>(l)])] = r2 % d;
            r2 /= d;
          }
          for (std::size_t ip = 0; ip < tp.size(); ++ip) {
            idx[static_cast<std::size_t>(p)] = ip;
            out[c * per + (idx[0] * shape[1] + idx[1]) * shape[2] + idx[2]] += v * tp[ip];
          }
        }
      }
    }
  }
  const double norm = std::pow(pi, -s);
  for (double& v : out) v *= norm;
  return out;
}

}  // namespace detail

/// Multi-channel tensor quadrature:
///   values[c][i] = (1/pi^s) int_{[0,pi]^s} g_c(theta) prod_l trig_l(nu_{l,i_l} theta_l) d theta.
/// `g(theta, out)` writes all channels at one point. s in {1, 2, 3}.
template <class G>
TensorResult integrate_tensor_batch(int s, std::size_t channels, G&& g, std::span<const AxisTrig> axes,
                                    const QuadratureSpec& spec = {}) {
  check_dimension(s);
  spec.validate();
  if (axes.size() != static_cast<std::size_t>(s)) throw InvalidArgument("need exactly one AxisTrig per dimension");
  TensorResult res;
  res.s = s;
  res.channels = channels;
  double nu_max = 0.0;
  for (int a = 0; a < s; ++a) {
    if (axes[static_cast<std::size_t>(a)].nus.empty()) throw InvalidArgument("AxisTrig needs at least one frequency");
    res.shape[static_cast<std::size_t>(a)] = axes[static_cast<std::size_t>(a)].nus.size();
    for (double nu : axes[static_cast<std::size_t>(a)].nus) nu_max = std::max(nu_max, std::abs(nu));
  }
  const GaussRule rule = gauss_legendre(spec.nodes_per_panel);
  int panels = panel_count(spec, nu_max);
  std::vector<double> coarse = detail::tensor_pass(s, channels, g, axes, panels, rule, res.shape);
  for (int attempt = 0; attempt < 2; ++attempt) {
    panels *= 2;
    std::vector<double> fine = detail::tensor_pass(s, channels, g, axes, panels, rule, res.shape);
    const double diff = detail::max_abs_diff(coarse, fine);
    if (std::isfinite(diff) && diff <= spec.abs_tol) {
      res.values = std::move(fine);
      res.error = diff;
      return res;
    }
    coarse = std::move(fine);
  }
  throw NonConvergence("tensor quadrature did not stabilise within abs_tol=" + std::to_string(spec.abs_tol));
}

/// Single integrand, single frequency per axis; g(theta) -> double.
template <class G>
double integrate_tensor(G&& g, std::span<const AxisFactor> factors, const QuadratureSpec& spec = {}) {
  const int s = static_cast<int>(factors.size());
  check_dimension(s);
  std::vector<AxisTrig> axes;
  for (const AxisFactor& f : factors) axes.push_back({f.kind, {f.nu}});
  auto wrapped = [&g](std::span<const double> th, std::span<double> out) { out[0] = g(th); };
  return integrate_tensor_batch(s, 1, wrapped, std::span<const AxisTrig>(axes), spec).values.front();
}

// ---------------------------------------------------------------------------
// Oracles: trapezoid sequence with Richardson extrapolation. Column 1 of the
// table is composite Simpson; later columns remove h^6, h^8, ... terms.

struct OracleResult {
  double value = 0.0;
  double err_est = 0.0;
};

namespace detail {

inline OracleResult richardson(const std::vector<double>& trapezoids) {
  const std::size_t levels = trapezoids.size();
  std::vector<std::vector<double>> r(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    r[i].resize(i + 1);
    r[i][0] = trapezoids[i];
    double factor = 1.0;
    for (std::size_t j = 1; j <= i; ++j) {
      factor *= 4.0;
      r[i][j] = r[i][j - 1] + (r[i][j - 1] - r[i - 1][j - 1]) / (factor - 1.0);
    }
  }
  OracleResult out;
  out.value = r[levels - 1][levels - 1];
  out.err_est = levels > 1 ? std::abs(out.value - r[levels - 2][levels - 2]) : std::abs(out.value);
  return out;
}

}  // namespace detail

/// Independent oracle for (1/pi) int_0^pi g(theta) trig(nu theta) d theta.
template <class G>
OracleResult oracle_integrate(G&& g, Trig kind, double nu, int levels = 8) {
  if (levels < 2) throw InvalidArgument("oracle needs at least two refinement levels");
  const auto base = static_cast<std::size_t>(2.0 * std::ceil(4.0 * std::max(1.0, std::abs(nu))));
  auto h = [&](double th) { return g(th) * trig(kind, nu * th); };
  std::vector<double> traps;
  std::size_t intervals = base;
  double step = pi / static_cast<double>(intervals);
  double sum = 0.5 * (h(0.0) + h(pi));
  for (std::size_t i = 1; i < intervals; ++i) sum += h(static_cast<double>(i) * step);
  traps.push_back(sum * step / pi);
  for (int lev = 1; lev < levels; ++lev) {
    intervals *= 2;
    step = pi / static_cast<double>(intervals);
    for (std::size_t i = 1; i < intervals; i += 2) sum += h(static_cast<double>(i) * step);
    traps.push_back(sum * step / pi);
  }
  return detail::richardson(traps);
}

/// Tensor oracle over [0, pi]^s through the same pyramid map, trapezoid rule on
/// (u, t) with Richardson extrapolation.
template <class G>
OracleResult oracle_integrate_tensor(G&& g, std::span<const AxisFactor> factors, int levels = 6) {
  const int s = static_cast<int>(factors.size());
  check_dimension(s);
  if (levels < 2) throw InvalidArgument("oracle needs at least two refinement levels");
  double nu_max = 0.0;
  for (const AxisFactor& f : factors) nu_max = std::max(nu_max, std::abs(f.nu));
  const auto base = static_cast<std::size_t>(2.0 * std::ceil(4.0 * std::max(1.0, nu_max)));

  std::vector<double> traps;
  std::vector<double> theta(static_cast<std::size_t>(s));
  for (int lev = 0; lev < levels; ++lev) {
    const std::size_t m = base << lev;
    const double hu = pi / static_cast<double>(m);
    const double ht = 1.0 / static_cast<double>(m);
    std::size_t tcount = 1;
    for (int l = 1; l < s; ++l) tcount *= (m + 1);
    double total = 0.0;
    for (int p = 0; p < s; ++p) {
      for (std::size_t iu = 0; iu <= m; ++iu) {
        const double u = static_cast<double>(iu) * hu;
        const double jac = std::pow(u, s - 1);
        if (s > 1 && jac == 0.0) continue;
        const double wu = (iu == 0 || iu == m) ? 0.5 : 1.0;
        for (std::size_t tl = 0; tl < tcount; ++tl) {
          double w = wu * jac;
          std::size_t rem = tl;
          for (int a = s - 1, l = s - 2; a >= 0; --a) {
            if (a == p) continue;
            const std::size_t it = rem % (m + 1);
            rem /= (m + 1);
            theta[static_cast<std::size_t>(a)] = u * static_cast<double>(it) * ht;
            if (it == 0 || it == m) w *= 0.5;
            --l;
          }
          theta[static_cast<std::size_t>(p)] = u;
          double v = g(std::span<const double>(theta));
          for (int a = 0; a < s; ++a)
            v *= trig(factors[static_cast<std::size_t>(a)].kind, factors[static_cast<std::size_t>(a)].nu * theta[static_cast<std::size_t>(a)]);
          total += w * v;
        }
      }
    }
    traps.push_back(total * hu * std::pow(ht, s - 1) / std::pow(pi, s));
  }
  return detail::richardson(traps);
}

}  // namespace dhilbert::quad
