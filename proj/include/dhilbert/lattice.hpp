#pragma once

// Boundary data on Z^s and fields on Z^s x {k_min..k_max}, with the forward /
// backward differences, the (2s+3)-point Laplacian and the Cauchy-Riemann
// residuals.
//
// A conjugate field V lives at half-integer positions x + e_j/2; it is stored
// at integer x with staggered = true, and every formula below is written in
// those relabelled coordinates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dhilbert/box.hpp"
#include "dhilbert/errors.hpp"

namespace dhilbert {

/// Finitely supported real data on Z^s, stored on its support box.
struct BoundarySequence {
  Box support;
  std::vector<double> values;

  BoundarySequence() = default;
  BoundarySequence(Box box, std::vector<double> vals) : support(box), values(std::move(vals)) { validate(); }

  static BoundarySequence from_values(long offset, std::vector<double> vals) {
    const long n = static_cast<long>(vals.size());
    Box b{1, {offset, 0, 0}, {offset + n - 1, 0, 0}};
    return {b, std::move(vals)};
  }

  static BoundarySequence delta(int s, const Index& at = Index{}) {
    check_dimension(s);
    Box b{s, at, at};
    return {b, {1.0}};
  }

  [[nodiscard]] int dim() const { return support.s; }

  void validate() const {
    check_dimension(support.s);
    if (support.empty() || values.empty()) throw InvalidArgument("boundary sequence must have nonempty support");
    if (values.size() != support.size())
      throw InvalidArgument("boundary sequence has " + std::to_string(values.size()) + " values for a support of " +
                            std::to_string(support.size()));
    for (double v : values)
      if (!std::isfinite(v)) throw InvalidArgument("boundary values must be finite");
  }

  [[nodiscard]] double at(const Index& x) const { return support.contains(x) ? values[support.linear(x)] : 0.0; }

  [[nodiscard]] double norm1() const {
    double acc = 0.0;
    for (double v : values) acc += std::abs(v);
    return acc;
  }

  [[nodiscard]] double norm2() const {
    double acc = 0.0;
    for (double v : values) acc += v * v;
    return std::sqrt(acc);
  }

  [[nodiscard]] double norm_inf() const {
    double acc = 0.0;
    for (double v : values) acc = std::max(acc, std::abs(v));
    return acc;
  }
};

/// Real values on window x [k_min, k_max]; layout [k - k_min][window.linear(x)].
struct LatticeField {
  Box window;
  int k_min = 0;
  int k_max = 0;
  bool staggered = false;
  double truncation_bound = 0.0;  // pointwise bound on kernel truncation error
  std::vector<double> values;

  static LatticeField zeros(const Box& window, int k_min, int k_max, bool staggered = false) {
    check_dimension(window.s);
    if (k_min < 0 || k_max < k_min) throw InvalidArgument("need 0 <= k_min <= k_max");
    if (window.empty()) throw WindowTooSmall("field window is empty");
    LatticeField f;
    f.window = window;
    f.k_min = k_min;
    f.k_max = k_max;
    f.staggered = staggered;
    f.values.assign(window.size() * static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    return f;
  }

  [[nodiscard]] int s() const { return window.s; }
  [[nodiscard]] int heights() const { return k_max - k_min + 1; }

  [[nodiscard]] bool contains(const Index& x, int k) const { return k >= k_min && k <= k_max && window.contains(x); }

  [[nodiscard]] std::size_t offset(const Index& x, int k) const {
    return static_cast<std::size_t>(k - k_min) * window.size() + window.linear(x);
  }

  double& operator()(const Index& x, int k) { return values[offset(x, k)]; }
  [[nodiscard]] double operator()(const Index& x, int k) const { return values[offset(x, k)]; }

  [[nodiscard]] double at(long n, int k) const { return (*this)(Index{n, 0, 0}, k); }

  /// Copies the region (box x [k_lo, k_hi]) into a new field; the region must lie inside.
  [[nodiscard]] LatticeField restricted(const Box& box, int k_lo, int k_hi) const {
    LatticeField out = zeros(box, k_lo, k_hi, staggered);
    out.truncation_bound = truncation_bound;
    for (int k = k_lo; k <= k_hi; ++k) box.for_each([&](const Index& x) { out(x, k) = (*this)(x, k); });
    return out;
  }
};

/// Largest |value| over the part of the field inside region x [k_lo, k_hi]; 0 if they do not meet.
inline double max_abs(const LatticeField& f, const Box& region, int k_lo, int k_hi) {
  const Box b = f.window.intersect(region);
  double m = 0.0;
  if (b.empty()) return m;
  for (int k = std::max(k_lo, f.k_min); k <= std::min(k_hi, f.k_max); ++k)
    b.for_each([&](const Index& x) { m = std::max(m, std::abs(f(x, k))); });
  return m;
}

inline double max_abs(const LatticeField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

inline constexpr int kVertical = -1;

enum class Direction { Forward, Backward };

/// Forward difference F(x + e) - F(x) or backward F(x) - F(x - e) along a
/// horizontal axis (0-based) or kVertical. The window shrinks by one on the
/// side that would need data from outside.
inline LatticeField difference(const LatticeField& f, int axis, Direction dir) {
  if (axis != kVertical && (axis < 0 || axis >= f.s()))
    throw InvalidArgument("axis " + std::to_string(axis) + " out of range");
  Box w = f.window;
  int k_lo = f.k_min, k_hi = f.k_max;
  Index e{};
  int ek = 0;
  if (axis == kVertical) {
    ek = 1;
    if (dir == Direction::Forward)
      --k_hi;
    else
      ++k_lo;
  } else {
    e = unit_vector(axis);
    if (dir == Direction::Forward)
      --w.hi[axis];
    else
      ++w.lo[axis];
  }
  if (w.empty() || k_hi < k_lo) throw WindowTooSmall("field too small for a difference along this axis");
  LatticeField out = LatticeField::zeros(w, k_lo, k_hi, f.staggered);
  out.truncation_bound = 2.0 * f.truncation_bound;
  for (int k = k_lo; k <= k_hi; ++k) {
    w.for_each([&](const Index& x) {
      out(x, k) = dir == Direction::Forward ? f(x + e, k + ek) - f(x, k) : f(x, k) - f(x - e, k - ek);
    });
  }
  return out;
}

/// Sum_j [F(x+e_j) + F(x-e_j)] + F(x,k+1) + F(x,k-1) - (2s+2) F(x,k) on the
/// interior: window shrunk by one per axis, k in [k_min+1, k_max-1].
inline LatticeField laplacian_residual(const LatticeField& f) {
  const int s = f.s();
  const Box w = f.window.grown(-1);
  const int k_lo = f.k_min + 1, k_hi = f.k_max - 1;
  if (w.empty() || k_hi < k_lo) throw WindowTooSmall("laplacian needs a margin of one cell and at least three heights");
  LatticeField out = LatticeField::zeros(w, k_lo, k_hi, f.staggered);
  out.truncation_bound = (2.0 * s + 4.0) * f.truncation_bound;
  for (int k = k_lo; k <= k_hi; ++k) {
    w.for_each([&](const Index& x) {
      double acc = f(x, k + 1) + f(x, k - 1) - (2.0 * s + 2.0) * f(x, k);
      for (int a = 0; a < s; ++a) {
        const Index e = unit_vector(a);
        acc += f(x + e, k) + f(x - e, k);
      }
      out(x, k) = acc;
    });
  }
  return out;
}

namespace detail {

inline void require_pair(const LatticeField& u, const LatticeField& v) {
  if (!(u.window == v.window) || u.k_min != v.k_min || u.k_max != v.k_max)
    throw WindowMismatch("U and V must share window and height range");
  if (u.staggered || !v.staggered) throw WindowMismatch("expected U unstaggered and V staggered");
}

}  // namespace detail

struct CrResiduals {
  LatticeField r1;  // dh+ U - dk- V,  k in [k_min+1, k_max]
  LatticeField r2;  // dk+ U + dh- V,  k in [k_min, k_max-1]
};

/// One-dimensional Cauchy-Riemann residuals in relabelled coordinates.
inline CrResiduals cr_residuals(const LatticeField& u, const LatticeField& v) {
  detail::require_pair(u, v);
  if (u.s() != 1) throw InvalidArgument("cr_residuals is one-dimensional; use cr_residuals_s");
  Box w1 = u.window;
  --w1.hi[0];
  Box w2 = u.window;
  ++w2.lo[0];
  if (w1.empty() || u.k_max <= u.k_min) throw WindowTooSmall("fields too small for Cauchy-Riemann residuals");
  CrResiduals r{LatticeField::zeros(w1, u.k_min + 1, u.k_max), LatticeField::zeros(w2, u.k_min, u.k_max - 1)};
  const Index e = unit_vector(0);
  for (int k = u.k_min + 1; k <= u.k_max; ++k)
    w1.for_each([&](const Index& x) { r.r1(x, k) = (u(x + e, k) - u(x, k)) - (v(x, k) - v(x, k - 1)); });
  for (int k = u.k_min; k <= u.k_max - 1; ++k)
    w2.for_each([&](const Index& x) { r.r2(x, k) = (u(x, k + 1) - u(x, k)) + (v(x, k) - v(x - e, k)); });
  const double tb = 2.0 * (u.truncation_bound + v.truncation_bound);
  r.r1.truncation_bound = r.r2.truncation_bound = tb;
  return r;
}

struct CrResidualsS {
  LatticeField div;                // dk+ U + sum_j dxj- V_j
  std::vector<LatticeField> grad;  // dxj+ U - dk- V_j
  std::vector<LatticeField> curl;  // dxj+ V_l - dxl+ V_j for j < l, in (0,1), (0,2), (1,2) order
  std::vector<std::pair<int, int>> curl_axes;
};

inline CrResidualsS cr_residuals_s(const LatticeField& u, const std::vector<LatticeField>& vs) {
  const int s = u.s();
  if (static_cast<int>(vs.size()) != s)
    throw WindowMismatch("need one conjugate field per horizontal axis, got " + std::to_string(vs.size()));
  for (const auto& v : vs) detail::require_pair(u, v);
  if (u.k_max <= u.k_min) throw WindowTooSmall("fields need at least two heights");

  CrResidualsS r;
  Box wd = u.window;
  for (int a = 0; a < s; ++a) ++wd.lo[a];
  if (wd.empty()) throw WindowTooSmall("fields too small for Cauchy-Riemann residuals");
  r.div = LatticeField::zeros(wd, u.k_min, u.k_max - 1);
  for (int k = u.k_min; k <= u.k_max - 1; ++k) {
    wd.for_each([&](const Index& x) {
      double acc = u(x, k + 1) - u(x, k);
      for (int a = 0; a < s; ++a) acc += vs[a](x, k) - vs[a](x - unit_vector(a), k);
      r.div(x, k) = acc;
    });
  }
  for (int j = 0; j < s; ++j) {
    Box wg = u.window;
    --wg.hi[j];
    LatticeField g = LatticeField::zeros(wg, u.k_min + 1, u.k_max);
    const Index e = unit_vector(j);
    for (int k = u.k_min + 1; k <= u.k_max; ++k)
      wg.for_each([&](const Index& x) { g(x, k) = (u(x + e, k) - u(x, k)) - (vs[j](x, k) - vs[j](x, k - 1)); });
    r.grad.push_back(std::move(g));
  }
  for (int j = 0; j < s; ++j) {
    for (int l = j + 1; l < s; ++l) {
      Box wc = u.window;
      --wc.hi[j];
      --wc.hi[l];
      LatticeField c = LatticeField::zeros(wc, u.k_min, u.k_max);
      const Index ej = unit_vector(j), el = unit_vector(l);
      for (int k = u.k_min; k <= u.k_max; ++k)
        wc.for_each([&](const Index& x) {
          c(x, k) = (vs[l](x + ej, k) - vs[l](x, k)) - (vs[j](x + el, k) - vs[j](x, k));
        });
      r.curl.push_back(std::move(c));
      r.curl_axes.emplace_back(j, l);
    }
  }
  double tb = u.truncation_bound;
  for (const auto& v : vs) tb += v.truncation_bound;
  r.div.truncation_bound = 2.0 * tb;
  for (auto& g : r.grad) g.truncation_bound = 2.0 * tb;
  for (auto& c : r.curl) c.truncation_bound = 2.0 * tb;
  return r;
}

}  // namespace dhilbert
