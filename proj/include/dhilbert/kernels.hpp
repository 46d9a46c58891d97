#pragma once

// Kernel families on Z and Z^s, tabulated on symmetric windows with a
// truncation certificate, and an optional on-disk cache.
//
// All 1-d integrals are taken in their real forms on [0, pi]:
//   P_k(n)  = (1/pi) int rho^k cos(n theta)
//   Q_k(n)  = (1/pi) int rho^{k+1/2} sin((n+1/2) theta)        (K_d = Q_0)
//   D(n)    = (1/pi) int (rho^{1/2} - 1) sin((n+1/2) theta)
// and for s > 1 over [0, pi]^s:
//   P^(s)_k(x)      = (1/pi^s) int rho_s^k prod_l cos(x_l theta_l)
//   K^(s)_{k,j}(x)  = (1/pi^s) int omega_j rho_s^{k+1/2} sin((x_j+1/2) theta_j) prod_{l!=j} cos(x_l theta_l)
// K^(s)_{0,j} is the kernel of T_j.
//
// tail_bound is the largest pointwise error, per unit of ||a||_1, made by
// dropping every kernel entry outside the window. For the difference kernel it
// is the full l^1 mass outside the window, which is the stronger statement.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dhilbert/box.hpp"
#include "dhilbert/errors.hpp"
#include "dhilbert/quadrature.hpp"
#include "dhilbert/spectral.hpp"

namespace dhilbert {

enum class KernelKind { Poisson, Conjugate, Hilbert, RieszTitchmarsh, Difference, PoissonS, TjS };

inline const char* kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Poisson: return "poisson";
    case KernelKind::Conjugate: return "conjugate";
    case KernelKind::Hilbert: return "hilbert";
    case KernelKind::RieszTitchmarsh: return "riesz";
    case KernelKind::Difference: return "difference";
    case KernelKind::PoissonS: return "poisson-s";
    case KernelKind::TjS: return "tj-s";
  }
  return "?";
}

inline KernelKind kind_from_name(const std::string& name) {
  for (KernelKind k : {KernelKind::Poisson, KernelKind::Conjugate, KernelKind::Hilbert, KernelKind::RieszTitchmarsh,
                       KernelKind::Difference, KernelKind::PoissonS, KernelKind::TjS})
    if (name == kind_name(k)) return k;
  throw InvalidArgument("unknown kernel kind '" + name + "'");
}

inline bool is_multidimensional(KernelKind kind) { return kind == KernelKind::PoissonS || kind == KernelKind::TjS; }

/// k is the height; j (1-based) is used by TjS only.
struct KernelParams {
  int s = 1;
  int k = 0;
  int j = 1;
};

struct KernelTable {
  KernelKind kind = KernelKind::Poisson;
  int s = 1;
  int k = 0;
  int j = 0;
  long radius = 0;
  double abs_tol = 0.0;
  double tail_bound = 0.0;
  std::vector<double> values;  // window [-R, R]^s, row-major

  [[nodiscard]] Box window() const { return Box::cube(s, -radius, radius); }

  /// Kernel value at x, zero outside the window.
  [[nodiscard]] double at(const Index& x) const {
    for (int a = 0; a < s; ++a)
      if (x[a] < -radius || x[a] > radius) return 0.0;
    return values[window().linear(x)];
  }

  [[nodiscard]] double at(long n) const { return at(Index{n, 0, 0}); }
};

// ---------------------------------------------------------------------------
// Pointwise kernels.

namespace detail {

inline void check_height(int k) {
  if (k < 0) throw InvalidArgument("height k must be >= 0, got " + std::to_string(k));
}

inline auto rho_power(double p) {
  return [p](double th) { return std::pow(spectral::rho(th), p); };
}

// Reflects an antisymmetric index n < 0 to -n-1 >= 0 and returns the sign.
inline double antisym_reflect(long& n) {
  if (n >= 0) return 1.0;
  n = -n - 1;
  return -1.0;
}

}  // namespace detail

inline double poisson_kernel(int k, long n, const quad::QuadratureSpec& spec = {}) {
  detail::check_height(k);
  if (k == 0) return n == 0 ? 1.0 : 0.0;
  return quad::integrate_oscillatory(detail::rho_power(k), quad::Trig::Cos, static_cast<double>(std::abs(n)), spec);
}

inline double conjugate_kernel(int k, long n, const quad::QuadratureSpec& spec = {}) {
  detail::check_height(k);
  const double sign = detail::antisym_reflect(n);
  return sign * quad::integrate_oscillatory(detail::rho_power(k + 0.5), quad::Trig::Sin, n + 0.5, spec);
}

inline double hilbert_kernel(long n, const quad::QuadratureSpec& spec = {}) { return conjugate_kernel(0, n, spec); }

inline double riesz_titchmarsh_kernel(long n) { return 1.0 / (spectral::pi * (static_cast<double>(n) + 0.5)); }

inline double difference_kernel(long n, const quad::QuadratureSpec& spec = {}) {
  const double sign = detail::antisym_reflect(n);
  auto g = [](double th) { return spectral::f(th); };
  return sign * quad::integrate_oscillatory(g, quad::Trig::Sin, n + 0.5, spec);
}

inline double poisson_kernel_s(int s, int k, const Index& x, const quad::QuadratureSpec& spec = {}) {
  check_dimension(s);
  detail::check_height(k);
  std::vector<quad::AxisFactor> factors;
  for (int a = 0; a < s; ++a) factors.push_back({quad::Trig::Cos, static_cast<double>(std::abs(x[a]))});
  auto g = [k](std::span<const double> th) { return std::pow(spectral::rho_s(th), k); };
  return quad::integrate_tensor(g, std::span<const quad::AxisFactor>(factors), spec);
}

/// Conjugate kernel along axis j at height k on Z^s.
inline double conjugate_kernel_s(int s, int k, int j, Index x, const quad::QuadratureSpec& spec = {}) {
  check_dimension(s);
  detail::check_height(k);
  if (j < 1 || j > s) throw InvalidArgument("axis j=" + std::to_string(j) + " outside [1, " + std::to_string(s) + "]");
  const double sign = detail::antisym_reflect(x[j - 1]);
  std::vector<quad::AxisFactor> factors;
  for (int a = 0; a < s; ++a) {
    if (a == j - 1)
      factors.push_back({quad::Trig::Sin, x[a] + 0.5});
    else
      factors.push_back({quad::Trig::Cos, static_cast<double>(std::abs(x[a]))});
  }
  auto g = [k, j](std::span<const double> th) {
    return spectral::omega(th, j) * std::pow(spectral::rho_sqrt_s(th), 2 * k + 1);
  };
  return sign * quad::integrate_tensor(g, std::span<const quad::AxisFactor>(factors), spec);
}

inline double tj_kernel(int s, int j, const Index& x, const quad::QuadratureSpec& spec = {}) {
  return conjugate_kernel_s(s, 0, j, x, spec);
}

/// C_k = (1/pi) int_0^pi |g_k''| with g_k = rho^{k+1/2} - 1, so that
/// |Q_k(n) - 1/(pi(n+1/2))| <= C_k / (n+1/2)^2. C_0 is the constant of the
/// difference kernel (g_0 = f). g_k'' comes from 5-point finite differences of
/// the closed form at step 1e-4, one-sided within two steps of either end.
inline double curvature_constant(int k) {
  detail::check_height(k);
  static std::mutex lock;
  static std::map<int, double> memo;
  const std::lock_guard<std::mutex> guard(lock);
  if (auto it = memo.find(k); it != memo.end()) return it->second;
  const double p = 2.0 * k + 1.0;
  auto g = [p](double th) { return std::pow(spectral::rho_sqrt(th), p); };
  const double h = 1e-4;
  auto second = [&](double th) {
    if (th < 2.0 * h) {
      return (35.0 * g(th) - 104.0 * g(th + h) + 114.0 * g(th + 2 * h) - 56.0 * g(th + 3 * h) + 11.0 * g(th + 4 * h)) /
             (12.0 * h * h);
    }
    if (th > spectral::pi - 2.0 * h) {
      return (35.0 * g(th) - 104.0 * g(th - h) + 114.0 * g(th - 2 * h) - 56.0 * g(th - 3 * h) + 11.0 * g(th - 4 * h)) /
             (12.0 * h * h);
    }
    return (-g(th + 2 * h) + 16.0 * g(th + h) - 30.0 * g(th) + 16.0 * g(th - h) - g(th - 2 * h)) / (12.0 * h * h);
  };
  const quad::GaussRule rule = quad::gauss_legendre(12);
  const double c =
      quad::integrate_panels([&](double th) { return std::abs(second(th)); }, 0.0, spectral::pi, 64, rule) / spectral::pi;
  memo.emplace(k, c);
  return c;
}

// ---------------------------------------------------------------------------
// Cache.

class KernelCache {
 public:
  explicit KernelCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

  [[nodiscard]] std::filesystem::path path_for(KernelKind kind, const KernelParams& p, long radius, double tol) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s_s%d_k%d_j%d_R%ld_tol%.3e.txt", kind_name(kind), p.s, p.k, p.j, radius, tol);
    return dir_ / buf;
  }

  static std::string header_line(KernelKind kind, int s, int k, int j, long radius, double tol, double tail) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "kind=%s s=%d k=%d j=%d R=%ld tol=%.17g tail=%.17g", kind_name(kind), s, k, j, radius,
                  tol, tail);
    return buf;
  }

  /// nullopt if absent; CacheIOError if present but unreadable or inconsistent.
  [[nodiscard]] std::optional<KernelTable> load(KernelKind kind, const KernelParams& p, long radius, double tol) const {
    const auto path = path_for(kind, p, radius, tol);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw CacheIOError("cannot open cache file " + path.string());
    std::string magic, header;
    if (!std::getline(in, magic) || magic != "lattice-kernel v1")
      throw CacheIOError("bad magic line in " + path.string());
    if (!std::getline(in, header)) throw CacheIOError("missing header in " + path.string());

    KernelTable t;
    t.kind = kind;
    t.s = p.s;
    t.k = p.k;
    t.j = kind == KernelKind::TjS ? p.j : 0;
    t.radius = radius;
    t.abs_tol = tol;
    const std::string prefix = header_line(kind, t.s, t.k, t.j, radius, tol, 0.0);
    const std::string stem = prefix.substr(0, prefix.rfind(" tail="));
    if (header.compare(0, stem.size(), stem) != 0 || header.compare(stem.size(), 6, " tail=") != 0)
      throw CacheIOError("header mismatch in " + path.string());
    t.tail_bound = parse_double(header.substr(stem.size() + 6), path);

    const std::size_t expected = window_size(t.s, radius);
    t.values.reserve(expected);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      t.values.push_back(parse_double(line, path));
    }
    if (t.values.size() != expected)
      throw CacheIOError("expected " + std::to_string(expected) + " values in " + path.string() + ", found " +
                         std::to_string(t.values.size()));
    return t;
  }

  /// Writes through a temporary file and renames, so readers never see a partial table.
  void store(const KernelTable& t) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const KernelParams p{t.s, t.k, t.kind == KernelKind::TjS ? t.j : 1};
    const auto path = path_for(t.kind, p, t.radius, t.abs_tol);
    auto tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
      std::FILE* fp = std::fopen(tmp.c_str(), "w");
      if (!fp) throw CacheIOError("cannot write cache file " + tmp.string());
      std::fprintf(fp, "lattice-kernel v1\n%s\n",
                   header_line(t.kind, t.s, t.k, t.kind == KernelKind::TjS ? t.j : 0, t.radius, t.abs_tol, t.tail_bound)
                       .c_str());
      for (double v : t.values) std::fprintf(fp, "%.17g\n", v);
      if (std::fclose(fp) != 0) throw CacheIOError("error closing " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw CacheIOError("cannot rename " + tmp.string() + ": " + ec.message());
  }

  static std::size_t window_size(int s, long radius) {
    std::size_t n = 1;
    for (int a = 0; a < s; ++a) n *= static_cast<std::size_t>(2 * radius + 1);
    return n;
  }

 private:
  static double parse_double(const std::string& text, const std::filesystem::path& path) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
      throw CacheIOError("unparsable number '" + text + "' in " + path.string());
    return v;
  }

  std::filesystem::path dir_;
};

// ---------------------------------------------------------------------------
// Tables.

namespace detail {

inline void validate(KernelKind kind, const KernelParams& p, long radius) {
  if (radius < 0) throw InvalidArgument("radius must be >= 0");
  check_height(p.k);
  if (is_multidimensional(kind)) {
    check_dimension(p.s);
    if (kind == KernelKind::TjS && (p.j < 1 || p.j > p.s))
      throw InvalidArgument("axis j=" + std::to_string(p.j) + " outside [1, " + std::to_string(p.s) + "]");
  } else if (p.s != 1) {
    throw InvalidArgument(std::string(kind_name(kind)) + " is a one-dimensional kernel; use s=1");
  }
}

// Fills an antisymmetric 1-d table from its values at n = 0..R.
inline void fill_antisymmetric(KernelTable& t, const std::vector<double>& nonneg) {
  const long R = t.radius;
  t.values.assign(static_cast<std::size_t>(2 * R + 1), 0.0);
  for (long n = 0; n <= R; ++n) t.values[static_cast<std::size_t>(R + n)] = nonneg[static_cast<std::size_t>(n)];
  for (long n = -R; n < 0; ++n) t.values[static_cast<std::size_t>(R + n)] = -nonneg[static_cast<std::size_t>(-n - 1)];
}

inline double hilbert_type_tail(int k, long R) {
  const double m = static_cast<double>(R) + 0.5;
  return 1.0 / (spectral::pi * m) + curvature_constant(k) / (m * m);
}

inline double max_error(const std::vector<quad::Estimate>& e) {
  double m = 0.0;
  for (const auto& x : e) m = std::max(m, x.error);
  return m;
}

inline KernelTable compute_table(KernelKind kind, const KernelParams& p, long R, const quad::QuadratureSpec& spec) {
  KernelTable t;
  t.kind = kind;
  t.s = p.s;
  t.k = p.k;
  t.j = kind == KernelKind::TjS ? p.j : 0;
  t.radius = R;
  t.abs_tol = spec.abs_tol;
  const auto count = static_cast<std::size_t>(R + 1);

  switch (kind) {
    case KernelKind::Poisson: {
      std::vector<double> half(count, 0.0);
      double qerr = 0.0;
      if (p.k == 0) {
        half[0] = 1.0;
      } else {
        const auto est = quad::integrate_ladder(rho_power(p.k), quad::Trig::Cos, 0.0, count, spec);
        for (std::size_t i = 0; i < count; ++i) half[i] = est[i].value;
        qerr = max_error(est);
      }
      t.values.assign(static_cast<std::size_t>(2 * R + 1), 0.0);
      double sum = 0.0;
      for (long n = -R; n <= R; ++n) {
        const double v = half[static_cast<std::size_t>(std::abs(n))];
        t.values[static_cast<std::size_t>(R + n)] = v;
        sum += v;
      }
      t.tail_bound = std::max(0.0, 1.0 - sum) + static_cast<double>(2 * R + 1) * qerr;
      break;
    }
    case KernelKind::Conjugate:
    case KernelKind::Hilbert: {
      const int k = kind == KernelKind::Hilbert ? 0 : p.k;
      t.k = k;
      const auto est = quad::integrate_ladder(rho_power(k + 0.5), quad::Trig::Sin, 0.5, count, spec);
      std::vector<double> half(count);
      for (std::size_t i = 0; i < count; ++i) half[i] = est[i].value;
      fill_antisymmetric(t, half);
      t.tail_bound = hilbert_type_tail(k, R);
      break;
    }
    case KernelKind::RieszTitchmarsh: {
      std::vector<double> half(count);
      for (std::size_t i = 0; i < count; ++i) half[i] = riesz_titchmarsh_kernel(static_cast<long>(i));
      fill_antisymmetric(t, half);
      t.tail_bound = 1.0 / (spectral::pi * (static_cast<double>(R) + 0.5));
      break;
    }
    case KernelKind::Difference: {
      auto g = [](double th) { return spectral::f(th); };
      const auto est = quad::integrate_ladder(g, quad::Trig::Sin, 0.5, count, spec);
      std::vector<double> half(count);
      for (std::size_t i = 0; i < count; ++i) half[i] = est[i].value;
      fill_antisymmetric(t, half);
      // sum_{|n|>R} C0/(n+1/2)^2 <= C0 (2/(R+1/2) + 1/(R+1/2)^2)
      const double m = static_cast<double>(R) + 0.5;
      t.tail_bound = curvature_constant(0) * (2.0 / m + 1.0 / (m * m));
      break;
    }
    case KernelKind::PoissonS: {
      std::vector<quad::AxisTrig> axes(static_cast<std::size_t>(p.s));
      for (auto& ax : axes) {
        ax.kind = quad::Trig::Cos;
        ax.nus.resize(count);
        for (std::size_t i = 0; i < count; ++i) ax.nus[i] = static_cast<double>(i);
      }
      const int k = p.k;
      auto g = [k](std::span<const double> th, std::span<double> out) { out[0] = std::pow(spectral::rho_s(th), k); };
      quad::TensorResult res;
      if (k > 0) res = quad::integrate_tensor_batch(p.s, 1, g, std::span<const quad::AxisTrig>(axes), spec);
      const Box w = t.window();
      t.values.assign(w.size(), 0.0);
      double sum = 0.0;
      for (std::size_t lin = 0; lin < w.size(); ++lin) {
        const Index x = w.point(lin);
        std::array<std::size_t, kMaxDimension> i{0, 0, 0};
        for (int a = 0; a < p.s; ++a) i[static_cast<std::size_t>(a)] = static_cast<std::size_t>(std::abs(x[a]));
        t.values[lin] = k == 0 ? (lin == w.linear(Index{}) ? 1.0 : 0.0) : res.at(0, i);
        sum += t.values[lin];
      }
      t.tail_bound = std::max(0.0, 1.0 - sum) + static_cast<double>(w.size()) * res.error;
      break;
    }
    case KernelKind::TjS: {
      const int j = p.j;
      std::vector<quad::AxisTrig> axes(static_cast<std::size_t>(p.s));
      for (int a = 0; a < p.s; ++a) {
        auto& ax = axes[static_cast<std::size_t>(a)];
        ax.kind = a == j - 1 ? quad::Trig::Sin : quad::Trig::Cos;
        ax.nus.resize(count);
        for (std::size_t i = 0; i < count; ++i) ax.nus[i] = static_cast<double>(i) + (a == j - 1 ? 0.5 : 0.0);
      }
      const int pw = 2 * p.k + 1;
      auto g = [j, pw](std::span<const double> th, std::span<double> out) {
        out[0] = spectral::omega(th, j) * std::pow(spectral::rho_sqrt_s(th), pw);
      };
      const auto res = quad::integrate_tensor_batch(p.s, 1, g, std::span<const quad::AxisTrig>(axes), spec);
      const Box w = t.window();
      t.values.assign(w.size(), 0.0);
      for (std::size_t lin = 0; lin < w.size(); ++lin) {
        Index x = w.point(lin);
        const double sign = antisym_reflect(x[j - 1]);
        std::array<std::size_t, kMaxDimension> i{0, 0, 0};
        for (int a = 0; a < p.s; ++a) i[static_cast<std::size_t>(a)] = static_cast<std::size_t>(std::abs(x[a]));
        t.values[lin] = sign * res.at(0, i);
      }
      t.tail_bound = std::numeric_limits<double>::infinity();
      break;
    }
  }
  return t;
}

}  // namespace detail

/// Tabulates a kernel on [-R, R]^s. With a cache, a valid file is reused and a
/// missing or corrupt one is (re)written after computing.
inline KernelTable build_table(KernelKind kind, const KernelParams& params, long radius,
                               const quad::QuadratureSpec& spec = {}, const KernelCache* cache = nullptr) {
  spec.validate();
  KernelParams p = params;
  if (!is_multidimensional(kind)) p.s = 1;
  detail::validate(kind, p, radius);
  if (kind != KernelKind::TjS) p.j = 1;
  if (kind == KernelKind::Hilbert || kind == KernelKind::RieszTitchmarsh || kind == KernelKind::Difference) p.k = 0;

  if (cache) {
    try {
      if (auto hit = cache->load(kind, p, radius, spec.abs_tol)) return *hit;
    } catch (const CacheIOError&) {
      // recomputed and overwritten below
    }
  }
  KernelTable t = detail::compute_table(kind, p, radius, spec);
  if (cache) cache->store(t);
  return t;
}

}  // namespace dhilbert
