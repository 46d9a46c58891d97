#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>

#include "dhilbert/errors.hpp"

namespace dhilbert {

inline constexpr int kMaxDimension = 3;

/// Lattice point of Z^s, s <= 3. Unused trailing coordinates are zero.
using Index = std::array<long, kMaxDimension>;

inline void check_dimension(int s) {
  if (s < 1) throw InvalidArgument("dimension must be >= 1, got " + std::to_string(s));
  if (s > kMaxDimension)
    throw DimensionTooLarge("dimension " + std::to_string(s) + " exceeds the supported maximum of 3");
}

/// Closed integer box [lo, hi] in Z^s, traversed in row-major order (axis 0 slowest).
struct Box {
  int s = 1;
  Index lo{};
  Index hi{};

  static Box cube(int s, long lo, long hi) {
    check_dimension(s);
    Box b{s, {}, {}};
    for (int a = 0; a < std::min(s, kMaxDimension); ++a) {
      b.lo[a] = lo;
      b.hi[a] = hi;
    }
    return b;
  }

  [[nodiscard]] long extent(int axis) const { return hi[axis] - lo[axis] + 1; }

  [[nodiscard]] bool empty() const {
    for (int a = 0; a < s; ++a)
      if (hi[a] < lo[a]) return true;
    return false;
  }

  [[nodiscard]] std::size_t size() const {
    if (empty()) return 0;
    std::size_t n = 1;
    for (int a = 0; a < s; ++a) n *= static_cast<std::size_t>(extent(a));
    return n;
  }

  [[nodiscard]] bool contains(const Index& x) const {
    for (int a = 0; a < s; ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }

  [[nodiscard]] std::size_t linear(const Index& x) const {
    std::size_t idx = 0;
    for (int a = 0; a < s; ++a) idx = idx * static_cast<std::size_t>(extent(a)) + static_cast<std::size_t>(x[a] - lo[a]);
    return idx;
  }

  [[nodiscard]] Index point(std::size_t linear_index) const {
    Index x{};
    for (int a = s - 1; a >= 0; --a) {
      const auto e = static_cast<std::size_t>(extent(a));
      x[a] = lo[a] + static_cast<long>(linear_index % e);
      linear_index /= e;
    }
    return x;
  }

  /// Box grown by `by` on both sides of every axis (negative values shrink it).
  [[nodiscard]] Box grown(long by) const {
    Box b = *this;
    for (int a = 0; a < s; ++a) {
      b.lo[a] -= by;
      b.hi[a] += by;
    }
    return b;
  }

  [[nodiscard]] Box intersect(const Box& o) const {
    Box b = *this;
    for (int a = 0; a < s; ++a) {
      b.lo[a] = std::max(lo[a], o.lo[a]);
      b.hi[a] = std::min(hi[a], o.hi[a]);
    }
    return b;
  }

  template <class F>
  void for_each(F&& f) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) f(point(i));
  }

  friend bool operator==(const Box& a, const Box& b) {
    if (a.s != b.s) return false;
    for (int i = 0; i < a.s; ++i)
      if (a.lo[i] != b.lo[i] || a.hi[i] != b.hi[i]) return false;
    return true;
  }
};

inline Index unit_vector(int axis) {
  Index e{};
  e[axis] = 1;
  return e;
}

inline Index operator+(Index a, const Index& b) {
  for (int i = 0; i < kMaxDimension; ++i) a[i] += b[i];
  return a;
}

inline Index operator-(Index a, const Index& b) {
  for (int i = 0; i < kMaxDimension; ++i) a[i] -= b[i];
  return a;
}

}  // namespace dhilbert
