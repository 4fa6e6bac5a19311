#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "octolat/octonion.hpp"
#include "octolat/weyl.hpp"

namespace octolat {

inline constexpr int kDim = 8;

using LatticePoint = std::array<int, kDim>;

constexpr LatticePoint shifted(LatticePoint p, int axis, int delta) {
  p[static_cast<std::size_t>(axis)] += delta;
  return p;
}

constexpr bool is_zero(double v) { return v == 0.0; }

/// Axis-aligned box of lattice points: origin + [0, extent) per axis.
struct LatticeWindow {
  LatticePoint origin{};
  std::array<int, kDim> extent{};

  constexpr bool contains(const LatticePoint& p) const {
    for (int k = 0; k < kDim; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if (p[i] < origin[i] || p[i] >= origin[i] + extent[i]) return false;
    }
    return true;
  }

  constexpr std::int64_t volume() const {
    std::int64_t v = 1;
    for (int e : extent) v *= e;
    return v;
  }

  /// Symmetric box [-r, r]^8.
  static constexpr LatticeWindow centered(int r) {
    LatticeWindow w;
    for (int k = 0; k < kDim; ++k) {
      w.origin[static_cast<std::size_t>(k)] = -r;
      w.extent[static_cast<std::size_t>(k)] = 2 * r + 1;
    }
    return w;
  }

  /// Visits every point in lexicographic order (axis 0 slowest).
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int e : extent) {
      if (e <= 0) return;
    }
    LatticePoint p = origin;
    for (;;) {
      fn(p);
      int k = kDim - 1;
      for (; k >= 0; --k) {
        const auto i = static_cast<std::size_t>(k);
        if (++p[i] < origin[i] + extent[i]) break;
        p[i] = origin[i];
      }
      if (k < 0) return;
    }
  }
};

/// Half-spaces and slabs of the lattice cut along the last axis.
struct Region {
  enum class Kind { whole, upper, lower, layer };

  Kind kind = Kind::whole;
  int layer = 0;  // upper: m_7 >= layer; lower: m_7 <= layer; layer: m_7 == layer

  static constexpr Region whole() { return {Kind::whole, 0}; }
  static constexpr Region upper(int min_layer) { return {Kind::upper, min_layer}; }
  static constexpr Region lower(int max_layer) { return {Kind::lower, max_layer}; }
  static constexpr Region slab(int at) { return {Kind::layer, at}; }

  constexpr bool contains(const LatticePoint& p) const {
    const int m7 = p[kDim - 1];
    switch (kind) {
      case Kind::whole:
        return true;
      case Kind::upper:
        return m7 >= layer;
      case Kind::lower:
        return m7 <= layer;
      default:
        return m7 == layer;
    }
  }
};

/// Finitely supported function on the scaled lattice h*Z^8, stored sparsely.
/// Iteration order over the support is lexicographic, so every reduction over
/// a GridFunction is deterministic.
template <typename V>
struct GridFunction {
  double h = 1.0;
  std::map<LatticePoint, V> values;

  V at(const LatticePoint& p) const {
    auto it = values.find(p);
    return it == values.end() ? V{} : it->second;
  }

  void set(const LatticePoint& p, V v) {
    if (is_zero(v)) {
      values.erase(p);
    } else {
      values.insert_or_assign(p, std::move(v));
    }
  }

  void add(const LatticePoint& p, const V& v) {
    auto [it, inserted] = values.try_emplace(p, v);
    if (!inserted) {
      it->second += v;
      if (is_zero(it->second)) values.erase(it);
    }
  }

  std::size_t support_size() const { return values.size(); }
};

/// Forward difference along one axis: (f(m + e_j) - f(m)) / h.
template <typename V>
GridFunction<V> fdiff(const GridFunction<V>& f, int axis) {
  GridFunction<V> out;
  out.h = f.h;
  const double inv_h = 1.0 / f.h;
  for (const auto& [p, v] : f.values) {
    out.add(p, v * -inv_h);
    out.add(shifted(p, axis, -1), v * inv_h);
  }
  return out;
}

/// Backward difference along one axis: (f(m) - f(m - e_j)) / h.
template <typename V>
GridFunction<V> bdiff(const GridFunction<V>& f, int axis) {
  GridFunction<V> out;
  out.h = f.h;
  const double inv_h = 1.0 / f.h;
  for (const auto& [p, v] : f.values) {
    out.add(p, v * inv_h);
    out.add(shifted(p, axis, +1), v * -inv_h);
  }
  return out;
}

/// Volume-weighted sum h^8 * sum of f over the region.
template <typename V>
V lattice_sum(const GridFunction<V>& f, Region region = Region::whole()) {
  V acc{};
  for (const auto& [p, v] : f.values) {
    if (region.contains(p)) acc += v;
  }
  double w = 1.0;
  for (int k = 0; k < kDim; ++k) w *= f.h;
  return acc * w;
}

// ============================================================================
// Seeded test data
// ============================================================================

namespace detail {

/// Uniform integer in [-amplitude, amplitude], portable across platforms
/// (plain modulo mapping; the tiny bias is irrelevant for test data).
inline int draw_int(std::mt19937_64& rng, int amplitude) {
  const auto span = static_cast<std::uint64_t>(2 * amplitude + 1);
  return static_cast<int>(rng() % span) - amplitude;
}

inline Octonion draw_octonion(std::mt19937_64& rng, int amplitude) {
  Octonion x;
  for (int k = 0; k < 8; ++k) x[k] = static_cast<double>(draw_int(rng, amplitude));
  return x;
}

}  // namespace detail

/// Octonion-valued test function with integer coefficients in
/// [-amplitude, amplitude]. scatter = 0 fills the whole window; otherwise at
/// most `scatter` distinct points are drawn in it. Fully determined by the
/// seed for a fixed window and amplitude.
inline GridFunction<Octonion> random_gridfn(std::uint64_t seed, const LatticeWindow& window,
                                            int scatter, int amplitude, double h = 1.0) {
  GridFunction<Octonion> f;
  f.h = h;
  std::mt19937_64 rng(seed);
  if (scatter <= 0) {
    window.for_each([&](const LatticePoint& p) { f.set(p, detail::draw_octonion(rng, amplitude)); });
    return f;
  }
  std::set<LatticePoint> points;
  const std::int64_t cap = window.volume();
  while (std::ssize(points) < std::min<std::int64_t>(scatter, cap)) {
    LatticePoint p;
    for (int k = 0; k < kDim; ++k) {
      const auto i = static_cast<std::size_t>(k);
      p[i] = window.origin[i] +
             static_cast<int>(rng() % static_cast<std::uint64_t>(window.extent[i]));
    }
    points.insert(p);
  }
  for (const LatticePoint& p : points) f.set(p, detail::draw_octonion(rng, amplitude));
  return f;
}

/// Same layout driver, but keeps only the real component of each value.
inline GridFunction<Octonion> real_part_only(GridFunction<Octonion> f) {
  for (auto it = f.values.begin(); it != f.values.end();) {
    Octonion real = Octonion::real(it->second[0]);
    if (is_zero(real)) {
      it = f.values.erase(it);
    } else {
      it->second = real;
      ++it;
    }
  }
  return f;
}

}  // namespace octolat
