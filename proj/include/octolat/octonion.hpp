#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>

namespace octolat {

/// Index of a basis unit e_0..e_7. e_0 is the real unit.
struct BasisIndex {
  std::uint8_t value = 0;

  friend constexpr bool operator==(BasisIndex, BasisIndex) = default;
};

constexpr BasisIndex basis_index(int v) {
  return BasisIndex{static_cast<std::uint8_t>(v & 7)};
}

/// Signed basis element: sign * e_{index}. A scalar result is carried as
/// e_0 with the appropriate sign.
struct SignedBasis {
  int sign = 1;
  BasisIndex index{};

  friend constexpr bool operator==(const SignedBasis&, const SignedBasis&) = default;
};

namespace detail {

// e_i * e_j encoded as sign * (index + 1). Transcribed row-by-row from the
// real-octonion multiplication table; the generator relations
// (e_4 = e_1 e_2, e_5 = e_1 e_3, e_6 = e_2 e_3, e_7 = e_4 e_3) are checked
// against this table in the test suite rather than used to build it.
inline constexpr std::int8_t kBasisTable[8][8] = {
    {1, 2, 3, 4, 5, 6, 7, 8},
    {2, -1, 5, 6, -3, -4, -8, 7},
    {3, -5, -1, 7, 2, 8, -4, -6},
    {4, -6, -7, -1, -8, 2, 3, 5},
    {5, 3, -2, 8, -1, -7, 6, -4},
    {6, 4, -8, -2, 7, -1, -5, 3},
    {7, 8, 4, -3, -6, 5, -1, -2},
    {8, -7, 6, -5, 4, -3, 2, -1},
};

}  // namespace detail

/// Product of two basis units, read off the embedded table.
constexpr SignedBasis basis_product(BasisIndex i, BasisIndex j) {
  const std::int8_t entry = detail::kBasisTable[i.value][j.value];
  const int sign = entry < 0 ? -1 : 1;
  const auto index = static_cast<std::uint8_t>((entry < 0 ? -entry : entry) - 1);
  return SignedBasis{sign, BasisIndex{index}};
}

/// Octonion as 8 real coefficients over e_0..e_7; coeff[0] is the real part.
struct Octonion {
  std::array<double, 8> coeff{};

  constexpr Octonion() = default;
  constexpr explicit Octonion(const std::array<double, 8>& c) : coeff(c) {}

  static constexpr Octonion zero() { return Octonion{}; }

  static constexpr Octonion unit(BasisIndex k) {
    Octonion o;
    o.coeff[k.value] = 1.0;
    return o;
  }

  static constexpr Octonion unit(int k) { return unit(basis_index(k)); }

  static constexpr Octonion real(double x) {
    Octonion o;
    o.coeff[0] = x;
    return o;
  }

  constexpr double operator[](int k) const { return coeff[static_cast<std::size_t>(k)]; }
  constexpr double& operator[](int k) { return coeff[static_cast<std::size_t>(k)]; }

  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

  constexpr Octonion& operator+=(const Octonion& o) {
    for (int k = 0; k < 8; ++k) coeff[static_cast<std::size_t>(k)] += o.coeff[static_cast<std::size_t>(k)];
    return *this;
  }

  constexpr Octonion& operator-=(const Octonion& o) {
    for (int k = 0; k < 8; ++k) coeff[static_cast<std::size_t>(k)] -= o.coeff[static_cast<std::size_t>(k)];
    return *this;
  }

  constexpr Octonion& operator*=(double s) {
    for (double& c : coeff) c *= s;
    return *this;
  }
};

constexpr Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
constexpr Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
constexpr Octonion operator*(Octonion a, double s) { return a *= s; }
constexpr Octonion operator*(double s, Octonion a) { return a *= s; }
constexpr Octonion operator-(Octonion a) { return a *= -1.0; }

/// Bilinear extension of basis_product.
constexpr Octonion oct_mul(const Octonion& a, const Octonion& b) {
  Octonion out;
  for (int i = 0; i < 8; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < 8; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      const SignedBasis p = basis_product(basis_index(i), basis_index(j));
      out[p.index.value] += p.sign * ai * bj;
    }
  }
  return out;
}

constexpr Octonion operator*(const Octonion& a, const Octonion& b) { return oct_mul(a, b); }

/// Real part kept, imaginary coefficients negated.
constexpr Octonion oct_conj(const Octonion& a) {
  Octonion out = a;
  for (int k = 1; k < 8; ++k) out[k] = -out[k];
  return out;
}

constexpr double oct_norm_sq(const Octonion& a) {
  double s = 0.0;
  for (double c : a.coeff) s += c * c;
  return s;
}

inline double oct_norm(const Octonion& a) { return std::sqrt(oct_norm_sq(a)); }

/// Largest coefficient magnitude; the residual measure used by the suites.
constexpr double oct_sup_norm(const Octonion& a) {
  double m = 0.0;
  for (double c : a.coeff) {
    const double v = c < 0 ? -c : c;
    if (v > m) m = v;
  }
  return m;
}

/// [a,b,c] = (ab)c - a(bc). Alternating on octonions.
constexpr Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
  return oct_mul(oct_mul(a, b), c) - oct_mul(a, oct_mul(b, c));
}

constexpr bool is_zero(const Octonion& a) {
  for (double c : a.coeff) {
    if (c != 0.0) return false;
  }
  return true;
}

inline std::ostream& operator<<(std::ostream& os, const Octonion& a) {
  bool first = true;
  for (int k = 0; k < 8; ++k) {
    if (a[k] == 0.0) continue;
    if (!first) os << (a[k] < 0 ? " - " : " + ");
    else if (a[k] < 0) os << "-";
    const double mag = a[k] < 0 ? -a[k] : a[k];
    if (mag != 1.0 || k == 0) os << mag;
    if (k > 0) os << "e" << k;
    first = false;
  }
  if (first) os << "0";
  return os;
}

}  // namespace octolat
