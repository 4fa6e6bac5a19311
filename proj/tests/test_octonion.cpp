#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <random>
#include <string>

#include "octolat/octonion.hpp"

using namespace octolat;

namespace {

// The printed multiplication table, transcribed literally row by row (rows
// are left factors). Kept as text so it can be eyeballed against the source.
constexpr const char* kPrintedTable[8][8] = {
    {"1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"},
    {"e1", "-1", "e4", "e5", "-e2", "-e3", "-e7", "e6"},
    {"e2", "-e4", "-1", "e6", "e1", "e7", "-e3", "-e5"},
    {"e3", "-e5", "-e6", "-1", "-e7", "e1", "e2", "e4"},
    {"e4", "e2", "-e1", "e7", "-1", "-e6", "e5", "-e3"},
    {"e5", "e3", "-e7", "-e1", "e6", "-1", "-e4", "e2"},
    {"e6", "e7", "e3", "-e2", "-e5", "e4", "-1", "-e1"},
    {"e7", "-e6", "e5", "-e4", "e3", "-e2", "e1", "-1"},
};

SignedBasis parse_entry(const char* s) {
  SignedBasis out;
  if (*s == '-') {
    out.sign = -1;
    ++s;
  }
  if (*s == '1') {
    out.index = basis_index(0);
  } else {
    out.index = basis_index(s[1] - '0');
  }
  return out;
}

Octonion seeded_octonion(std::mt19937_64& rng) {
  Octonion x;
  for (int k = 0; k < 8; ++k) x[k] = static_cast<double>(static_cast<int>(rng() % 19) - 9);
  return x;
}

}  // namespace

TEST_CASE("all 64 basis products match the printed table") {
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const SignedBasis expected = parse_entry(kPrintedTable[i][j]);
      const SignedBasis got = basis_product(basis_index(i), basis_index(j));
      INFO("e" << i << " * e" << j);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("products follow the seven oriented lines") {
  // Independent reconstruction: for each oriented line (a,b,c) the cyclic
  // products are ab=c, bc=a, ca=b, and reversals flip sign.
  constexpr int lines[7][3] = {{1, 2, 4}, {1, 3, 5}, {2, 3, 6}, {4, 3, 7},
                               {6, 1, 7}, {2, 5, 7}, {5, 4, 6}};
  std::array<std::array<SignedBasis, 8>, 8> expected{};
  for (int i = 0; i < 8; ++i) {
    expected[0][static_cast<std::size_t>(i)] = SignedBasis{1, basis_index(i)};
    expected[static_cast<std::size_t>(i)][0] = SignedBasis{1, basis_index(i)};
    if (i > 0) expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        SignedBasis{-1, basis_index(0)};
  }
  expected[0][0] = SignedBasis{1, basis_index(0)};
  for (const auto& line : lines) {
    for (int r = 0; r < 3; ++r) {
      const int a = line[r], b = line[(r + 1) % 3], c = line[(r + 2) % 3];
      expected[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          SignedBasis{1, basis_index(c)};
      expected[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
          SignedBasis{-1, basis_index(c)};
    }
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      INFO("e" << i << " * e" << j);
      CHECK(basis_product(basis_index(i), basis_index(j)) ==
            expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("generator relations") {
  const Octonion e1 = Octonion::unit(1), e2 = Octonion::unit(2), e3 = Octonion::unit(3);
  CHECK(e1 * e2 == Octonion::unit(4));
  CHECK(e1 * e3 == Octonion::unit(5));
  CHECK(e2 * e3 == Octonion::unit(6));
  CHECK((e1 * e2) * e3 == Octonion::unit(7));
  CHECK(e1 * (e2 * e3) == -Octonion::unit(7));
}

TEST_CASE("squares, anticommutation, and the neutral element") {
  for (int i = 1; i < 8; ++i) {
    CHECK(Octonion::unit(i) * Octonion::unit(i) == -Octonion::unit(0));
    CHECK(Octonion::unit(0) * Octonion::unit(i) == Octonion::unit(i));
    CHECK(Octonion::unit(i) * Octonion::unit(0) == Octonion::unit(i));
    for (int j = 1; j < 8; ++j) {
      if (i == j) continue;
      CHECK(Octonion::unit(i) * Octonion::unit(j) == -(Octonion::unit(j) * Octonion::unit(i)));
    }
  }
  CHECK(Octonion::unit(0) * Octonion::unit(0) == Octonion::unit(0));
}

TEST_CASE("norm multiplicativity over 1000 seeded pairs") {
  std::mt19937_64 rng(20260822u);
  for (int n = 0; n < 1000; ++n) {
    const Octonion a = seeded_octonion(rng);
    const Octonion b = seeded_octonion(rng);
    // integer-valued, so equality is exact
    CHECK(oct_norm_sq(a * b) == oct_norm_sq(a) * oct_norm_sq(b));
  }
}

TEST_CASE("associator alternation over all basis triples") {
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 8; ++k) {
        const Octonion a = Octonion::unit(i), b = Octonion::unit(j), c = Octonion::unit(k);
        const Octonion x = associator(a, b, c);
        CHECK(associator(b, a, c) == -x);
        CHECK(associator(a, c, b) == -x);
        CHECK(associator(c, b, a) == -x);
        if (i == j || j == k || i == k) CHECK(is_zero(x));
      }
    }
  }
}

TEST_CASE("associator support among imaginary triples") {
  // Coplanar distinct triples associate (7 lines, 6 orderings each); every
  // other distinct imaginary triple fails to.
  int zero_count = 0, nonzero_count = 0;
  for (int i = 1; i < 8; ++i) {
    for (int j = 1; j < 8; ++j) {
      for (int k = 1; k < 8; ++k) {
        if (i == j || j == k || i == k) continue;
        const Octonion x = associator(Octonion::unit(i), Octonion::unit(j), Octonion::unit(k));
        if (is_zero(x)) {
          ++zero_count;
        } else {
          ++nonzero_count;
          CHECK(oct_sup_norm(x) == 2.0);
        }
      }
    }
  }
  CHECK(zero_count == 42);
  CHECK(nonzero_count == 168);
  CHECK(associator(Octonion::unit(1), Octonion::unit(2), Octonion::unit(3)) ==
        2.0 * Octonion::unit(7));
}

TEST_CASE("alternativity on seeded pairs") {
  std::mt19937_64 rng(7u);
  for (int n = 0; n < 200; ++n) {
    const Octonion a = seeded_octonion(rng);
    const Octonion b = seeded_octonion(rng);
    CHECK(is_zero(associator(a, a, b)));
    CHECK(is_zero(associator(a, b, b)));
    CHECK(is_zero(associator(b, a, b)));
  }
}

TEST_CASE("conjugation") {
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Octonion a = Octonion::unit(i), b = Octonion::unit(j);
      CHECK(oct_conj(a * b) == oct_conj(b) * oct_conj(a));
    }
  }
  std::mt19937_64 rng(11u);
  for (int n = 0; n < 100; ++n) {
    const Octonion a = seeded_octonion(rng);
    CHECK(oct_conj(oct_conj(a)) == a);
    CHECK(a * oct_conj(a) == Octonion::real(oct_norm_sq(a)));
  }
}

TEST_CASE("frozen product samples") {
  CHECK(basis_product(basis_index(1), basis_index(2)) == SignedBasis{1, basis_index(4)});
  CHECK(basis_product(basis_index(5), basis_index(3)) == SignedBasis{-1, basis_index(1)});
  const Octonion x = Octonion{{0, 2, 1, 0, 0, 0, 0, 0}};  // 2e1 + e2
  Octonion expected;
  expected[0] = -1.0;
  expected[4] = 2.0;
  CHECK(x * Octonion::unit(2) == expected);
}
