#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "octolat/octonion.hpp"

namespace octolat {

// ============================================================================
// Split generators e_j^+ / e_j^-
// ============================================================================

enum class SplitSign : std::uint8_t { plus = 0, minus = 1 };

/// One of the 16 split basis units e_j^+ / e_j^-, j = 0..7.
struct SplitGenerator {
  std::uint8_t axis = 0;
  SplitSign sign = SplitSign::plus;

  constexpr std::uint8_t code() const {
    return static_cast<std::uint8_t>((axis << 1) | static_cast<std::uint8_t>(sign));
  }

  static constexpr SplitGenerator from_code(std::uint8_t c) {
    return SplitGenerator{static_cast<std::uint8_t>(c >> 1),
                          (c & 1) ? SplitSign::minus : SplitSign::plus};
  }

  friend constexpr bool operator==(SplitGenerator a, SplitGenerator b) {
    return a.code() == b.code();
  }
};

constexpr SplitGenerator eplus(int axis) {
  return SplitGenerator{static_cast<std::uint8_t>(axis & 7), SplitSign::plus};
}

constexpr SplitGenerator eminus(int axis) {
  return SplitGenerator{static_cast<std::uint8_t>(axis & 7), SplitSign::minus};
}

/// Total order on generators: axis first, then plus < minus.
constexpr std::strong_ordering gen_order(SplitGenerator a, SplitGenerator b) {
  return a.code() <=> b.code();
}

inline std::string render(SplitGenerator g) {
  std::string s = "e";
  s += static_cast<char>('0' + g.axis);
  s += g.sign == SplitSign::plus ? '+' : '-';
  return s;
}

// ============================================================================
// Raw monomials: formal split-unit products of degree <= 3
// ============================================================================

/// A formal product of split generators as written, degree 0..3. Degree-3
/// products are always right-nested, a*(b*c); left-nested products are
/// converted on entry via the anti-associativity rule and never stored.
class RawMonomial {
 public:
  constexpr RawMonomial() = default;

  static constexpr RawMonomial unit() { return RawMonomial{0}; }

  static constexpr RawMonomial gen(SplitGenerator g) {
    return RawMonomial{(1u << 24) | g.code()};
  }

  static constexpr RawMonomial pair(SplitGenerator b, SplitGenerator c) {
    return RawMonomial{(2u << 24) | (static_cast<std::uint32_t>(b.code()) << 8) | c.code()};
  }

  static constexpr RawMonomial triple(SplitGenerator a, SplitGenerator b, SplitGenerator c) {
    return RawMonomial{(3u << 24) | (static_cast<std::uint32_t>(a.code()) << 16) |
                       (static_cast<std::uint32_t>(b.code()) << 8) | c.code()};
  }

  constexpr int degree() const { return static_cast<int>(bits_ >> 24); }

  /// Leading slot of a triple (the factor outside the nesting).
  constexpr SplitGenerator slot_a() const {
    return SplitGenerator::from_code(static_cast<std::uint8_t>((bits_ >> 16) & 0xff));
  }

  /// First factor of a pair / middle slot of a triple.
  constexpr SplitGenerator slot_b() const {
    return SplitGenerator::from_code(static_cast<std::uint8_t>((bits_ >> 8) & 0xff));
  }

  /// The generator itself for degree 1; last factor otherwise.
  constexpr SplitGenerator slot_c() const {
    return SplitGenerator::from_code(static_cast<std::uint8_t>(bits_ & 0xff));
  }

  constexpr std::uint32_t bits() const { return bits_; }

  friend constexpr bool operator==(RawMonomial a, RawMonomial b) = default;
  friend constexpr std::strong_ordering operator<=>(RawMonomial a, RawMonomial b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  constexpr explicit RawMonomial(std::uint32_t bits) : bits_(bits) {}

  // degree << 24 | a << 16 | b << 8 | c; unused high slots are zero, so the
  // bit ordering sorts by degree first and then lexicographically by slot.
  std::uint32_t bits_ = 0;
};

inline std::string render(RawMonomial m) {
  switch (m.degree()) {
    case 0:
      return "1";
    case 1:
      return render(m.slot_c());
    case 2:
      return "(" + render(m.slot_b()) + " " + render(m.slot_c()) + ")";
    default:
      return render(m.slot_a()) + "(" + render(m.slot_b()) + " " + render(m.slot_c()) + ")";
  }
}

// ============================================================================
// Module elements: finite real-linear combinations of raw monomials
// ============================================================================

/// Sparse linear combination of RawMonomials with real coefficients, kept in
/// canonical sparse form: sorted by monomial, no zero coefficients.
class ModuleElement {
 public:
  using Term = std::pair<RawMonomial, double>;

  ModuleElement() = default;

  static ModuleElement zero() { return {}; }

  static ModuleElement term(RawMonomial m, double c) {
    ModuleElement e;
    if (c != 0.0) e.terms_.emplace_back(m, c);
    return e;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  double coeff(RawMonomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, RawMonomial k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : 0.0;
  }

  void add_term(RawMonomial m, double c) {
    if (c == 0.0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, RawMonomial k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    } else {
      terms_.emplace(it, m, c);
    }
  }

  ModuleElement& operator+=(const ModuleElement& o) { return merge(o, 1.0); }
  ModuleElement& operator-=(const ModuleElement& o) { return merge(o, -1.0); }

  ModuleElement& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (Term& t : terms_) t.second *= s;
    return *this;
  }

  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(ModuleElement a, double s) { return a *= s; }
  friend ModuleElement operator*(double s, ModuleElement a) { return a *= s; }
  friend ModuleElement operator-(ModuleElement a) { return a *= -1.0; }

  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;

  /// Largest coefficient magnitude (the residual measure used throughout).
  double sup_norm() const {
    double m = 0.0;
    for (const Term& t : terms_) {
      const double v = t.second < 0 ? -t.second : t.second;
      if (v > m) m = v;
    }
    return m;
  }

  int max_degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }

  /// The part of the element whose monomials have the given degree.
  ModuleElement component(int degree) const {
    ModuleElement out;
    for (const Term& t : terms_) {
      if (t.first.degree() == degree) out.terms_.push_back(t);
    }
    return out;
  }

 private:
  friend class ElementAccumulator;

  ModuleElement& merge(const ModuleElement& o, double s) {
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      if (a->first < b->first) {
        out.push_back(*a++);
      } else if (b->first < a->first) {
        out.emplace_back(b->first, s * b->second);
        ++b;
      } else {
        const double c = a->second + s * b->second;
        if (c != 0.0) out.emplace_back(a->first, c);
        ++a;
        ++b;
      }
    }
    out.insert(out.end(), a, terms_.end());
    for (; b != o.terms_.end(); ++b) out.emplace_back(b->first, s * b->second);
    terms_ = std::move(out);
    return *this;
  }

  std::vector<Term> terms_;
};

inline bool is_zero(const ModuleElement& e) { return e.empty(); }

/// Scratch builder for term-heavy computations: collects unsorted terms and
/// folds them into canonical sparse form once.
class ElementAccumulator {
 public:
  void add(RawMonomial m, double c) {
    if (c != 0.0) scratch_.emplace_back(m, c);
  }

  void add(const ModuleElement& e, double s) {
    if (s == 0.0) return;
    for (const auto& [m, c] : e) scratch_.emplace_back(m, s * c);
  }

  ModuleElement take() {
    std::sort(scratch_.begin(), scratch_.end(),
              [](const ModuleElement::Term& x, const ModuleElement::Term& y) {
                return x.first < y.first;
              });
    ModuleElement out;
    out.terms_.reserve(scratch_.size());
    for (const auto& [m, c] : scratch_) {
      if (!out.terms_.empty() && out.terms_.back().first == m) {
        out.terms_.back().second += c;
        if (out.terms_.back().second == 0.0) out.terms_.pop_back();
      } else if (c != 0.0) {
        out.terms_.emplace_back(m, c);
      }
    }
    scratch_.clear();
    return out;
  }

 private:
  std::vector<ModuleElement::Term> scratch_;
};

// ============================================================================
// Rewriting rules
// ============================================================================

namespace detail {

/// Normal form of a two-generator product: unit_coeff + pair_coeff * pair.
struct PairNF {
  double unit_coeff = 0.0;
  double pair_coeff = 0.0;
  RawMonomial pair{};
};

// b*c under the splitting relations: squares vanish, out-of-order products
// swap with sign -1 and emit -1 when the axes coincide with opposite signs.
constexpr PairNF canon_pair_nf(SplitGenerator b, SplitGenerator c) {
  PairNF nf;
  if (b.code() == c.code()) return nf;
  if (gen_order(b, c) == std::strong_ordering::less) {
    nf.pair_coeff = 1.0;
    nf.pair = RawMonomial::pair(b, c);
    return nf;
  }
  nf.pair_coeff = -1.0;
  nf.pair = RawMonomial::pair(c, b);
  if (b.axis == c.axis) nf.unit_coeff = -1.0;
  return nf;
}

}  // namespace detail

/// The product b*c rewritten into canonical form by the splitting relations.
inline ModuleElement canon_pair(SplitGenerator b, SplitGenerator c) {
  const detail::PairNF nf = detail::canon_pair_nf(b, c);
  ModuleElement out = ModuleElement::term(nf.pair, nf.pair_coeff);
  out.add_term(RawMonomial::unit(), nf.unit_coeff);
  return out;
}

/// The left-nested product (a*b)*c expressed in right-nested form. All eight
/// sign patterns anti-associate, so the result is always -a*(b*c).
inline ModuleElement reassociate(SplitGenerator a, SplitGenerator b, SplitGenerator c) {
  return ModuleElement::term(RawMonomial::triple(a, b, c), -1.0);
}

/// Linear map e_k -> e_k^+ + e_k^- on every axis, including k = 0; the real
/// part lands on the degree-1 generators of axis 0, not on the unit.
inline ModuleElement embed_oct(const Octonion& x) {
  ModuleElement out;
  for (int k = 0; k < 8; ++k) {
    const double c = x[k];
    if (c == 0.0) continue;
    out.add_term(RawMonomial::gen(eplus(k)), c);
    out.add_term(RawMonomial::gen(eminus(k)), c);
  }
  return out;
}

/// How a generator multiplying a degree-2 value attaches: nested keeps the
/// product as written, a*(b*c); flat reduces the leading pair a*b via the
/// splitting relations first and re-nests the leftovers.
enum class MulConvention { nested, flat };

namespace detail {

[[noreturn]] inline void degree_overflow() {
  throw std::domain_error("split-algebra product would exceed degree 3");
}

template <typename Sink>
inline void lmul_gen_term(SplitGenerator a, RawMonomial m, double c, MulConvention conv,
                          Sink&& sink) {
  switch (m.degree()) {
    case 0:
      sink(RawMonomial::gen(a), c);
      return;
    case 1:
      if (conv == MulConvention::nested) {
        sink(RawMonomial::pair(a, m.slot_c()), c);
      } else {
        const PairNF nf = canon_pair_nf(a, m.slot_c());
        if (nf.unit_coeff != 0.0) sink(RawMonomial::unit(), c * nf.unit_coeff);
        if (nf.pair_coeff != 0.0) sink(nf.pair, c * nf.pair_coeff);
      }
      return;
    case 2:
      if (conv == MulConvention::nested) {
        sink(RawMonomial::triple(a, m.slot_b(), m.slot_c()), c);
      } else {
        // a*(b*c) taken left-accumulated: reduce a*b, then attach c. Scalar
        // leftovers yield Gen(c); pair leftovers (p q) form the left-nested
        // ((p q) c) and re-nest with the anti-associative sign.
        const PairNF nf = canon_pair_nf(a, m.slot_b());
        if (nf.unit_coeff != 0.0) sink(RawMonomial::gen(m.slot_c()), c * nf.unit_coeff);
        if (nf.pair_coeff != 0.0) {
          sink(RawMonomial::triple(nf.pair.slot_b(), nf.pair.slot_c(), m.slot_c()),
               -c * nf.pair_coeff);
        }
      }
      return;
    default:
      degree_overflow();
  }
}

template <typename Sink>
inline void rmul_gen_term(RawMonomial m, SplitGenerator k, double c, Sink&& sink) {
  switch (m.degree()) {
    case 0:
      sink(RawMonomial::gen(k), c);
      return;
    case 1:
      sink(RawMonomial::pair(m.slot_c(), k), c);
      return;
    case 2:
      // ((b c) k) is left-nested; re-nest with the anti-associative sign.
      sink(RawMonomial::triple(m.slot_b(), m.slot_c(), k), -c);
      return;
    default:
      degree_overflow();
  }
}

}  // namespace detail

/// Left multiplication by a single generator.
inline ModuleElement lmul_gen(SplitGenerator a, const ModuleElement& e,
                              MulConvention conv = MulConvention::nested) {
  ElementAccumulator acc;
  for (const auto& [m, c] : e) {
    detail::lmul_gen_term(a, m, c, conv, [&acc](RawMonomial k, double v) { acc.add(k, v); });
  }
  return acc.take();
}

/// Right multiplication by a single generator; pairs pick up the
/// anti-associative sign when re-nested.
inline ModuleElement rmul_gen(const ModuleElement& e, SplitGenerator k) {
  ElementAccumulator acc;
  for (const auto& [m, c] : e) {
    detail::rmul_gen_term(m, k, c, [&acc](RawMonomial mk, double v) { acc.add(mk, v); });
  }
  return acc.take();
}

/// e * x with x expanded through embed_oct; the octonion units land in the
/// last slot.
inline ModuleElement rmul_oct(const ModuleElement& e, const Octonion& x) {
  ElementAccumulator acc;
  for (int k = 0; k < 8; ++k) {
    const double xk = x[k];
    if (xk == 0.0) continue;
    for (const auto& [m, c] : e) {
      detail::rmul_gen_term(m, eplus(k), c * xk,
                            [&acc](RawMonomial mk, double v) { acc.add(mk, v); });
      detail::rmul_gen_term(m, eminus(k), c * xk,
                            [&acc](RawMonomial mk, double v) { acc.add(mk, v); });
    }
  }
  return acc.take();
}

/// x * e with x expanded through embed_oct; octonion units nest directly in
/// the leading slot with no sign.
inline ModuleElement lmul_oct(const Octonion& x, const ModuleElement& e) {
  ElementAccumulator acc;
  for (int k = 0; k < 8; ++k) {
    const double xk = x[k];
    if (xk == 0.0) continue;
    for (const auto& [m, c] : e) {
      detail::lmul_gen_term(eplus(k), m, c * xk, MulConvention::nested,
                            [&acc](RawMonomial mk, double v) { acc.add(mk, v); });
      detail::lmul_gen_term(eminus(k), m, c * xk, MulConvention::nested,
                            [&acc](RawMonomial mk, double v) { acc.add(mk, v); });
    }
  }
  return acc.take();
}

/// Rewrites every pair, and the inner pair of every triple, by the splitting
/// relations. The leading slot of a triple never moves across the nesting;
/// no rewriting rule exists for it. Linear and idempotent.
inline ModuleElement canonicalize(const ModuleElement& e) {
  ElementAccumulator acc;
  for (const auto& [m, c] : e) {
    switch (m.degree()) {
      case 0:
      case 1:
        acc.add(m, c);
        break;
      case 2: {
        const detail::PairNF nf = detail::canon_pair_nf(m.slot_b(), m.slot_c());
        if (nf.unit_coeff != 0.0) acc.add(RawMonomial::unit(), c * nf.unit_coeff);
        if (nf.pair_coeff != 0.0) acc.add(nf.pair, c * nf.pair_coeff);
        break;
      }
      default: {
        const detail::PairNF nf = detail::canon_pair_nf(m.slot_b(), m.slot_c());
        if (nf.unit_coeff != 0.0) acc.add(RawMonomial::gen(m.slot_a()), c * nf.unit_coeff);
        if (nf.pair_coeff != 0.0) {
          acc.add(RawMonomial::triple(m.slot_a(), nf.pair.slot_b(), nf.pair.slot_c()),
                  c * nf.pair_coeff);
        }
        break;
      }
    }
  }
  return acc.take();
}

// ============================================================================
// Text rendering
// ============================================================================

namespace detail {

inline std::string render_coeff(double c) {
  const double mag = c < 0 ? -c : c;
  if (mag == static_cast<double>(static_cast<long long>(mag))) {
    return std::to_string(static_cast<long long>(mag));
  }
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), mag);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Renders an element as a signed sum of terms, e.g. "2*e1+ - (e2+ e3-) + 1".
inline std::string render(const ModuleElement& e) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e) {
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const double mag = c < 0 ? -c : c;
    if (m.degree() == 0) {
      out += detail::render_coeff(mag);
    } else {
      if (mag != 1.0) {
        out += detail::render_coeff(mag);
        out += "*";
      }
      out += render(m);
    }
  }
  return out;
}

namespace detail {

class ElementParser {
 public:
  explicit ElementParser(std::string_view text) : text_(text) {}

  ModuleElement parse() {
    ModuleElement out;
    skip_ws();
    if (done()) return out;
    if (text_.substr(pos_) == "0") return out;
    double sign = 1.0;
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
      skip_ws();
    }
    parse_term(out, sign);
    skip_ws();
    while (!done()) {
      const char op = peek();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      skip_ws();
      parse_term(out, op == '-' ? -1.0 : 1.0);
      skip_ws();
    }
    return out;
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!done() && text_[pos_] == ' ') ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(std::string("bad module-element text: ") + what);
  }

  void parse_term(ModuleElement& out, double sign) {
    double coeff = 1.0;
    if (peek() >= '0' && peek() <= '9') {
      const char* begin = text_.data() + pos_;
      char* end = nullptr;
      coeff = std::strtod(begin, &end);
      pos_ += static_cast<std::size_t>(end - begin);
      if (peek() == '*') {
        ++pos_;
      } else {
        out.add_term(RawMonomial::unit(), sign * coeff);
        return;
      }
    }
    out.add_term(parse_monomial(), sign * coeff);
  }

  RawMonomial parse_monomial() {
    if (peek() == '(') {
      return parse_paren_pair();
    }
    if (peek() == '1') {
      // the unit monomial, reachable only after an explicit "c*"
      ++pos_;
      return RawMonomial::unit();
    }
    const SplitGenerator g = parse_gen();
    if (peek() == '(') {
      const RawMonomial inner = parse_paren_pair();
      return RawMonomial::triple(g, inner.slot_b(), inner.slot_c());
    }
    return RawMonomial::gen(g);
  }

  RawMonomial parse_paren_pair() {
    expect('(');
    const SplitGenerator b = parse_gen();
    skip_ws();
    const SplitGenerator c = parse_gen();
    expect(')');
    return RawMonomial::pair(b, c);
  }

  SplitGenerator parse_gen() {
    expect('e');
    const char d = peek();
    if (d < '0' || d > '7') fail("axis digit 0..7 expected");
    ++pos_;
    const char s = peek();
    if (s != '+' && s != '-') fail("sign expected after axis");
    ++pos_;
    return SplitGenerator{static_cast<std::uint8_t>(d - '0'),
                          s == '+' ? SplitSign::plus : SplitSign::minus};
  }

  void expect(char c) {
    if (peek() != c) fail("unexpected character");
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the render() format back into an element.
inline ModuleElement parse_element(std::string_view text) {
  return detail::ElementParser(text).parse();
}

inline std::ostream& operator<<(std::ostream& os, const ModuleElement& e) {
  return os << render(e);
}

}  // namespace octolat
