#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamlie/field.hpp"

namespace hamlie {

inline constexpr int kMaxVars = 6;
inline constexpr int kMaxHeight = 15;

/// Heights m_1..m_n of the variables; x_i has exponents below 2^{m_i}.
class Heights {
 public:
  Heights() = default;
  /// Throws InputError unless 1 <= n <= 6 and 1 <= m_i <= 15.
  explicit Heights(std::vector<int> m);

  /// Parses "2,1,1".
  static Heights parse(const std::string& text);

  int n() const { return static_cast<int>(m_.size()); }
  int operator[](int i) const { return m_[i]; }
  const std::vector<int>& values() const { return m_; }
  std::uint32_t bound(int i) const { return (1u << m_[i]) - 1; }
  int total() const;
  /// Dimension of O(n, m), i.e. 2^{m_1+...+m_n}.
  std::uint64_t algebra_dim() const { return 1ull << total(); }

  /// Indices i with m_i > j; these span E_j of the flag.
  std::vector<int> flag_level(int j) const;
  Heights swapped(int i, int j) const;
  std::string str() const;

  friend bool operator==(const Heights&, const Heights&) = default;

 private:
  std::vector<int> m_;
};

/// Exponent multi-index of x^(alpha). Unused trailing slots stay zero.
struct Monomial {
  std::array<std::uint32_t, kMaxVars> a{};

  std::uint32_t& operator[](int i) { return a[i]; }
  std::uint32_t operator[](int i) const { return a[i]; }
  int degree() const;
  bool is_one() const { return degree() == 0; }

  static Monomial unit(int i, std::uint32_t e = 1) {
    Monomial m;
    m.a[i] = e;
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

bool in_range(const Monomial& m, const Heights& h);
/// x_i^(2^{m_i}) with every other exponent zero.
bool is_top_power(const Monomial& m, const Heights& h);
/// Top monomial x^(bar) = prod x_i^(2^{m_i}-1).
Monomial top_monomial(const Heights& h);

/// Divided-power product of two monomials; empty when the coefficient is 0.
std::optional<Monomial> mono_mul(const Monomial& a, const Monomial& b, const Heights& h);

/// Orders by total degree, then lexicographically.
bool degree_lex_less(const Monomial& a, const Monomial& b);
/// All in-range monomials, degree-lex ordered (the unit monomial first).
std::vector<Monomial> monomial_basis(const Heights& h);

std::string monomial_str(const Monomial& m, const Heights& h);

/// Element of O(n, m) over GF(2^k), optionally containing top powers.
class Poly {
 public:
  using Terms = std::map<Monomial, FieldElem>;

  Poly() = default;
  Poly(Heights h, Field f) : h_(std::move(h)), f_(f) {}

  static Poly constant(const Heights& h, const Field& f, FieldElem c);
  static Poly monomial(const Heights& h, const Field& f, const Monomial& m, FieldElem c = kOne);
  /// x_i, 0-based.
  static Poly variable(const Heights& h, const Field& f, int i);
  /// x_i^(2^{m_i}), an element of the extended algebra.
  static Poly top_power(const Heights& h, const Field& f, int i);
  /// x_i^(2^{m_i}-1).
  static Poly xbar(const Heights& h, const Field& f, int i);
  /// prod_i x_i^(2^{m_i}-1).
  static Poly xbar(const Heights& h, const Field& f);

  const Heights& heights() const { return h_; }
  const Field& field() const { return f_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  FieldElem coeff(const Monomial& m) const;
  FieldElem constant_term() const { return coeff(Monomial{}); }
  /// Adds c x^(m); throws InputError for a monomial outside O(F) + top powers.
  void add_term(const Monomial& m, FieldElem c);

  bool has_top_power() const;
  int min_degree() const;
  int max_degree() const;
  Poly homogeneous_part(int degree) const;
  Poly without_constant() const;
  Poly scaled(FieldElem c) const;

  Poly& operator+=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }

  std::string str() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.h_ == b.h_ && a.f_ == b.f_ && a.terms_ == b.terms_;
  }

 private:
  Heights h_;
  Field f_;
  Terms terms_;
};

void require_compatible(const Poly& a, const Poly& b);

Poly poly_mul(const Poly& f, const Poly& g);
Poly operator*(const Poly& f, const Poly& g);
/// Divided-power partial derivative, 0-based index.
Poly partial(int i, const Poly& f);

/// f^(r) for f with zero constant term; throws UndefinedDividedPower when the
/// result leaves the height truncation.
Poly divided_power(const Poly& f, std::uint32_t r);
/// f^(0) .. f^(rmax); entries are empty where the power is undefined.
std::vector<std::optional<Poly>> divided_powers_upto(const Poly& f, std::uint32_t rmax);

/// Terms of least total degree; throws InputError for f = 0.
Poly lambda_part(const Poly& f);

/// D = sum_i f_i d_i.
struct Derivation {
  std::vector<Poly> coeffs;

  static Derivation zero(const Heights& h, const Field& f);
  /// d_i, 0-based.
  static Derivation basis(const Heights& h, const Field& f, int i);

  const Heights& heights() const { return coeffs.front().heights(); }
  const Field& field() const { return coeffs.front().field(); }
  bool is_zero() const;
  Derivation& operator+=(const Derivation& o);
  std::string str() const;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

Poly der_apply(const Derivation& d, const Poly& f);
Derivation der_commutator(const Derivation& d1, const Derivation& d2);

/// 2-adic valuation of n!.
inline int v2_factorial(std::uint64_t n) {
  return static_cast<int>(n - static_cast<std::uint64_t>(std::popcount(n)));
}

}  // namespace hamlie
