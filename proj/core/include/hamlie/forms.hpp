#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamlie/divided_power.hpp"
#include "hamlie/linalg.hpp"

namespace hamlie {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// sum_i f_i dx_i
struct Form1 {
  std::vector<Poly> comps;

  static Form1 zero(const Heights& h, const Field& f);
  /// dx_i, 0-based.
  static Form1 basis(const Heights& h, const Field& f, int i);
  const Heights& heights() const { return comps.front().heights(); }
  const Field& field() const { return comps.front().field(); }
  bool is_zero() const;
  Form1& operator+=(const Form1& o);
  std::string str() const;

  friend bool operator==(const Form1&, const Form1&) = default;
};

/// sum_i g_i (dx_i)^(2) + sum_{i<j} g_ij dx_i dx_j
class Form2 {
 public:
  Form2() = default;
  Form2(Heights h, Field f);

  const Heights& heights() const { return h_; }
  const Field& field() const { return f_; }
  int n() const { return h_.n(); }

  const Poly& square(int i) const { return squares_[i]; }
  Poly& square(int i) { return squares_[i]; }
  /// Coefficient of dx_i dx_j; symmetric in (i, j), i != j.
  const Poly& mixed(int i, int j) const { return mixed_[pair_index(i, j)]; }
  Poly& mixed(int i, int j) { return mixed_[pair_index(i, j)]; }

  bool is_zero() const;
  Form2& operator+=(const Form2& o);
  friend Form2 operator+(Form2 a, const Form2& b) { return a += b; }
  /// Multiplies every coefficient by the function p.
  Form2 times(const Poly& p) const;
  Form2 scaled(FieldElem c) const;

  std::string str() const;

  friend bool operator==(const Form2&, const Form2&) = default;

 private:
  int pair_index(int i, int j) const;

  Heights h_;
  Field f_;
  std::vector<Poly> squares_;
  std::vector<Poly> mixed_;
};

/// Degree-3 symmetric form keyed by the exponent vector of dx; dx-variables
/// carry untruncated divided powers.
struct Form3 {
  using Key = std::array<std::uint8_t, kMaxVars>;

  Heights h;
  Field f;
  std::map<Key, Poly> coeffs;  // zero coefficients are never stored

  void add(const Key& key, const Poly& p);
  Poly coeff(const Key& key) const;
  bool is_zero() const { return coeffs.empty(); }
  std::string str() const;

  friend bool operator==(const Form3&, const Form3&) = default;
};

Form1 differential(const Poly& f);
Form2 differential(const Form1& w);
Form3 differential(const Form2& w);

struct ClosedResult {
  bool closed;
  Form3 residual;
};
ClosedResult is_closed(const Form2& w);
/// Closedness through "constant squares and d1 g23 + d2 g13 + d3 g12 = 0" (n = 3).
bool is_closed_by_coefficients(const Form2& w);

bool is_nonalternating(const Form2& w);
bool is_nondegenerate(const Form2& w);

/// Gram matrix G_ab = w(d_a, d_b).
PolyMatrix gram(const Form2& w);
/// Gram matrix at the origin.
Matrix gram_at_zero(const Form2& w);
/// Inverse of a unit of O(F); throws PreconditionError for non-units.
Poly unit_inverse(const Poly& u);
/// Exact inverse of the Gram matrix over O(F); throws PreconditionError if degenerate.
PolyMatrix gram_inverse(const Form2& w);
PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b);
bool is_identity(const PolyMatrix& m);

Poly eval_form2(const Form2& w, const Derivation& d1, const Derivation& d2);
Form2 lie_derivative(const Derivation& d, const Form2& w);

/// (sum_j f_j dx_j)^(2)
Form2 square_of_1form(const Form1& th);
/// Symmetric product of two 1-forms.
Form2 product_of_1forms(const Form1& a, const Form1& b);

/// The four canonical Hamiltonian forms, tag in 1..4.
Form2 builtin_form(int tag, const Heights& h, const Field& f);
/// Parses "omega1".."omega4" (also "w1".."w4", "1".."4"); returns 0 if unknown.
int builtin_tag(const std::string& name);

}  // namespace hamlie
