#pragma once

#include <optional>
#include <string>

#include "hamlie/forms.hpp"
#include "hamlie/lie_algebra.hpp"

namespace hamlie {

enum class Variant { P, Ptilde, P1 };
std::string variant_name(Variant v);
/// Accepts "P", "Ptilde" (also "P~"), "P1"; empty if unknown.
std::optional<Variant> parse_variant(const std::string& s);

struct AlgebraSpec {
  Heights heights;
  int form_tag = 1;                   // 1..4, or 0 for explicit_form
  std::optional<Form2> explicit_form;
  int field_exp = 1;
  Variant variant = Variant::P;

  Field field() const { return Field(field_exp); }
  Form2 form() const;
  /// Throws PreconditionError naming the violated constraint.
  void validate() const;
  /// e.g. "P(3,(1,1,1),omega4)"
  std::string name() const;
};

/// {f, g} = sum_ij wbar_ij d_i f d_j g, before dropping the constant term.
Poly poisson_raw(const Poly& f, const Poly& g, const PolyMatrix& wbar);
/// Poisson bracket in O(F)/K: the constant term is dropped.
Poly poisson(const Poly& f, const Poly& g, const PolyMatrix& wbar);
/// D_f = sum_ij wbar_ij d_j f d_i.
Derivation hamiltonian_field(const Poly& f, const PolyMatrix& wbar);

/// Monomial basis of the variant P or Ptilde, degree-lex ordered.
std::vector<Monomial> algebra_basis(const Heights& h, Variant v);

LieAlg build_algebra(const AlgebraSpec& spec);
/// The element of a monomial-labelled algebra given by f (constants dropped).
Vec element_of(const LieAlg& l, const Poly& f);

}  // namespace hamlie
