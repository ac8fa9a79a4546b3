#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hamlie/divided_power.hpp"
#include "hamlie/forms.hpp"
#include "hamlie/linalg.hpp"

namespace hamlie {

/// x_i -> sum_j m(i, j) y_j, where y lives over `target` (defaults to the
/// source heights).
struct LinearGen {
  Matrix m;
  std::optional<Heights> target;
};

/// x_i -> x_i + c x_j^(2^t), 0-based indices.
struct AddSubGen {
  int i = 0;
  int j = 1;
  int t = 0;
  FieldElem c = kOne;
};

/// x_i -> c_i x_i
struct ScaleGen {
  std::vector<FieldElem> c;
};

/// x_i -> x_i + h, with h fixed by the substitution (so it is an involution).
struct SubstGen {
  int i = 0;
  Poly h;
};

using AutoGen = std::variant<LinearGen, AddSubGen, ScaleGen, SubstGen>;

struct Verdict {
  bool ok;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Heights after applying g to O(h).
Heights target_heights(const AutoGen& g, const Heights& h);
/// Validity of g on O(h) over the field f; ok guarantees apply never meets an
/// undefined divided power.
Verdict check_admissible(const AutoGen& g, const Heights& h, const Field& f);
std::string describe(const AutoGen& g);

/// Word of generators, applied first to last.
struct Admissible {
  Heights source;
  Field field;
  std::vector<AutoGen> word;

  static Admissible identity(const Heights& h, const Field& f) { return Admissible{h, f, {}}; }
  Heights target() const;
  /// Heights in front of each generator, plus the final target.
  std::vector<Heights> height_chain() const;
  Verdict validate() const;
  Admissible& then(AutoGen g);
};

/// Images sigma(x_i) over the target heights.
std::vector<Poly> images(const AutoGen& g, const Heights& h, const Field& f);

Poly apply_poly(const Admissible& s, const Poly& f);
Form1 apply_form1(const Admissible& s, const Form1& w);
Form2 apply_form2(const Admissible& s, const Form2& w);
Derivation apply_derivation(const Admissible& s, const Derivation& d);

/// Apply s2 first, then s1.
Admissible compose(const Admissible& s1, const Admissible& s2);
Admissible invert(const Admissible& s);
/// Matrix of s on the monomial bases (columns: source monomials, degree-lex).
Matrix dense_matrix(const Admissible& s);

AutoGen swap_gen(int i, int j, const Heights& h, const Field& f);

/// dx1dx2 + dx3^(2) + c13 xbar1 x3 dx1dx3 + c23 xbar2 x3 dx2dx3 (requires m3 = 1).
Form2 cross_term_form(const Heights& h, const Field& f, FieldElem c13, FieldElem c23);

struct Elimination {
  Admissible word;
  Form2 result;       // over word.target()
  FieldElem c;        // the surviving coefficient of xbar1 x3 dx1dx3
  bool swapped;       // heights of x1 and x2 were exchanged
  int corrections;    // substitution steps appended to make the result exact
};

/// Maps cross_term_form(h, c13, c23) onto dx1dx2 + dx3^(2) + c xbar1 x3 dx1dx3
/// over the returned target heights.
Elimination eliminate_cross_term(const Heights& h, const Field& f, FieldElem c13, FieldElem c23);

/// Scaling that turns dx1dx2 + dx3^(2) + c xbar1 x3 dx1dx3 into omega4 (c != 0).
AutoGen normalize_coefficient(const Heights& h, const Field& f, FieldElem c);

/// x_i integrated once; throws PreconditionError if a term leaves the heights.
Poly integrate(int i, const Poly& f);

}  // namespace hamlie
