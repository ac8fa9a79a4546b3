#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hamlie/divided_power.hpp"
#include "hamlie/linalg.hpp"

namespace hamlie {

/// Flag given by the heights of the standard basis e_i of V = K^3, together
/// with a symmetric form b(x, y) = x^T B y.
struct BilinPair {
  Heights heights;
  Matrix b;

  /// Builds from the upper triangle b11,b12,b13,b22,b23,b33.
  static BilinPair from_upper(const Heights& h, const Field& f, const std::array<FieldElem, 6>& u);
  const Field& field() const { return b.field(); }
  /// Throws InputError unless n = 3 and B is symmetric, nondegenerate and
  /// non-alternating.
  void validate() const;
};

enum class BilinTag { B1, B2, B3 };
std::string tag_name(BilinTag t);
Matrix canonical_matrix(BilinTag t, const Field& f);

/// P^T B P is the canonical matrix; column j of P is the new basis vector e'_j
/// and has height heights[j].
struct Canonical {
  BilinTag tag;
  Matrix change;
  Heights heights;
  bool rewritten = false;  // B2 turned into B1 because m3 lies between m1 and m2
};

/// V_s = span{e_i : m_i <= s}, as rows.
Matrix flag_space(const Heights& h, const Field& f, int s);
/// min{s : v in V_s}; 0 for the zero vector.
int vector_height(const Heights& h, const Vec& v);
/// Entry (i, j) != 0 only if rows[i] <= cols[j], and the inverse obeys the
/// reverse inequality.
bool flag_compatible(const Matrix& p, const Heights& rows, const Heights& cols);

/// Rows span {v : b(v, v) = 0}; throws PreconditionError for alternating B.
Matrix isotropic_hyperplane(const BilinPair& p);
/// Rows span the orthogonal complement of rowspace(sub).
Matrix orthogonal_complement(const Matrix& b, const Matrix& sub);

Canonical canonicalize(const BilinPair& p);
std::array<int, 3> n_invariants(const BilinPair& p);

bool pairs_equivalent(const Canonical& a, const Canonical& b);
bool pairs_equivalent(const BilinPair& a, const BilinPair& b);

/// Exhaustive search for P with P^T B P = B'; fields up to GF(4).
bool brute_force_equivalent(const BilinPair& a, const BilinPair& b);
/// All P^T B P for flag-compatible invertible P from heights a.heights to
/// target; entries packed as b11,b12,b13,b22,b23,b33 in 2-bit digits (GF(2)
/// and GF(4) only).
std::set<std::uint32_t> congruence_orbit(const BilinPair& a, const Heights& target);
std::uint32_t pack_upper(const Matrix& b);

/// Symmetric nondegenerate non-alternating 3x3 matrices over f (k <= 2).
std::vector<Matrix> all_nonalternating_forms(const Field& f);

}  // namespace hamlie
