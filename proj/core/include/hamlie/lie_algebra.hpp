#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamlie/divided_power.hpp"
#include "hamlie/linalg.hpp"

namespace hamlie {

/// Sparse vector as (index, coefficient) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, FieldElem>>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, int dim);

/// Finite-dimensional Lie algebra given by structure constants.
class LieAlg {
 public:
  LieAlg() = default;
  /// degrees, when given, are total degrees of the basis labels (Lie degree
  /// is degree - 2).
  LieAlg(Field f, std::vector<std::string> labels, std::vector<int> degrees = {});

  int dim() const { return static_cast<int>(labels_.size()); }
  const Field& field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  bool has_degrees() const { return !degrees_.empty(); }
  /// Monomial labels when the basis comes from O(F); empty otherwise.
  const std::vector<Monomial>& monomials() const { return monomials_; }
  void set_monomials(std::vector<Monomial> m);

  const SparseVec& bracket(int a, int b) const {
    return sc_[static_cast<std::size_t>(a) * dim() + b];
  }
  /// Sets [e_a, e_b] and [e_b, e_a] (equal in characteristic 2).
  void set_bracket(int a, int b, SparseVec v);

  Vec unit(int a) const;
  Vec bracket(const Vec& u, const Vec& v) const;
  /// Matrix of ad(v); column j is [v, e_j].
  Matrix ad(const Vec& v) const;
  Matrix ad_basis(int a) const { return ad(unit(a)); }

  std::string name;

  friend bool operator==(const LieAlg& a, const LieAlg& b) {
    return a.field_ == b.field_ && a.labels_ == b.labels_ && a.sc_ == b.sc_;
  }

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::vector<Monomial> monomials_;
  std::vector<SparseVec> sc_;
};

/// Same algebra in the basis given by the columns of p.
LieAlg change_basis(const LieAlg& l, const Matrix& p, std::vector<int> degrees = {});

/// Subalgebra spanned by the rows of `rows`, re-based on their reduced echelon
/// form; labels and degrees are inherited from the pivot columns. Throws
/// PreconditionError if the span is not closed under the bracket.
LieAlg subalgebra(const LieAlg& l, const Matrix& rows);

}  // namespace hamlie
