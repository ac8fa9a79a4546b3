#include "hamlie/lie_algebra.hpp"

#include "hamlie/errors.hpp"

namespace hamlie {

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

Vec to_dense(const SparseVec& v, int dim) {
  Vec out(dim, kZero);
  for (const auto& [i, c] : v) out[i] += c;
  return out;
}

LieAlg::LieAlg(Field f, std::vector<std::string> labels, std::vector<int> degrees)
    : field_(f), labels_(std::move(labels)), degrees_(std::move(degrees)) {
  if (!degrees_.empty() && degrees_.size() != labels_.size())
    throw InputError("degree list does not match the basis");
  sc_.assign(labels_.size() * labels_.size(), {});
}

void LieAlg::set_monomials(std::vector<Monomial> m) {
  if (!m.empty() && static_cast<int>(m.size()) != dim()) throw InputError("monomial list does not match the basis");
  monomials_ = std::move(m);
}

void LieAlg::set_bracket(int a, int b, SparseVec v) {
  if (a < 0 || b < 0 || a >= dim() || b >= dim()) throw InputError("bracket index out of range");
  for (const auto& [i, c] : v)
    if (i < 0 || i >= dim() || !field_.contains(c)) throw InputError("bracket value out of range");
  sc_[static_cast<std::size_t>(b) * dim() + a] = v;
  sc_[static_cast<std::size_t>(a) * dim() + b] = std::move(v);
}

Vec LieAlg::unit(int a) const {
  Vec v(dim(), kZero);
  v[a] = kOne;
  return v;
}

Vec LieAlg::bracket(const Vec& u, const Vec& v) const {
  Vec out(dim(), kZero);
  for (int a = 0; a < dim(); ++a) {
    if (u[a].is_zero()) continue;
    for (int b = 0; b < dim(); ++b) {
      if (v[b].is_zero()) continue;
      const FieldElem s = field_.mul(u[a], v[b]);
      for (const auto& [g, c] : bracket(a, b)) out[g] += field_.mul(s, c);
    }
  }
  return out;
}

Matrix LieAlg::ad(const Vec& v) const {
  Matrix m(dim(), dim(), field_);
  for (int a = 0; a < dim(); ++a) {
    if (v[a].is_zero()) continue;
    for (int j = 0; j < dim(); ++j)
      for (const auto& [g, c] : bracket(a, j)) m(g, j) += field_.mul(v[a], c);
  }
  return m;
}

LieAlg change_basis(const LieAlg& l, const Matrix& p, std::vector<int> degrees) {
  const auto pinv = inverse(p);
  if (!pinv || p.rows() != l.dim()) throw PreconditionError("basis change is not invertible");
  std::vector<std::string> labels;
  for (int a = 0; a < l.dim(); ++a) labels.push_back("b" + std::to_string(a + 1));
  LieAlg out(l.field(), labels, std::move(degrees));
  out.name = l.name;
  for (int a = 0; a < l.dim(); ++a)
    for (int b = a; b < l.dim(); ++b)
      out.set_bracket(a, b, to_sparse(pinv->apply(l.bracket(p.col(a), p.col(b)))));
  return out;
}

LieAlg subalgebra(const LieAlg& l, const Matrix& rows) {
  const Echelon e = row_echelon(rows);
  const int d = e.rank();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<Monomial> monos;
  for (int p : e.pivots) {
    labels.push_back(l.labels()[p]);
    if (l.has_degrees()) degrees.push_back(l.degrees()[p]);
    if (!l.monomials().empty()) monos.push_back(l.monomials()[p]);
  }
  LieAlg out(l.field(), labels, degrees);
  out.set_monomials(monos);
  out.name = l.name;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const Vec br = l.bracket(e.rref.row(a), e.rref.row(b));
      // In reduced echelon form the coordinates are the pivot entries.
      Vec coords(d, kZero), back(l.dim(), kZero);
      for (int r = 0; r < d; ++r) {
        coords[r] = br[e.pivots[r]];
        if (!coords[r].is_zero()) axpy(l.field(), coords[r], e.rref.row(r), back);
      }
      if (back != br) throw PreconditionError("span is not a subalgebra");
      out.set_bracket(a, b, to_sparse(coords));
    }
  return out;
}

}  // namespace hamlie
