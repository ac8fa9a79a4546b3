#include "hamlie/linalg.hpp"

#include <algorithm>
#include <bit>

#include "hamlie/errors.hpp"

namespace hamlie {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](FieldElem e) { return e.is_zero(); });
}

void axpy(const Field& f, FieldElem c, const Vec& x, Vec& y) {
  if (c.is_zero()) return;
  if (c == kOne) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += x[i];
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i] += f.mul(c, x[i]);
  }
}

Vec scaled(const Field& f, FieldElem c, Vec v) {
  for (auto& e : v) e = f.mul(c, e);
  return v;
}

Vec projective_normal(const Field& f, Vec v) {
  for (FieldElem e : v) {
    if (!e.is_zero()) {
      const FieldElem s = f.inv(e);
      return scaled(f, s, std::move(v));
    }
  }
  return v;
}

Matrix::Matrix(int rows, int cols, Field field)
    : rows_(rows), cols_(cols), field_(field),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

Matrix Matrix::identity(int n, Field field) {
  Matrix m(n, n, field);
  for (int i = 0; i < n; ++i) m(i, i) = kOne;
  return m;
}

Matrix Matrix::from_rows(Field field, int cols, const std::vector<Vec>& rows) {
  Matrix m(static_cast<int>(rows.size()), cols, field);
  for (int r = 0; r < m.rows(); ++r) m.set_row(r, rows[r]);
  return m;
}

Vec Matrix::row(int r) const {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_;
  return Vec(first, first + cols_);
}

Vec Matrix::col(int c) const {
  Vec out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_row(int r, const Vec& v) {
  if (static_cast<int>(v.size()) != cols_) throw InputError("row length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_);
}

std::vector<Vec> Matrix::row_vectors() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw InputError("matrix product dimension mismatch");
  Matrix out(rows_, o.cols_, field_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      const FieldElem a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (int c = 0; c < o.cols_; ++c) {
        const FieldElem b = o(k, c);
        if (!b.is_zero()) out(r, c) += field_.mul(a, b);
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix sum dimension mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  Vec out(rows_);
  for (int r = 0; r < rows_; ++r) {
    FieldElem acc;
    for (int c = 0; c < cols_; ++c) {
      const FieldElem a = (*this)(r, c);
      if (!a.is_zero() && !v[c].is_zero()) acc += field_.mul(a, v[c]);
    }
    out[r] = acc;
  }
  return out;
}

Vec Matrix::apply_left(const Vec& v) const {
  Vec out(cols_);
  for (int r = 0; r < rows_; ++r) {
    if (v[r].is_zero()) continue;
    for (int c = 0; c < cols_; ++c) {
      const FieldElem a = (*this)(r, c);
      if (!a.is_zero()) out[c] += field_.mul(v[r], a);
    }
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](FieldElem e) { return e.is_zero(); });
}

Matrix Echelon::basis() const {
  Matrix b(rank(), rref.cols(), rref.field());
  for (int r = 0; r < rank(); ++r) b.set_row(r, rref.row(r));
  return b;
}

Echelon row_echelon(Matrix m) {
  const Field& f = m.field();
  std::vector<int> pivots;
  int lead = 0;
  for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
    int p = lead;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != lead) {
      for (int k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead, k));
    }
    const FieldElem s = f.inv(m(lead, c));
    for (int k = c; k < m.cols(); ++k) m(lead, k) = f.mul(s, m(lead, k));
    for (int r = 0; r < m.rows(); ++r) {
      if (r == lead) continue;
      const FieldElem factor = m(r, c);
      if (factor.is_zero()) continue;
      for (int k = c; k < m.cols(); ++k) {
        if (!m(lead, k).is_zero()) m(r, k) += f.mul(factor, m(lead, k));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

int rank(const Matrix& m) {
  if (m.field().k() == 1) return BitMatrix::from_matrix(m).rank();
  return row_echelon(m).rank();
}

Matrix nullspace(const Matrix& m) {
  const Echelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = kOne;
    for (int r = 0; r < e.rank(); ++r) v[e.pivots[r]] = e.rref(r, free);  // -x = x in char 2
    basis.push_back(std::move(v));
  }
  return Matrix::from_rows(m.field(), m.cols(), basis);
}

Matrix left_kernel(const Matrix& m) { return nullspace(m.transpose()); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = m.rows();
  Matrix aug(n, 2 * n, m.field());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = kOne;
  }
  const Echelon e = row_echelon(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n, m.field());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv(r, c) = e.rref(r, n + c);
  return inv;
}

FieldElem determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const Field& f = m.field();
  Matrix a = m;
  FieldElem det = kOne;
  const int n = a.rows();
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return kZero;
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));  // sign is irrelevant
    }
    det = f.mul(det, a(c, c));
    const FieldElem s = f.inv(a(c, c));
    for (int r = c + 1; r < n; ++r) {
      const FieldElem factor = f.mul(a(r, c), s);
      if (factor.is_zero()) continue;
      for (int k = c; k < n; ++k) a(r, k) += f.mul(factor, a(c, k));
    }
  }
  return det;
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw InputError("stack: column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols(), top.field());
  for (int r = 0; r < top.rows(); ++r) out.set_row(r, top.row(r));
  for (int r = 0; r < bottom.rows(); ++r) out.set_row(top.rows() + r, bottom.row(r));
  return out;
}

Matrix intersect_rowspaces(const Matrix& a, const Matrix& b) {
  const Matrix ab = row_echelon(a).basis();
  const Matrix bb = row_echelon(b).basis();
  if (ab.rows() == 0 || bb.rows() == 0) return Matrix(0, a.cols(), a.field());
  // y = (s, t) with s*A + t*B = 0 gives s*A in both spaces.
  const Matrix k = left_kernel(stack(ab, bb));
  std::vector<Vec> out;
  for (int r = 0; r < k.rows(); ++r) {
    const Vec y = k.row(r);
    const Vec s(y.begin(), y.begin() + ab.rows());
    out.push_back(ab.apply_left(s));
  }
  return row_echelon(Matrix::from_rows(a.field(), a.cols(), out)).basis();
}

bool same_rowspace(const Matrix& a, const Matrix& b) {
  return row_echelon(a).basis() == row_echelon(b).basis();
}

Subspace::Subspace(int ambient_dim, Field field) : n_(ambient_dim), field_(field) {}

Vec Subspace::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElem c = v[pivots_[i]];
    if (!c.is_zero()) axpy(field_, c, rows_[i], v);
  }
  return v;
}

bool Subspace::insert(const Vec& v) {
  Vec r = reduce(v);
  int p = 0;
  while (p < n_ && r[p].is_zero()) ++p;
  if (p == n_) return false;
  const FieldElem s = field_.inv(r[p]);
  r = scaled(field_, s, std::move(r));
  for (auto& row : rows_) {
    const FieldElem c = row[p];
    if (!c.is_zero()) axpy(field_, c, r, row);
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = v[pivots_[i]];
  return out;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_rows(field_, n_, rows_); }

int rank_gf2(std::span<const std::uint64_t> rows) {
  std::uint64_t buf[64];
  const std::size_t n = rows.size();
  std::uint64_t* work = buf;
  std::vector<std::uint64_t> heap;
  if (n > 64) {
    heap.assign(rows.begin(), rows.end());
    work = heap.data();
  } else {
    std::copy(rows.begin(), rows.end(), buf);
  }
  int rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t r = work[i];
    if (r == 0) continue;
    ++rank;
    const std::uint64_t low = r & (~r + 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (work[j] & low) work[j] ^= r;
    }
  }
  return rank;
}

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>((cols + 63) / 64)) {}

BitMatrix& BitMatrix::operator^=(const BitMatrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= o.data_[i];
  return *this;
}

int BitMatrix::rank() const {
  if (words_ == 1) return rank_gf2(data_);
  std::vector<std::uint64_t> a = data_;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    const int w = c / 64;
    const std::uint64_t bit = 1ull << (c % 64);
    int p = rank;
    while (p < rows_ && !(a[static_cast<std::size_t>(p) * words_ + w] & bit)) ++p;
    if (p == rows_) continue;
    if (p != rank) {
      for (int k = 0; k < words_; ++k)
        std::swap(a[static_cast<std::size_t>(p) * words_ + k],
                  a[static_cast<std::size_t>(rank) * words_ + k]);
    }
    for (int r = rank + 1; r < rows_; ++r) {
      if (a[static_cast<std::size_t>(r) * words_ + w] & bit) {
        for (int k = w; k < words_; ++k)
          a[static_cast<std::size_t>(r) * words_ + k] ^= a[static_cast<std::size_t>(rank) * words_ + k];
      }
    }
    ++rank;
  }
  return rank;
}

BitMatrix BitMatrix::from_matrix(const Matrix& m) {
  if (m.field().k() != 1) throw InputError("bit matrices are defined over GF(2) only");
  BitMatrix b(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) b.flip(r, c);
  return b;
}

}  // namespace hamlie
