#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamlie/field.hpp"

namespace hamlie {

using Vec = std::vector<FieldElem>;

bool is_zero(const Vec& v);
/// y += c * x
void axpy(const Field& f, FieldElem c, const Vec& x, Vec& y);
Vec scaled(const Field& f, FieldElem c, Vec v);
/// Scales v so that its first nonzero coordinate is 1.
Vec projective_normal(const Field& f, Vec v);

/// Dense row-major matrix over GF(2^k).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Field field);

  static Matrix identity(int n, Field field);
  static Matrix from_rows(Field field, int cols, const std::vector<Vec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  FieldElem& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  FieldElem operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  Vec row(int r) const;
  Vec col(int c) const;
  void set_row(int r, const Vec& v);
  std::vector<Vec> row_vectors() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  /// M * v for a column vector v.
  Vec apply(const Vec& v) const;
  /// v * M for a row vector v.
  Vec apply_left(const Vec& v) const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Field field_;
  std::vector<FieldElem> data_;
};

/// Reduced row echelon form with its pivot columns.
struct Echelon {
  Matrix rref;  // only the first rank() rows are nonzero
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
  /// The nonzero rows, i.e. a basis of the row space.
  Matrix basis() const;
};

Echelon row_echelon(Matrix m);
int rank(const Matrix& m);
/// Rows form a basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m);
/// Rows form a basis of {y : y m = 0}.
Matrix left_kernel(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
FieldElem determinant(const Matrix& m);
Matrix stack(const Matrix& top, const Matrix& bottom);
/// Rows form a basis of rowspace(a) ∩ rowspace(b).
Matrix intersect_rowspaces(const Matrix& a, const Matrix& b);
bool same_rowspace(const Matrix& a, const Matrix& b);

/// Incrementally maintained subspace kept in reduced echelon form.
class Subspace {
 public:
  Subspace(int ambient_dim, Field field);

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient_dim() const { return n_; }
  const Field& field() const { return field_; }

  /// Remainder of v modulo the subspace; zero iff v lies in it.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }
  /// Adds v; returns false when v was already contained.
  bool insert(const Vec& v);
  /// Coordinates of a contained vector in the echelon basis (pivot values).
  Vec coordinates(const Vec& v) const;
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Matrix basis_matrix() const;

 private:
  int n_;
  Field field_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

/// Rank of a GF(2) matrix whose rows are bit masks over at most 64 columns.
int rank_gf2(std::span<const std::uint64_t> rows);

/// GF(2) matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words() const { return words_; }

  bool get(int r, int c) const {
    return (data_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void flip(int r, int c) { data_[static_cast<std::size_t>(r) * words_ + c / 64] ^= 1ull << (c % 64); }
  void set(int r, int c, bool v) {
    if (get(r, c) != v) flip(r, c);
  }
  std::uint64_t* row_ptr(int r) { return data_.data() + static_cast<std::size_t>(r) * words_; }
  const std::uint64_t* row_ptr(int r) const {
    return data_.data() + static_cast<std::size_t>(r) * words_;
  }
  BitMatrix& operator^=(const BitMatrix& o);
  int rank() const;

  static BitMatrix from_matrix(const Matrix& m);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> data_;
};

}  // namespace hamlie
