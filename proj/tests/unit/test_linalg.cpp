#include <doctest.h>

#include <random>

#include "hamlie/linalg.hpp"

using namespace hamlie;

namespace {

Matrix random_matrix(int r, int c, const Field& f, std::mt19937& rng) {
  Matrix m(r, c, f);
  std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = FieldElem{d(rng)};
  return m;
}

}  // namespace

TEST_CASE("rank, nullspace and left kernel") {
  std::mt19937 rng(7);
  for (int k : {1, 2, 3}) {
    const Field f(k);
    for (int trial = 0; trial < 50; ++trial) {
      const int r = 1 + trial % 6, c = 1 + (trial / 6) % 7;
      Matrix m = random_matrix(r, c, f, rng);
      const int rk = rank(m);
      const Matrix ns = nullspace(m);
      CHECK(ns.rows() == c - rk);
      CHECK((m * ns.transpose()).is_zero());
      const Matrix lk = left_kernel(m);
      CHECK(lk.rows() == r - rk);
      CHECK((lk * m).is_zero());
      CHECK(rank(m.transpose()) == rk);
    }
  }
}

TEST_CASE("inverse and determinant") {
  std::mt19937 rng(11);
  const Field f(2);
  int invertible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Matrix m = random_matrix(4, 4, f, rng);
    auto inv = inverse(m);
    CHECK(inv.has_value() == !determinant(m).is_zero());
    if (inv) {
      ++invertible;
      CHECK(m * *inv == Matrix::identity(4, f));
      CHECK(f.mul(determinant(m), determinant(*inv)) == kOne);
    }
  }
  CHECK(invertible > 0);
  CHECK_FALSE(inverse(Matrix(2, 3, f)).has_value());
}

TEST_CASE("row space intersection") {
  const Field f(1);
  // span{e1, e2} and span{e2, e3} meet in span{e2}.
  Matrix a = Matrix::from_rows(f, 3, {{kOne, kZero, kZero}, {kZero, kOne, kZero}});
  Matrix b = Matrix::from_rows(f, 3, {{kZero, kOne, kZero}, {kZero, kZero, kOne}});
  Matrix i = intersect_rowspaces(a, b);
  REQUIRE(i.rows() == 1);
  CHECK(i.row(0) == Vec{kZero, kOne, kZero});
  CHECK(same_rowspace(intersect_rowspaces(a, a), a));
}

TEST_CASE("subspace insertion and reduction") {
  const Field f(2);
  Subspace s(3, f);
  CHECK(s.insert({kOne, FieldElem{2}, kZero}));
  CHECK(s.insert({kZero, kOne, kOne}));
  CHECK_FALSE(s.insert({kOne, FieldElem{3}, kOne}));
  CHECK(s.dim() == 2);
  CHECK(s.contains({FieldElem{2}, FieldElem{3}, kZero}));
  CHECK_FALSE(s.contains({FieldElem{2}, kOne, kZero}));
  CHECK(s.contains(scaled(f, FieldElem{3}, {kOne, FieldElem{2}, kZero})));
}

TEST_CASE("bit-packed rank matches dense rank") {
  std::mt19937 rng(3);
  const Field f(1);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + trial % 40, c = 1 + (trial * 7) % 130;
    Matrix m = random_matrix(r, c, f, rng);
    CHECK(BitMatrix::from_matrix(m).rank() == row_echelon(m).rank());
    if (c <= 64) {
      std::vector<std::uint64_t> rows(r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          if (!m(i, j).is_zero()) rows[i] |= 1ull << j;
      CHECK(rank_gf2(rows) == row_echelon(m).rank());
    }
  }
}

TEST_CASE("projective normal form") {
  const Field f(2);
  Vec v = projective_normal(f, {kZero, FieldElem{3}, FieldElem{2}});
  CHECK(v[1] == kOne);
  CHECK(v[2] == f.div(FieldElem{2}, FieldElem{3}));
}
