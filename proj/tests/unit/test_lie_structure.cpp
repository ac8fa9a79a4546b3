#include <doctest.h>

#include <random>

#include "hamlie/errors.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/lie_structure.hpp"

using namespace hamlie;

namespace {

const Field F2(1);

LieAlg build(std::vector<int> h, int tag, Variant v = Variant::P, int k = 1) {
  return build_algebra(AlgebraSpec{Heights(std::move(h)), tag, std::nullopt, k, v});
}

Vec elem(const LieAlg& l, std::vector<std::uint32_t> e) {
  Monomial m;
  for (std::size_t i = 0; i < e.size(); ++i) m[static_cast<int>(i)] = e[i];
  for (int a = 0; a < l.dim(); ++a)
    if (l.monomials()[a] == m) return l.unit(a);
  FAIL("monomial not in basis");
  return {};
}

Vec xbar(const LieAlg& l, const Heights& h) {
  const Monomial t = top_monomial(h);
  return elem(l, {t[0], t[1], t[2]});
}

LieAlg abelian(int d) {
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back("a" + std::to_string(i));
  return LieAlg(F2, labels);
}

// Heisenberg algebra: [e, f] = h central.
LieAlg heisenberg() {
  LieAlg l(F2, {"e", "f", "h"});
  l.set_bracket(0, 1, {{2, kOne}});
  return l;
}

Matrix random_filtered_change(const LieAlg& l, std::mt19937& rng) {
  const int d = l.dim();
  for (;;) {
    Matrix p(d, d, l.field());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i == j) p(i, j) = FieldElem{static_cast<std::uint32_t>(1 + rng() % (l.field().order() - 1))};
        else if (l.degrees()[i] > l.degrees()[j] && rng() % 3 == 0)
          p(i, j) = FieldElem{static_cast<std::uint32_t>(rng() % l.field().order())};
    if (inverse(p)) return p;
  }
}

}  // namespace

TEST_CASE("ad ranks") {
  const LieAlg l = build({1, 1, 2}, 1);
  CHECK(ad_rank(l, xbar(l, Heights({1, 1, 2}))) == 4);
  const LieAlg w = build({1, 1, 1}, 4);
  CHECK(ad_rank(w, elem(w, {1, 1, 1})) == 3);
  CHECK(ad_rank(w, Vec(7, kZero)) == 0);
  CHECK(rank(Matrix(5, 5, F2)) == 0);

  const LieAlg g4 = build({2, 1, 1}, 3, Variant::P, 2);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    Vec v(g4.dim());
    for (auto& x : v) x = FieldElem{static_cast<std::uint32_t>(rng() % 4)};
    const FieldElem c{static_cast<std::uint32_t>(1 + rng() % 3)};
    CHECK(ad_rank(g4, scaled(g4.field(), c, v)) == ad_rank(g4, v));
  }
}

TEST_CASE("derived series and center") {
  CHECK(derived_dims(build({1, 1, 1}, 1)) == std::vector<int>{7, 6, 6});
  CHECK(derived_dims(build({1, 1, 1}, 4)) == std::vector<int>{7, 7});
  CHECK(derived_dims(abelian(4)) == std::vector<int>{4, 0});
  CHECK(derived_dims(heisenberg()) == std::vector<int>{3, 1, 0});
  CHECK(center(heisenberg()).rows() == 1);
  CHECK(center(abelian(3)).rows() == 3);
  CHECK(center(build({2, 1, 1}, 4)).rows() == 0);
  CHECK(is_perfect(build({2, 1, 1}, 3)));
  CHECK_FALSE(is_perfect(build({2, 1, 1}, 1)));
}

TEST_CASE("ideal closure") {
  const LieAlg l = build({2, 1, 1}, 1);
  const Vec top = xbar(l, Heights({2, 1, 1}));
  CHECK(ideal_closure(l, top).rows() == 15);
  Subspace derived(l.dim(), F2);
  for (const Vec& r : derived_series(l)[1].row_vectors()) derived.insert(r);
  CHECK_FALSE(derived.contains(top));
  CHECK(ideal_closure(l, l.unit(0)).rows() == 14);
  const LieAlg h = heisenberg();
  CHECK(ideal_closure(h, h.unit(2)).rows() == 1);
  CHECK(ideal_closure(h, h.unit(0)).rows() == 2);
}

TEST_CASE("simplicity verdicts") {
  CHECK(is_simple(build({1, 1, 1}, 4)).simple);
  CHECK_FALSE(is_simple(build({1, 1, 1}, 3)).simple);
  const LieAlg l112 = build({1, 1, 2}, 1);
  CHECK(l112.dim() == 15);
  CHECK(is_simple(l112).simple);
  CHECK(is_simple(build({2, 1, 1}, 3)).simple);
  CHECK_FALSE(is_simple(build({2, 1, 1}, 1)).simple);
  CHECK(is_simple(build({2, 1, 1}, 1, Variant::P1)).simple);
  CHECK_FALSE(is_simple(heisenberg()).simple);
  CHECK_FALSE(is_simple(abelian(1)).simple);
  CHECK_THROWS_AS(is_simple_exhaustive(build({2, 1, 1}, 3, Variant::P, 2)), BoundExceeded);
}

TEST_CASE("exhaustive and Norton certifiers agree") {
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; a + b <= 3; ++b)
      for (int c = 1; a + b + c <= 4; ++c)
        for (int tag : {1, 3, 4})
          for (Variant v : {Variant::P, Variant::P1}) {
            if (tag == 4 && c != 1) continue;
            const LieAlg l = build({a, b, c}, tag, v);
            CAPTURE(l.name);
            const SimplicityResult e = is_simple_exhaustive(l);
            const SimplicityResult n = is_simple_norton(l, 11);
            REQUIRE(n.certified);
            CHECK(e.simple == n.simple);
            if (!e.simple) {
              REQUIRE(e.witness.has_value());
              REQUIRE(n.witness.has_value());
              for (const Matrix* w : {&*e.witness, &*n.witness}) {
                CHECK(w->rows() > 0);
                CHECK(w->rows() < l.dim());
                CHECK(ideal_closure(l, w->row_vectors()).rows() == w->rows());
              }
            }
          }
}

TEST_CASE("Norton on GF(4) and dimension 63") {
  CHECK(is_simple(build({2, 1, 1}, 4, Variant::P, 2)).simple);
  CHECK_FALSE(is_simple(build({2, 1, 1}, 1, Variant::P, 2)).simple);
  CHECK(is_simple(build({1, 2, 3}, 2)).simple);
}

TEST_CASE("minimal ad rank") {
  {
    const LieAlg l = build({2, 1, 1}, 1);
    const MinRank r = min_ad_rank(l, RankMode::exhaustive);
    CHECK(r.R == 3);
    REQUIRE(r.argmin.size() == 1);
    CHECK(r.argmin[0] == xbar(l, Heights({2, 1, 1})));
    CHECK(r.examined == (1u << 15) - 1);
  }
  {
    const LieAlg l = build({1, 1, 2}, 1);
    const MinRank r = min_ad_rank(l, RankMode::exhaustive);
    CHECK(r.R == 4);
    REQUIRE(r.argmin.size() == 1);
    CHECK(r.argmin[0] == xbar(l, Heights({1, 1, 2})));
  }
  {
    const LieAlg l = build({1, 1, 1}, 4);
    const MinRank r = min_ad_rank(l, RankMode::exhaustive);
    CHECK(r.R == 3);
    CHECK(std::find(r.argmin.begin(), r.argmin.end(), elem(l, {1, 1, 1})) != r.argmin.end());
  }
  const LieAlg big = build({1, 2, 3}, 2);
  CHECK_THROWS_AS(min_ad_rank(big, RankMode::exhaustive), BoundExceeded);
  const MinRank s = min_ad_rank(big, RankMode::sampled, 5, 2000);
  CHECK_FALSE(s.exact);
  CHECK(s.R >= min_ad_rank(big, RankMode::homogeneous).R);
  CHECK(parse_mode("homogeneous") == RankMode::homogeneous);
}

TEST_CASE("homogeneous mode matches exhaustive mode up to dimension 15") {
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; a + b <= 3; ++b)
      for (int c = 1; a + b + c <= 4; ++c)
        for (int tag : {1, 3, 4}) {
          if (tag == 4 && c != 1) continue;
          const LieAlg l = build({a, b, c}, tag);
          CAPTURE(l.name);
          const MinRank e = min_ad_rank(l, RankMode::exhaustive);
          const MinRank h = min_ad_rank(l, RankMode::homogeneous);
          CHECK(e.R == h.R);
          // Every homogeneous minimizer is a global minimizer.
          for (const Vec& v : h.argmin) CHECK(std::find(e.argmin.begin(), e.argmin.end(), v) != e.argmin.end());
        }
}

TEST_CASE("GF(4) minimal rank in homogeneous mode") {
  const LieAlg l = build({2, 1, 1}, 4, Variant::P, 2);
  const MinRank r = min_ad_rank(l, RankMode::homogeneous);
  CHECK(r.R == 3);
  REQUIRE(r.argmin.size() == 1);
  CHECK(r.argmin[0] == xbar(l, Heights({2, 1, 1})));
}

TEST_CASE("rank lower bounds below the top degree") {
  // Below the top Lie degree every nonzero homogeneous element has rank at
  // least R + 1.
  struct Case {
    std::vector<int> h;
    int tag;
    int bound;
  };
  for (const Case& c : {Case{{1, 1, 2}, 1, 5}, Case{{2, 1, 1}, 3, 5}, Case{{1, 2, 2}, 3, 5},
                        Case{{2, 1, 1}, 4, 4}, Case{{2, 1, 1}, 1, 4}, Case{{3, 1, 1}, 4, 4}}) {
    const LieAlg l = build(c.h, c.tag);
    CAPTURE(l.name);
    const GradingProfile g = grading_profile(l);
    for (int t = g.min_degree; t < g.top_degree(); ++t) {
      const std::vector<int> idx = component(l, t);
      if (idx.size() > 12) continue;
      for (std::uint32_t m = 1; m < (1u << idx.size()); ++m) {
        Vec v(l.dim(), kZero);
        for (std::size_t s = 0; s < idx.size(); ++s)
          if (m >> s & 1) v[idx[s]] = kOne;
        CHECK(ad_rank(l, v) >= c.bound);
      }
    }
  }
}

TEST_CASE("witness ranks") {
  // x1^(3) x2 in P(3,(2,1,1),omega1) against degree-1 partners.
  const LieAlg l = build({2, 1, 1}, 1);
  const Vec d = elem(l, {3, 1, 0});
  CHECK(witness_rank(l, d, {elem(l, {1, 0, 0}), elem(l, {0, 1, 0}), elem(l, {0, 0, 1})}) == 2);
  CHECK(witness_rank(l, d, {elem(l, {1, 0, 0}), elem(l, {0, 1, 0}), elem(l, {1, 0, 1}), elem(l, {0, 1, 1}),
                            elem(l, {0, 0, 1})}) == 4);
  const LieAlg w = build({1, 1, 1}, 4);
  CHECK(witness_rank(w, elem(w, {1, 1, 1}), {w.unit(0), w.unit(1), w.unit(2)}) == 3);
}

TEST_CASE("grading") {
  const GradingProfile g = grading_profile(build({1, 1, 1}, 1));
  CHECK(g.min_degree == -1);
  CHECK(g.dims == std::vector<int>{3, 3, 1});
  CHECK(grading_profile(build({1, 1, 2}, 1)).top_degree() == 2 + 2 + 4 - 5);
  const LieAlg l = build({2, 1, 1}, 3);
  CHECK(graded_algebra(l) == l);
  CHECK(filtration(l).front() == -1);
  CHECK_THROWS_AS(grading_profile(abelian(2)), InputError);
}

TEST_CASE("normalizers") {
  for (int tag : {3, 4}) {
    const LieAlg l = build({2, 1, 1}, tag);
    const Vec top = xbar(l, Heights({2, 1, 1}));
    const Matrix n = normalizer_of_span(l, Matrix::from_rows(F2, l.dim(), {top}));
    CHECK(n.rows() == 12);
    for (int a = 3; a < l.dim(); ++a) {
      Subspace s(l.dim(), F2);
      for (const Vec& r : n.row_vectors()) s.insert(r);
      CHECK(s.contains(l.unit(a)));
    }
    CHECK(normalizer_of_span(l, Matrix::identity(l.dim(), F2)).rows() == l.dim());
  }
}

TEST_CASE("subalgebras and basis changes") {
  const LieAlg l = build({1, 1, 1}, 1);
  const LieAlg d = subalgebra(l, derived_series(l)[1]);
  CHECK(d.dim() == 6);
  CHECK(check_jacobi(d).holds);
  CHECK_THROWS_AS(subalgebra(l, Matrix::from_rows(F2, 7, {elem(l, {0, 0, 1}), elem(l, {1, 0, 1})})), PreconditionError);
  std::mt19937 rng(4);
  const Matrix p = random_filtered_change(l, rng);
  const LieAlg c = change_basis(l, p, l.degrees());
  CHECK(check_jacobi(c).holds);
  CHECK(derived_dims(c) == derived_dims(l));
}

TEST_CASE("fingerprints") {
  const LieAlg l1 = build({2, 1, 1}, 1), l3 = build({2, 1, 1}, 3), l4 = build({2, 1, 1}, 4);
  const Fingerprint f1 = fingerprint(l1), f3 = fingerprint(l3), f4 = fingerprint(l4);
  CHECK(f3.simple == true);
  CHECK(f4.simple == true);
  CHECK(f1.simple == false);
  CHECK(f3.R == 4);
  CHECK(f4.R == 3);
  CHECK(f1.derived == std::vector<int>{15, 14, 14});
  CHECK(fingerprints_distinct(f1, f3));
  CHECK(fingerprints_distinct(f1, f4));
  CHECK(fingerprints_distinct(f3, f4));
  CHECK_FALSE(fingerprints_distinct(f3, f3));
  CHECK(f3.top_normalizer_dim == 12);

  std::mt19937 rng(6);
  for (const LieAlg* l : {&l1, &l3, &l4}) {
    const Matrix p = random_filtered_change(*l, rng);
    CHECK(fingerprint(change_basis(*l, p, l->degrees())) == fingerprint(*l));
  }
}

TEST_CASE("Jacobi failures are reported") {
  LieAlg bad(F2, {"a", "b", "c"});
  bad.set_bracket(0, 1, {{0, kOne}});
  bad.set_bracket(1, 2, {{1, kOne}});
  CHECK_FALSE(check_jacobi(bad).holds);
  LieAlg diag(F2, {"a"});
  diag.set_bracket(0, 0, {{0, kOne}});
  CHECK_FALSE(check_jacobi(diag).holds);
  CHECK_FALSE(check_alternation(diag, 1));
}
