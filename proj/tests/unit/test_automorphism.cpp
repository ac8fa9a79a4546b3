#include <doctest.h>

#include <random>

#include "hamlie/automorphism.hpp"
#include "hamlie/errors.hpp"
#include "test_support.hpp"

using namespace hamlie;
using namespace hamlie::testing;

namespace {

const Field F2(1);

Monomial mono(std::initializer_list<std::uint32_t> e) {
  Monomial m;
  int i = 0;
  for (auto v : e) m[i++] = v;
  return m;
}

Form2 omega0_plus(const Heights& h, const Field& f, int var, FieldElem c) {
  Form2 w = builtin_form(1, h, f);
  Monomial m = Monomial::unit(var, h.bound(var));
  m[2] = 1;
  w.mixed(var, 2) = Poly::monomial(h, f, m, c);
  return w;
}

}  // namespace

TEST_CASE("admissibility verdicts") {
  const Heights h({1, 2, 1});
  CHECK(check_admissible(AddSubGen{0, 1, 1, kOne}, h, F2).ok);
  CHECK_FALSE(check_admissible(AddSubGen{1, 0, 0, kOne}, h, F2).ok);
  CHECK_FALSE(check_admissible(AddSubGen{0, 0, 0, kOne}, h, F2).ok);
  CHECK_FALSE(check_admissible(ScaleGen{{kOne, kZero, kOne}}, h, F2).ok);
  Matrix swap = Matrix::identity(3, F2);
  swap(0, 0) = swap(1, 1) = kZero;
  swap(0, 1) = swap(1, 0) = kOne;
  CHECK(check_admissible(LinearGen{swap, std::nullopt}, Heights({2, 2, 1}), F2).ok);
  CHECK_FALSE(check_admissible(LinearGen{swap, std::nullopt}, h, F2).ok);
  CHECK(check_admissible(LinearGen{swap, h.swapped(0, 1)}, h, F2).ok);
  CHECK_FALSE(check_admissible(LinearGen{Matrix(3, 3, F2), std::nullopt}, h, F2).ok);
  // x3 -> x3 + x1 x2 x3 over (1,1,1) is an admissible involution.
  const Heights t({1, 1, 1});
  CHECK(check_admissible(SubstGen{2, Poly::monomial(t, F2, mono({1, 1, 1}))}, t, F2).ok);
  CHECK_FALSE(check_admissible(SubstGen{2, Poly::variable(t, F2, 0)}, t, F2).ok);
  // x1 -> x1 + x2^(2) breaks the truncation of x1 when m1 = 2 and m2 = 2.
  const Heights u({2, 2, 1});
  CHECK_FALSE(check_admissible(SubstGen{0, Poly::monomial(u, F2, mono({0, 2, 0}))}, u, F2).ok);
}

TEST_CASE("images of polynomials") {
  const Heights h({2, 2, 1});
  const Admissible s{h, F2, {AddSubGen{0, 1, 0, kOne}}};
  const Poly img = apply_poly(s, Poly::monomial(h, F2, mono({2, 0, 0})));
  CHECK(img == Poly::monomial(h, F2, mono({2, 0, 0})) + Poly::monomial(h, F2, mono({1, 1, 0})) +
                   Poly::monomial(h, F2, mono({0, 2, 0})));
  const Poly f = Poly::monomial(h, F2, mono({3, 1, 1}));
  CHECK(apply_poly(Admissible::identity(h, F2), f) == f);

  const Field f4(2);
  const FieldElem a = f4.generator();
  const Admissible sc{h, f4, {ScaleGen{{kOne, a, f4.sqrt(a)}}}};
  CHECK(apply_poly(sc, Poly::monomial(h, f4, mono({3, 0, 1}))) ==
        Poly::monomial(h, f4, mono({3, 0, 1}), f4.sqrt(a)));
  CHECK_THROWS_AS(apply_poly(Admissible{h, F2, {AddSubGen{1, 0, 1, kOne}}}, f), PreconditionError);
  CHECK_THROWS_AS(apply_poly(s, Poly::variable(Heights({1, 1, 1}), F2, 0)), InputError);
}

TEST_CASE("a single substitution removes the c23 monomial but leaves an exact residual") {
  const Heights h({1, 1, 1});
  const Form2 w = cross_term_form(h, F2, kOne, kOne);
  const Form2 out = apply_form2(Admissible{h, F2, {AddSubGen{0, 1, 0, kOne}}}, w);
  const Form2 goal = cross_term_form(h, F2, kOne, kZero);
  CHECK(out.mixed(1, 2).coeff(mono({0, 1, 1})) == kZero);
  const Form2 residual = out + goal;
  Form1 th = Form1::zero(h, F2);
  th.comps[2] = Poly::monomial(h, F2, mono({1, 1, 1}));
  CHECK(residual == differential(th));
}

TEST_CASE("cross-term elimination is exact") {
  for (int k : {1, 2}) {
    const Field f(k);
    for (const auto& hv : {std::vector<int>{1, 1, 1}, {2, 1, 1}, {1, 2, 1}}) {
      const Heights h(hv);
      for (FieldElem c13 : f.elements())
        for (FieldElem c23 : f.elements()) {
          CAPTURE(k);
          CAPTURE(h.str());
          CAPTURE(c13.bits);
          CAPTURE(c23.bits);
          const Elimination e = eliminate_cross_term(h, f, c13, c23);
          CHECK(e.word.validate().ok);
          const Heights t = e.word.target();
          CHECK(e.result == cross_term_form(t, f, e.c, kZero));
          CHECK(apply_form2(e.word, cross_term_form(h, f, c13, c23)) == e.result);
          if (!c13.is_zero() && !c23.is_zero()) CHECK(e.swapped == (h[0] > h[1]));
          if (!e.c.is_zero()) {
            Admissible full = e.word;
            full.then(normalize_coefficient(t, f, e.c));
            CHECK(apply_form2(full, cross_term_form(h, f, c13, c23)) == builtin_form(4, t, f));
          }
        }
    }
  }
}

TEST_CASE("scaling multiplies omega4 by a") {
  const Field f4(2);
  const Heights h({2, 1, 1});
  for (FieldElem a : f4.elements()) {
    if (a.is_zero()) continue;
    const Admissible s{h, f4, {ScaleGen{{kOne, a, f4.sqrt(a)}}}};
    CHECK(apply_form2(s, builtin_form(4, h, f4)) == builtin_form(4, h, f4).scaled(a));
  }
}

TEST_CASE("the swap exchanges the cross terms") {
  for (const auto& hv : {std::vector<int>{1, 1, 1}, {2, 1, 1}, {1, 3, 1}}) {
    const Heights h(hv);
    const Admissible s{h, F2, {swap_gen(0, 1, h, F2)}};
    CHECK(s.validate().ok);
    CHECK(s.target() == h.swapped(0, 1));
    CHECK(apply_form2(s, omega0_plus(h, F2, 0, kOne)) == omega0_plus(h.swapped(0, 1), F2, 1, kOne));
  }
}

TEST_CASE("inverses of generators") {
  const Heights h({1, 2, 1});
  const Field f4(2);
  const Admissible a{h, f4, {AddSubGen{0, 1, 1, FieldElem{3}}}};
  const Admissible ai = invert(a);
  REQUIRE(ai.word.size() == 1);
  CHECK(std::get<AddSubGen>(ai.word[0]).c == FieldElem{3});
  const Admissible s{h, f4, {ScaleGen{{FieldElem{2}, FieldElem{3}, kOne}}}};
  CHECK(std::get<ScaleGen>(invert(s).word[0]).c ==
        std::vector<FieldElem>{FieldElem{3}, FieldElem{2}, kOne});
  CHECK_THROWS_AS(compose(a, Admissible::identity(Heights({2, 1, 1}), f4)), InputError);
}

TEST_CASE("automorphism properties on random words") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const Heights h = random_heights(rng);
    const Field f(1 + trial % 2);
    const AutoGen g = random_gen(h, f, rng);
    const Admissible s{h, f, {g}};
    CAPTURE(describe(g));
    const Poly a = random_poly(h, f, rng, 4), b = random_poly(h, f, rng, 4);
    CHECK(apply_poly(s, poly_mul(a, b)) == poly_mul(apply_poly(s, a), apply_poly(s, b)));
    CHECK(apply_poly(s, a + b) == apply_poly(s, a) + apply_poly(s, b));
    CHECK(apply_form1(s, differential(a)) == differential(apply_poly(s, a)));
    const Poly m = random_poly(h, f, rng, 3, true);
    const auto pw = divided_powers_upto(m, 4);
    const Poly sm = apply_poly(s, m);
    const auto spw = divided_powers_upto(sm, 4);
    for (std::uint32_t r = 0; r <= 4; ++r) {
      CHECK(pw[r].has_value() == spw[r].has_value());
      if (pw[r] && spw[r]) CHECK(apply_poly(s, *pw[r]) == *spw[r]);
    }
  }
}

TEST_CASE("round trips of random words") {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const Heights h = random_heights(rng);
    const Field f(1 + trial % 2);
    Admissible s = Admissible::identity(h, f);
    const int len = 1 + trial % 4;
    for (int k = 0; k < len; ++k) s.then(random_gen(h, f, rng));
    const Poly a = random_poly(h, f, rng, 5);
    CHECK(apply_poly(invert(s), apply_poly(s, a)) == a);
    CHECK(apply_poly(compose(s, invert(s)), a) == a);
    const Admissible t{h, f, {random_gen(h, f, rng)}};
    CHECK(apply_poly(compose(t, s), a) == apply_poly(t, apply_poly(s, a)));
  }
}

TEST_CASE("pushforward preserves Hamiltonian predicates") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Heights h = random_heights(rng, 2);
    const Field f(1);
    Form2 w = builtin_form(1 + trial % 4, h, f);
    // Perturb by an exact form d(theta) with theta in m^(2).
    Form1 th = Form1::zero(h, f);
    for (auto& c : th.comps) {
      Poly p = random_poly(h, f, rng, 2, true);
      Poly q(h, f);
      for (const auto& [m, v] : p.terms())
        if (m.degree() >= 2) q.add_term(m, v);
      c = q;
    }
    w += differential(th);
    REQUIRE(is_closed(w).closed);
    REQUIRE(is_nondegenerate(w));
    const Admissible s{h, f, {random_gen(h, f, rng), random_gen(h, f, rng)}};
    const Form2 sw = apply_form2(s, w);
    CHECK(is_closed(sw).closed);
    CHECK(is_nondegenerate(sw));
    CHECK(is_nonalternating(sw) == is_nonalternating(w));
  }
}

TEST_CASE("dense matrix of a word") {
  const Heights h({1, 1, 1});
  const Admissible s{h, F2, {AddSubGen{0, 1, 0, kOne}}};
  const Matrix m = dense_matrix(s);
  CHECK(m.rows() == 8);
  CHECK(m * m == Matrix::identity(8, F2));
  CHECK(dense_matrix(Admissible::identity(h, F2)) == Matrix::identity(8, F2));
}

TEST_CASE("integration") {
  const Heights h({2, 1, 1});
  CHECK(integrate(0, Poly::variable(h, F2, 0)) == Poly::monomial(h, F2, mono({2, 0, 0})));
  CHECK_THROWS_AS(integrate(1, Poly::variable(h, F2, 1)), PreconditionError);
}
