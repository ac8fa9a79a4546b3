#include <doctest.h>

#include <filesystem>
#include <random>

#include "hamlie/automorphism.hpp"
#include "hamlie/errors.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/serialization.hpp"
#include "test_support.hpp"

using namespace hamlie;
using namespace hamlie::testing;

namespace {

Form2 random_form(const Heights& h, const Field& f, std::mt19937& rng) {
  Form2 w(h, f);
  for (int i = 0; i < 3; ++i) w.square(i) = random_poly(h, f, rng, 3);
  w.mixed(0, 1) = random_poly(h, f, rng, 3);
  w.mixed(1, 2) = random_poly(h, f, rng, 2);
  return w;
}

}  // namespace

TEST_CASE("polynomials round-trip over several fields") {
  std::mt19937 rng(11);
  for (int k : {1, 2, 4, 16})
    for (int t = 0; t < 50; ++t) {
      const Field f(k);
      const Poly p = random_poly(random_heights(rng), f, rng, 6);
      const Poly q = poly_from_json(poly_to_json(p));
      CHECK(q == p);
      CHECK(q.field() == f);
    }
  const Heights h({1, 1, 1});
  CHECK(poly_from_json(poly_to_json(Poly(h, Field(1)))).is_zero());
}

TEST_CASE("forms round-trip, and bare tags build the builtin form") {
  std::mt19937 rng(12);
  for (int t = 0; t < 50; ++t) {
    const Field f(t % 2 ? 2 : 1);
    const Form2 w = random_form(random_heights(rng), f, rng);
    CHECK(form_from_json(form_to_json(w)) == w);
  }
  const Heights h({2, 1, 1});
  CHECK(form_from_json("omega4", h) == builtin_form(4, h, Field(1)));
  CHECK(form_from_json("\"omega3\"", h, Field(2)) == builtin_form(3, h, Field(2)));
  CHECK_THROWS_AS(form_from_json("omega4"), InputError);
  CHECK_THROWS_AS(form_from_json("omega9", h), InputError);
}

TEST_CASE("automorphism words round-trip and act identically") {
  const Field f4(2);
  for (auto hv : {std::vector<int>{1, 1, 1}, {2, 1, 1}, {1, 2, 1}})
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b) {
        const Heights h(hv);
        const Elimination e = eliminate_cross_term(h, f4, FieldElem{a}, FieldElem{b});
        const std::string text = admissible_to_json(e.word);
        const Admissible back = admissible_from_json(text);
        CHECK(admissible_to_json(back) == text);
        const Form2 w = cross_term_form(h, f4, FieldElem{a}, FieldElem{b});
        CHECK(apply_form2(back, w) == apply_form2(e.word, w));
      }
  const Heights h({2, 1, 1});
  const Admissible s{h, f4, {ScaleGen{{kOne, FieldElem{2}, f4.sqrt(FieldElem{2})}}, swap_gen(0, 1, h, f4)}};
  CHECK(admissible_to_json(admissible_from_json(admissible_to_json(s))) == admissible_to_json(s));
}

TEST_CASE("algebras round-trip with their spec") {
  for (const AlgebraSpec& spec : {AlgebraSpec{Heights({1, 1, 1}), 4, std::nullopt, 1, Variant::P},
                                  AlgebraSpec{Heights({2, 1, 1}), 1, std::nullopt, 1, Variant::P1},
                                  AlgebraSpec{Heights({1, 1, 1}), 3, std::nullopt, 2, Variant::Ptilde}}) {
    const LieAlg l = build_algebra(spec);
    const std::string text = algebra_to_json(l, spec);
    const LieAlg back = algebra_from_json(text);
    CHECK(back == l);
    CHECK(back.monomials() == l.monomials());
    CHECK(algebra_to_json(back, spec) == text);
  }
}

TEST_CASE("malformed documents raise InputError") {
  CHECK_THROWS_AS(poly_from_json("{"), InputError);
  CHECK_THROWS_AS(poly_from_json("[]"), InputError);
  CHECK_THROWS_AS(poly_from_json(R"({"heights":[1,1,1],"field":{"k":1,"irreducible":3},"terms":[{"alpha":[3,0,0],"coeff":1}]})"),
                  InputError);
  CHECK_THROWS_AS(poly_from_json(R"({"heights":[1,1,1],"field":{"k":1,"irreducible":3},"terms":[{"alpha":[1,0,0],"coeff":5}]})"),
                  InputError);
  CHECK_THROWS_AS(admissible_from_json(R"({"heights":[1,1,1],"word":[{"kind":"rotate"}]})"), InputError);
  CHECK_THROWS_AS(algebra_from_json(R"({"dim":2})"), InputError);
  CHECK_THROWS_AS(read_file("/nonexistent/alg.json"), InputError);
}

TEST_CASE("files are written and read back") {
  const auto path = std::filesystem::temp_directory_path() / "hamlie_serialization_test.json";
  const Poly p = Poly::monomial(Heights({1, 1, 1}), Field(1), Monomial::unit(0));
  write_file(path.string(), poly_to_json(p));
  CHECK(poly_from_json(read_file(path.string())) == p);
  std::filesystem::remove(path);
}
