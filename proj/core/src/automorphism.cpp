#include "hamlie/automorphism.hpp"

#include <algorithm>
#include <sstream>

#include "hamlie/errors.hpp"

namespace hamlie {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Verdict fail(std::string why) { return Verdict{false, std::move(why)}; }
Verdict pass() { return Verdict{true, ""}; }

std::string idx(int i) { return "x" + std::to_string(i + 1); }

Verdict check_linear(const LinearGen& g, const Heights& h, const Field& f) {
  const int n = h.n();
  const Heights t = g.target.value_or(h);
  if (t.n() != n) return fail("target has a different number of variables");
  if (g.m.rows() != n || g.m.cols() != n) return fail("matrix is not n x n");
  if (!(g.m.field() == f)) return fail("matrix is over a different field");
  auto inv = inverse(g.m);
  if (!inv) return fail("matrix is singular");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!g.m(i, j).is_zero() && t[j] < h[i]) {
        return fail("image of " + idx(i) + " uses y" + std::to_string(j + 1) + " of smaller height");
      }
      if (!(*inv)(j, i).is_zero() && h[i] < t[j]) {
        return fail("inverse image of y" + std::to_string(j + 1) + " uses " + idx(i) +
                    " of smaller height");
      }
    }
  return pass();
}

Verdict check_addsub(const AddSubGen& g, const Heights& h, const Field& f) {
  const int n = h.n();
  if (g.i < 0 || g.j < 0 || g.i >= n || g.j >= n) return fail("index out of range");
  if (g.i == g.j) return fail("substitution index equals source index");
  if (g.t < 0) return fail("negative 2-power exponent");
  if (!f.contains(g.c)) return fail("coefficient outside the field");
  if (g.t + h[g.i] > h[g.j]) {
    return fail("t + m_" + std::to_string(g.i + 1) + " exceeds m_" + std::to_string(g.j + 1));
  }
  return pass();
}

Verdict check_scale(const ScaleGen& g, const Heights& h, const Field& f) {
  if (static_cast<int>(g.c.size()) != h.n()) return fail("wrong number of scaling factors");
  for (FieldElem c : g.c) {
    if (c.is_zero()) return fail("zero scaling factor");
    if (!f.contains(c)) return fail("scaling factor outside the field");
  }
  return pass();
}

Verdict check_subst(const SubstGen& g, const Heights& h, const Field& f) {
  if (g.i < 0 || g.i >= h.n()) return fail("index out of range");
  if (!(g.h.heights() == h) || !(g.h.field() == f)) return fail("substituted polynomial lives elsewhere");
  if (!g.h.constant_term().is_zero()) return fail("substituted polynomial has a constant term");
  if (g.h.has_top_power()) return fail("substituted polynomial contains a top power");
  for (const auto& [m, c] : g.h.terms()) {
    // Linear terms would change the linear part and need a flag check; keep the family tangent.
    if (m.degree() < 2) return fail("substituted polynomial has a linear term");
  }
  Poly img = Poly::variable(h, f, g.i) + g.h;
  const auto pw = divided_powers_upto(img, h.bound(g.i) + 1);
  for (std::uint32_t r = 0; r <= h.bound(g.i); ++r) {
    if (!pw[r]) return fail("divided power " + std::to_string(r) + " of the image is undefined");
  }
  if (pw.back()) return fail("image of the top power is defined, the map is not admissible");
  // sigma(h) = h makes the substitution an involution.
  std::vector<Poly> imgs = images(g, h, f);
  Poly sh(h, f);
  for (const auto& [m, c] : g.h.terms()) {
    Poly term = Poly::constant(h, f, c);
    for (int k = 0; k < h.n(); ++k) {
      if (m[k] == 0) continue;
      term = poly_mul(term, divided_power(imgs[k], m[k]));
    }
    sh += term;
  }
  if (!(sh == g.h)) return fail("substitution does not fix its own polynomial");
  return pass();
}

Poly image_of(const std::vector<std::vector<std::optional<Poly>>>& pw, const Monomial& m,
              const Heights& target, const Field& f) {
  Poly out = Poly::constant(target, f, kOne);
  for (std::size_t i = 0; i < pw.size(); ++i) {
    if (m[static_cast<int>(i)] == 0) continue;
    const auto& p = pw[i][m[static_cast<int>(i)]];
    if (!p) throw PreconditionError("undefined divided power in an automorphism image");
    out = poly_mul(out, *p);
    if (out.is_zero()) break;
  }
  return out;
}

Poly apply_gen(const AutoGen& g, const Heights& h, const Field& f, const Poly& p) {
  if (!(p.heights() == h) || !(p.field() == f)) throw InputError("polynomial does not match the word");
  if (p.has_top_power()) throw PreconditionError("automorphisms act on O(F) only");
  const Heights t = target_heights(g, h);
  const std::vector<Poly> img = images(g, h, f);
  std::vector<std::uint32_t> need(h.n(), 0);
  for (const auto& [m, c] : p.terms())
    for (int i = 0; i < h.n(); ++i) need[i] = std::max(need[i], m[i]);
  std::vector<std::vector<std::optional<Poly>>> pw(h.n());
  for (int i = 0; i < h.n(); ++i) pw[i] = divided_powers_upto(img[i], need[i]);
  Poly out(t, f);
  for (const auto& [m, c] : p.terms()) out += image_of(pw, m, t, f).scaled(c);
  return out;
}

Form1 apply_gen_form1(const AutoGen& g, const Heights& h, const Field& f, const Form1& w) {
  const std::vector<Poly> img = images(g, h, f);
  const Heights t = target_heights(g, h);
  Form1 out = Form1::zero(t, f);
  for (int i = 0; i < h.n(); ++i) {
    if (w.comps[i].is_zero()) continue;
    const Poly c = apply_gen(g, h, f, w.comps[i]);
    const Form1 di = differential(img[i]);
    for (int k = 0; k < t.n(); ++k) out.comps[k] += poly_mul(c, di.comps[k]);
  }
  return out;
}

Form2 apply_gen_form2(const AutoGen& g, const Heights& h, const Field& f, const Form2& w) {
  const std::vector<Poly> img = images(g, h, f);
  const Heights t = target_heights(g, h);
  std::vector<Form1> d;
  for (const auto& p : img) d.push_back(differential(p));
  Form2 out(t, f);
  for (int i = 0; i < h.n(); ++i) {
    if (!w.square(i).is_zero()) out += square_of_1form(d[i]).times(apply_gen(g, h, f, w.square(i)));
    for (int j = i + 1; j < h.n(); ++j) {
      if (w.mixed(i, j).is_zero()) continue;
      out += product_of_1forms(d[i], d[j]).times(apply_gen(g, h, f, w.mixed(i, j)));
    }
  }
  return out;
}

AutoGen invert_gen(const AutoGen& g, const Heights& h, const Field& f) {
  return std::visit(
      overloaded{
          [&](const LinearGen& l) -> AutoGen { return LinearGen{*inverse(l.m), h}; },
          [&](const AddSubGen& a) -> AutoGen { return a; },
          [&](const ScaleGen& s) -> AutoGen {
            ScaleGen out;
            for (FieldElem c : s.c) out.c.push_back(f.inv(c));
            return out;
          },
          [&](const SubstGen& s) -> AutoGen { return s; },
      },
      g);
}

}  // namespace

Heights target_heights(const AutoGen& g, const Heights& h) {
  if (const auto* l = std::get_if<LinearGen>(&g)) return l->target.value_or(h);
  return h;
}

Verdict check_admissible(const AutoGen& g, const Heights& h, const Field& f) {
  return std::visit(overloaded{
                        [&](const LinearGen& l) { return check_linear(l, h, f); },
                        [&](const AddSubGen& a) { return check_addsub(a, h, f); },
                        [&](const ScaleGen& s) { return check_scale(s, h, f); },
                        [&](const SubstGen& s) { return check_subst(s, h, f); },
                    },
                    g);
}

std::string describe(const AutoGen& g) {
  return std::visit(
      overloaded{
          [](const LinearGen& l) {
            std::ostringstream os;
            os << "linear[";
            for (int i = 0; i < l.m.rows(); ++i) {
              if (i) os << ";";
              for (int j = 0; j < l.m.cols(); ++j) os << (j ? "," : "") << l.m(i, j).bits;
            }
            os << "]";
            if (l.target) os << "->(" << l.target->str() << ")";
            return os.str();
          },
          [](const AddSubGen& a) {
            return idx(a.i) + " -> " + idx(a.i) + " + [" + std::to_string(a.c.bits) + "]*" + idx(a.j) +
                   "^(" + std::to_string(1u << a.t) + ")";
          },
          [](const ScaleGen& s) {
            std::string out = "scale(";
            for (std::size_t i = 0; i < s.c.size(); ++i) out += (i ? "," : "") + std::to_string(s.c[i].bits);
            return out + ")";
          },
          [](const SubstGen& s) { return idx(s.i) + " -> " + idx(s.i) + " + " + s.h.str(); },
      },
      g);
}

std::vector<Poly> images(const AutoGen& g, const Heights& h, const Field& f) {
  const Heights t = target_heights(g, h);
  std::vector<Poly> out;
  for (int i = 0; i < h.n(); ++i) out.push_back(Poly::variable(t, f, i));
  std::visit(overloaded{
                 [&](const LinearGen& l) {
                   for (int i = 0; i < h.n(); ++i) {
                     Poly p(t, f);
                     for (int j = 0; j < t.n(); ++j)
                       if (!l.m(i, j).is_zero()) p.add_term(Monomial::unit(j), l.m(i, j));
                     out[i] = p;
                   }
                 },
                 [&](const AddSubGen& a) {
                   out[a.i].add_term(Monomial::unit(a.j, 1u << a.t), a.c);
                 },
                 [&](const ScaleGen& s) {
                   for (int i = 0; i < h.n(); ++i) out[i] = out[i].scaled(s.c[i]);
                 },
                 [&](const SubstGen& s) { out[s.i] += s.h; },
             },
             g);
  return out;
}

Heights Admissible::target() const { return height_chain().back(); }

std::vector<Heights> Admissible::height_chain() const {
  std::vector<Heights> chain{source};
  for (const auto& g : word) chain.push_back(target_heights(g, chain.back()));
  return chain;
}

Verdict Admissible::validate() const {
  Heights h = source;
  for (std::size_t k = 0; k < word.size(); ++k) {
    Verdict v = check_admissible(word[k], h, field);
    if (!v) return fail("generator " + std::to_string(k + 1) + " (" + describe(word[k]) + "): " + v.reason);
    h = target_heights(word[k], h);
  }
  return pass();
}

Admissible& Admissible::then(AutoGen g) {
  word.push_back(std::move(g));
  return *this;
}

namespace {

void require_valid(const Admissible& s) {
  Verdict v = s.validate();
  if (!v) throw PreconditionError("invalid automorphism word: " + v.reason);
}

}  // namespace

Poly apply_poly(const Admissible& s, const Poly& f) {
  require_valid(s);
  if (!(f.heights() == s.source)) throw InputError("polynomial heights do not match the word source");
  Poly p = f;
  Heights h = s.source;
  for (const auto& g : s.word) {
    p = apply_gen(g, h, s.field, p);
    h = target_heights(g, h);
  }
  return p;
}

Form1 apply_form1(const Admissible& s, const Form1& w) {
  require_valid(s);
  if (!(w.heights() == s.source)) throw InputError("form heights do not match the word source");
  Form1 out = w;
  Heights h = s.source;
  for (const auto& g : s.word) {
    out = apply_gen_form1(g, h, s.field, out);
    h = target_heights(g, h);
  }
  return out;
}

Form2 apply_form2(const Admissible& s, const Form2& w) {
  require_valid(s);
  if (!(w.heights() == s.source)) throw InputError("form heights do not match the word source");
  Form2 out = w;
  Heights h = s.source;
  for (const auto& g : s.word) {
    out = apply_gen_form2(g, h, s.field, out);
    h = target_heights(g, h);
  }
  return out;
}

Derivation apply_derivation(const Admissible& s, const Derivation& d) {
  const Admissible inv = invert(s);
  const Heights t = s.target();
  Derivation out = Derivation::zero(t, s.field);
  for (int k = 0; k < t.n(); ++k) {
    const Poly yk = Poly::variable(t, s.field, k);
    out.coeffs[k] = apply_poly(s, der_apply(d, apply_poly(inv, yk)));
  }
  return out;
}

Admissible compose(const Admissible& s1, const Admissible& s2) {
  if (!(s2.target() == s1.source)) {
    throw InputError("cannot compose: heights " + s2.target().str() + " vs " + s1.source.str());
  }
  if (!(s1.field == s2.field)) throw InputError("cannot compose words over different fields");
  Admissible out = s2;
  out.word.insert(out.word.end(), s1.word.begin(), s1.word.end());
  return out;
}

Admissible invert(const Admissible& s) {
  require_valid(s);
  const auto chain = s.height_chain();
  Admissible out{s.target(), s.field, {}};
  for (std::size_t k = s.word.size(); k-- > 0;) out.word.push_back(invert_gen(s.word[k], chain[k], s.field));
  return out;
}

Matrix dense_matrix(const Admissible& s) {
  const auto src = monomial_basis(s.source);
  const Heights t = s.target();
  const auto dst = monomial_basis(t);
  std::map<Monomial, int> pos;
  for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = static_cast<int>(i);
  Matrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()), s.field);
  for (std::size_t c = 0; c < src.size(); ++c) {
    const Poly img = apply_poly(s, Poly::monomial(s.source, s.field, src[c]));
    for (const auto& [mono, v] : img.terms()) m(pos.at(mono), static_cast<int>(c)) = v;
  }
  return m;
}

AutoGen swap_gen(int i, int j, const Heights& h, const Field& f) {
  Matrix m = Matrix::identity(h.n(), f);
  m(i, i) = kZero;
  m(j, j) = kZero;
  m(i, j) = kOne;
  m(j, i) = kOne;
  return LinearGen{m, h.swapped(i, j)};
}

Form2 cross_term_form(const Heights& h, const Field& f, FieldElem c13, FieldElem c23) {
  if (h.n() != 3 || h[2] != 1) throw InputError("cross-term forms need three variables with m3 = 1");
  Form2 w = builtin_form(1, h, f);
  Monomial a = Monomial::unit(0, h.bound(0));
  a[2] = 1;
  Monomial b = Monomial::unit(1, h.bound(1));
  b[2] = 1;
  w.mixed(0, 2) = Poly::monomial(h, f, a, c13);
  w.mixed(1, 2) = Poly::monomial(h, f, b, c23);
  return w;
}

Poly integrate(int i, const Poly& f) {
  Poly out(f.heights(), f.field());
  for (const auto& [m, c] : f.terms()) {
    Monomial up = m;
    ++up[i];
    if (!in_range(up, f.heights())) {
      throw PreconditionError("cannot integrate " + monomial_str(m, f.heights()) + " in " + idx(i));
    }
    out.add_term(up, c);
  }
  return out;
}

namespace {

// Finds h with d_1 h = r13, d_2 h = r23 and no x1-free term depending on x2 twice.
Poly primitive(const Poly& r13, const Poly& r23) {
  Poly h = integrate(0, r13);
  const Poly rest = r23 + partial(1, h);
  for (const auto& [m, c] : rest.terms()) {
    if (m[0] != 0) throw PreconditionError("residual is not exact: mixed partials disagree");
  }
  h += integrate(1, rest);
  if (!(partial(0, h) == r13) || !(partial(1, h) == r23)) {
    throw PreconditionError("residual is not exact");
  }
  return h;
}

}  // namespace

Elimination eliminate_cross_term(const Heights& h, const Field& f, FieldElem c13, FieldElem c23) {
  const Form2 start = cross_term_form(h, f, c13, c23);
  Elimination e{Admissible::identity(h, f), start, c13, false, 0};
  const bool first_low = h[0] <= h[1];
  if (!c13.is_zero() && !c23.is_zero()) {
    if (first_low) {
      const int s = h[0];
      const FieldElem k = f.div(f.root2s(c23, s), f.root2s(c13, s));
      e.word.then(AddSubGen{0, 1, h[1] - h[0], k});
    } else {
      const int s = h[1];
      const FieldElem k = f.div(f.root2s(c13, s), f.root2s(c23, s));
      e.word.then(AddSubGen{1, 0, h[0] - h[1], k});
    }
  }
  // The surviving coefficient; a surviving c23 is moved onto x1 by the swap.
  const bool keep_second = first_low ? c13.is_zero() && !c23.is_zero() : !c23.is_zero();
  const FieldElem kept = keep_second ? c23 : c13;
  const Form2 goal = keep_second ? cross_term_form(h, f, kZero, kept) : cross_term_form(h, f, kept, kZero);

  e.result = apply_form2(e.word, start);
  for (int round = 0; round < 4 && !(e.result == goal); ++round) {
    const Form2 diff = e.result + goal;
    for (int i = 0; i < 3; ++i) {
      if (!diff.square(i).is_zero()) throw PreconditionError("residual has square terms");
    }
    if (!diff.mixed(0, 1).is_zero()) throw PreconditionError("residual has a dx1dx2 term");
    // x3 -> x3 + h shifts the dx_k dx3 coefficients by d_k h.
    e.word.then(SubstGen{2, primitive(diff.mixed(0, 2), diff.mixed(1, 2))});
    ++e.corrections;
    e.result = apply_form2(e.word, start);
  }
  if (!(e.result == goal)) throw PreconditionError("elimination did not converge");

  if (keep_second) {
    e.word.then(swap_gen(0, 1, e.word.target(), f));
    e.result = apply_form2(e.word, start);
    e.swapped = true;
  }
  e.c = kept;
  return e;
}

AutoGen normalize_coefficient(const Heights& h, const Field& f, FieldElem c) {
  if (c.is_zero()) throw PreconditionError("cannot normalize a zero coefficient");
  const FieldElem ct = f.root2s(c, h[0]);
  return ScaleGen{{f.inv(ct), ct, kOne}};
}

}  // namespace hamlie
