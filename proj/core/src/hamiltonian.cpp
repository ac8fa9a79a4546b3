#include "hamlie/hamiltonian.hpp"

#include <algorithm>
#include <thread>

#include "hamlie/errors.hpp"

namespace hamlie {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::P: return "P";
    case Variant::Ptilde: return "Ptilde";
    case Variant::P1: return "P1";
  }
  return "?";
}

std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "P") return Variant::P;
  if (s == "Ptilde" || s == "P~") return Variant::Ptilde;
  if (s == "P1") return Variant::P1;
  return std::nullopt;
}

Form2 AlgebraSpec::form() const {
  if (form_tag == 0) {
    if (!explicit_form) throw InputError("no form given");
    return *explicit_form;
  }
  return builtin_form(form_tag, heights, field());
}

void AlgebraSpec::validate() const {
  if (heights.n() != 3) throw PreconditionError("Hamiltonian algebras here have exactly 3 variables");
  if (field_exp < 1 || field_exp > 16) throw InputError("field exponent must lie in 1..16");
  const int m1 = heights[0], m2 = heights[1], m3 = heights[2];
  if (form_tag == 2 && !(m1 < m2 && (m3 < m1 || m3 > m2)))
    throw PreconditionError("omega2 requires m1 < m2 and m3 outside [m1, m2]");
  if (form_tag == 4 && m3 != 1) throw PreconditionError("omega4 requires m3 = 1");
  if (form_tag < 0 || form_tag > 4) throw InputError("unknown form tag");
  const Form2 w = form();
  if (!(w.heights() == heights) || !(w.field() == field()))
    throw InputError("form does not match the heights or field");
  if (!is_closed(w).closed) throw PreconditionError("form is not closed");
  if (!is_nondegenerate(w)) throw PreconditionError("form is degenerate");
  if (!is_nonalternating(w)) throw PreconditionError("form is alternating");
}

std::string AlgebraSpec::name() const {
  std::string h = "(" + heights.str() + ")";
  std::string f = form_tag == 0 ? std::string("omega") : "omega" + std::to_string(form_tag);
  std::string s = variant_name(variant) + "(3," + h + "," + f + ")";
  if (field_exp != 1) s += " over GF(2^" + std::to_string(field_exp) + ")";
  return s;
}

Poly poisson_raw(const Poly& f, const Poly& g, const PolyMatrix& wbar) {
  require_compatible(f, g);
  const int n = f.heights().n();
  if (static_cast<int>(wbar.size()) != n) throw InputError("Gram inverse has the wrong size");
  std::vector<Poly> df, dg;
  for (int i = 0; i < n; ++i) {
    df.push_back(partial(i, f));
    dg.push_back(partial(i, g));
  }
  Poly out(f.heights(), f.field());
  for (int i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (dg[j].is_zero() || wbar[i][j].is_zero()) continue;
      out += wbar[i][j] * df[i] * dg[j];
    }
  }
  return out;
}

Poly poisson(const Poly& f, const Poly& g, const PolyMatrix& wbar) {
  return poisson_raw(f, g, wbar).without_constant();
}

Derivation hamiltonian_field(const Poly& f, const PolyMatrix& wbar) {
  const int n = f.heights().n();
  Derivation d = Derivation::zero(f.heights(), f.field());
  for (int j = 0; j < n; ++j) {
    const Poly dj = partial(j, f);
    if (dj.is_zero()) continue;
    for (int i = 0; i < n; ++i)
      if (!wbar[i][j].is_zero()) d.coeffs[i] += wbar[i][j] * dj;
  }
  return d;
}

std::vector<Monomial> algebra_basis(const Heights& h, Variant v) {
  std::vector<Monomial> out;
  for (const Monomial& m : monomial_basis(h))
    if (!m.is_one()) out.push_back(m);
  if (v == Variant::Ptilde) {
    for (int i = 0; i < h.n(); ++i) out.push_back(Monomial::unit(i, 1u << h[i]));
    std::stable_sort(out.begin(), out.end(), degree_lex_less);
  }
  return out;
}

Vec element_of(const LieAlg& l, const Poly& f) {
  const auto& monos = l.monomials();
  if (monos.empty()) throw InputError("algebra has no monomial labels");
  Vec v(l.dim(), kZero);
  for (const auto& [m, c] : f.terms()) {
    if (m.is_one()) continue;
    auto it = std::find(monos.begin(), monos.end(), m);
    if (it == monos.end()) throw InputError("monomial is not a basis label");
    v[it - monos.begin()] = c;
  }
  return v;
}

namespace {

LieAlg build_monomial_algebra(const AlgebraSpec& spec, Variant v) {
  const Heights& h = spec.heights;
  const Field f = spec.field();
  const PolyMatrix wbar = gram_inverse(spec.form());
  const std::vector<Monomial> basis = algebra_basis(h, v);
  const int d = static_cast<int>(basis.size());
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (const Monomial& m : basis) {
    labels.push_back(monomial_str(m, h));
    degrees.push_back(m.degree());
  }
  LieAlg l(f, labels, degrees);
  l.set_monomials(basis);
  std::vector<Poly> elems;
  for (const Monomial& m : basis) elems.push_back(Poly::monomial(h, f, m));

  // Rows are split across workers; each writes only its own table.
  std::vector<std::vector<SparseVec>> rows(d);
  auto work = [&](int start, int step) {
    for (int a = start; a < d; a += step) {
      rows[a].resize(d);
      for (int b = a + 1; b < d; ++b) {
        const Poly p = poisson(elems[a], elems[b], wbar);
        SparseVec s;
        for (const auto& [m, c] : p.terms()) {
          auto it = std::lower_bound(basis.begin(), basis.end(), m, degree_lex_less);
          if (it == basis.end() || !(*it == m)) throw std::logic_error("bracket left the basis");
          s.emplace_back(static_cast<int>(it - basis.begin()), c);
        }
        std::sort(s.begin(), s.end());
        rows[a][b] = std::move(s);
      }
    }
  };
  const int workers = std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 8));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work, w, workers);
  work(0, workers);
  for (auto& t : pool) t.join();
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) l.set_bracket(a, b, std::move(rows[a][b]));
  return l;
}

}  // namespace

LieAlg build_algebra(const AlgebraSpec& spec) {
  spec.validate();
  if (spec.variant != Variant::P1) {
    LieAlg l = build_monomial_algebra(spec, spec.variant);
    l.name = spec.name();
    return l;
  }
  const LieAlg p = build_monomial_algebra(spec, Variant::P);
  Subspace derived(p.dim(), p.field());
  for (int a = 0; a < p.dim(); ++a)
    for (int b = a + 1; b < p.dim(); ++b) derived.insert(to_dense(p.bracket(a, b), p.dim()));
  LieAlg l = derived.dim() == 0 ? LieAlg(p.field(), {}) : subalgebra(p, derived.basis_matrix());
  l.name = spec.name();
  return l;
}

}  // namespace hamlie
