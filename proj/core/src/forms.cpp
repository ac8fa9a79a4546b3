#include "hamlie/forms.hpp"

#include <algorithm>

#include "hamlie/errors.hpp"

namespace hamlie {

namespace {

void require_same_space(const Heights& a, const Field& fa, const Heights& b, const Field& fb) {
  if (!(a == b)) throw InputError("height mismatch: " + a.str() + " vs " + b.str());
  if (!(fa == fb)) throw InputError("field mismatch");
}

std::string wrap(const Poly& p) {
  const std::string s = p.str();
  return p.size() > 1 ? "(" + s + ")" : s;
}

std::string coeff_prefix(const Poly& p) {
  const std::string s = p.str();
  return s == "1" ? "" : wrap(p) + "*";
}

}  // namespace

Form1 Form1::zero(const Heights& h, const Field& f) {
  return Form1{std::vector<Poly>(h.n(), Poly(h, f))};
}

Form1 Form1::basis(const Heights& h, const Field& f, int i) {
  Form1 w = zero(h, f);
  w.comps[i] = Poly::constant(h, f, kOne);
  return w;
}

bool Form1::is_zero() const {
  return std::all_of(comps.begin(), comps.end(), [](const Poly& p) { return p.is_zero(); });
}

Form1& Form1::operator+=(const Form1& o) {
  if (comps.size() != o.comps.size()) throw InputError("1-form size mismatch");
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += o.comps[i];
  return *this;
}

std::string Form1::str() const {
  std::string s;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += coeff_prefix(comps[i]) + "dx" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

Form2::Form2(Heights h, Field f)
    : h_(std::move(h)), f_(f), squares_(h_.n(), Poly(h_, f_)),
      mixed_(h_.n() * (h_.n() - 1) / 2, Poly(h_, f_)) {}

int Form2::pair_index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n() || j >= n()) {
    throw InputError("mixed coefficient needs two distinct variable indices");
  }
  if (i > j) std::swap(i, j);
  // Row-major position of (i, j) in the strict upper triangle.
  return i * n() - i * (i + 1) / 2 + (j - i - 1);
}

bool Form2::is_zero() const {
  auto z = [](const Poly& p) { return p.is_zero(); };
  return std::all_of(squares_.begin(), squares_.end(), z) &&
         std::all_of(mixed_.begin(), mixed_.end(), z);
}

Form2& Form2::operator+=(const Form2& o) {
  require_same_space(h_, f_, o.h_, o.f_);
  for (int i = 0; i < n(); ++i) squares_[i] += o.squares_[i];
  for (std::size_t k = 0; k < mixed_.size(); ++k) mixed_[k] += o.mixed_[k];
  return *this;
}

Form2 Form2::times(const Poly& p) const {
  Form2 out(h_, f_);
  for (int i = 0; i < n(); ++i) out.squares_[i] = poly_mul(p, squares_[i]);
  for (std::size_t k = 0; k < mixed_.size(); ++k) out.mixed_[k] = poly_mul(p, mixed_[k]);
  return out;
}

Form2 Form2::scaled(FieldElem c) const {
  Form2 out(h_, f_);
  for (int i = 0; i < n(); ++i) out.squares_[i] = squares_[i].scaled(c);
  for (std::size_t k = 0; k < mixed_.size(); ++k) out.mixed_[k] = mixed_[k].scaled(c);
  return out;
}

std::string Form2::str() const {
  std::string s;
  auto add = [&](const std::string& t) { s += (s.empty() ? "" : " + ") + t; };
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (!mixed(i, j).is_zero())
        add(coeff_prefix(mixed(i, j)) + "dx" + std::to_string(i + 1) + "dx" + std::to_string(j + 1));
  for (int i = 0; i < n(); ++i)
    if (!squares_[i].is_zero()) add(coeff_prefix(squares_[i]) + "(dx" + std::to_string(i + 1) + ")^(2)");
  return s.empty() ? "0" : s;
}

void Form3::add(const Key& key, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = coeffs.try_emplace(key, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

Poly Form3::coeff(const Key& key) const {
  auto it = coeffs.find(key);
  return it == coeffs.end() ? Poly(h, f) : it->second;
}

std::string Form3::str() const {
  std::string s;
  for (const auto& [key, p] : coeffs) {
    if (!s.empty()) s += " + ";
    s += coeff_prefix(p);
    for (int i = 0; i < kMaxVars; ++i) {
      if (key[i] == 0) continue;
      s += key[i] == 1 ? "dx" + std::to_string(i + 1)
                       : "(dx" + std::to_string(i + 1) + ")^(" + std::to_string(key[i]) + ")";
    }
  }
  return s.empty() ? "0" : s;
}

Form1 differential(const Poly& f) {
  Form1 w = Form1::zero(f.heights(), f.field());
  for (int k = 0; k < f.heights().n(); ++k) w.comps[k] = partial(k, f);
  return w;
}

Form2 differential(const Form1& w) {
  const Heights& h = w.heights();
  Form2 out(h, w.field());
  // dx_i dx_i = 2 (dx_i)^(2) vanishes, so only mixed terms survive.
  for (int k = 0; k < h.n(); ++k)
    for (int i = k + 1; i < h.n(); ++i)
      out.mixed(k, i) = partial(k, w.comps[i]) + partial(i, w.comps[k]);
  return out;
}

Form3 differential(const Form2& w) {
  const int n = w.n();
  Form3 out{w.heights(), w.field(), {}};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      // dx_k (dx_i)^(2); for k = i this is 3 (dx_i)^(3).
      Form3::Key key{};
      key[i] = 2;
      key[k] += 1;
      out.add(key, partial(k, w.square(i)));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        Form3::Key key{};
        key[i] = key[j] = key[k] = 1;
        out.add(key, partial(k, w.mixed(i, j)));
      }
    }
  }
  return out;
}

ClosedResult is_closed(const Form2& w) {
  Form3 r = differential(w);
  const bool closed = r.is_zero();
  return ClosedResult{closed, std::move(r)};
}

bool is_closed_by_coefficients(const Form2& w) {
  if (w.n() != 3) throw InputError("coefficient criterion is stated for three variables");
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (!partial(k, w.square(i)).is_zero()) return false;
  const Poly s = partial(0, w.mixed(1, 2)) + partial(1, w.mixed(0, 2)) + partial(2, w.mixed(0, 1));
  return s.is_zero();
}

bool is_nonalternating(const Form2& w) {
  for (int i = 0; i < w.n(); ++i)
    if (!w.square(i).is_zero()) return true;
  return false;
}

PolyMatrix gram(const Form2& w) {
  const int n = w.n();
  PolyMatrix g(n, std::vector<Poly>(n, Poly(w.heights(), w.field())));
  for (int a = 0; a < n; ++a) {
    g[a][a] = w.square(a);
    for (int b = 0; b < n; ++b)
      if (a != b) g[a][b] = w.mixed(a, b);
  }
  return g;
}

Matrix gram_at_zero(const Form2& w) {
  const PolyMatrix g = gram(w);
  Matrix m(w.n(), w.n(), w.field());
  for (int a = 0; a < w.n(); ++a)
    for (int b = 0; b < w.n(); ++b) m(a, b) = g[a][b].constant_term();
  return m;
}

bool is_nondegenerate(const Form2& w) { return !determinant(gram_at_zero(w)).is_zero(); }

Poly unit_inverse(const Poly& u) {
  const FieldElem c = u.constant_term();
  if (c.is_zero()) throw PreconditionError("element is not a unit of the local ring");
  if (u.has_top_power()) throw PreconditionError("top powers are not invertible");
  // u = c (1 + nu) with nu nilpotent: u^{-1} = c^{-1} sum_t (-nu)^t.
  const FieldElem ci = u.field().inv(c);
  const Poly one = Poly::constant(u.heights(), u.field(), kOne);
  const Poly nu = u.scaled(ci) + one;
  Poly sum = one;
  Poly power = one;
  while (true) {
    power = poly_mul(power, nu);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.scaled(ci);
}

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size(), m = b.front().size(), k = b.size();
  PolyMatrix out(n, std::vector<Poly>(m, Poly(a[0][0].heights(), a[0][0].field())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t)
        if (!a[i][t].is_zero() && !b[t][j].is_zero()) out[i][j] += poly_mul(a[i][t], b[t][j]);
  return out;
}

bool is_identity(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const Poly& p = m[i][j];
      if (i == j ? !(p.size() == 1 && p.constant_term() == kOne) : !p.is_zero()) return false;
    }
  return true;
}

PolyMatrix gram_inverse(const Form2& w) {
  if (!is_nondegenerate(w)) throw PreconditionError("form is degenerate: Gram determinant at 0 vanishes");
  const int n = w.n();
  PolyMatrix a = gram(w);
  PolyMatrix inv(n, std::vector<Poly>(n, Poly(w.heights(), w.field())));
  for (int i = 0; i < n; ++i) inv[i][i] = Poly::constant(w.heights(), w.field(), kOne);
  // Gauss-Jordan with unit pivots; a local ring always has one in each column.
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c].constant_term().is_zero()) ++p;
    if (p == n) throw PreconditionError("no unit pivot; form is degenerate");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Poly s = unit_inverse(a[c][c]);
    for (int k = 0; k < n; ++k) {
      a[c][k] = poly_mul(s, a[c][k]);
      inv[c][k] = poly_mul(s, inv[c][k]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Poly factor = a[r][c];
      for (int k = 0; k < n; ++k) {
        a[r][k] += poly_mul(factor, a[c][k]);
        inv[r][k] += poly_mul(factor, inv[c][k]);
      }
    }
  }
  return inv;
}

Poly eval_form2(const Form2& w, const Derivation& d1, const Derivation& d2) {
  const int n = w.n();
  if (static_cast<int>(d1.coeffs.size()) != n || static_cast<int>(d2.coeffs.size()) != n) {
    throw InputError("derivation and form have different variable counts");
  }
  require_same_space(w.heights(), w.field(), d1.heights(), d1.field());
  require_same_space(w.heights(), w.field(), d2.heights(), d2.field());
  Poly out(w.heights(), w.field());
  for (int i = 0; i < n; ++i) {
    if (w.square(i).is_zero()) continue;
    out += poly_mul(w.square(i), poly_mul(d1.coeffs[i], d2.coeffs[i]));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (w.mixed(i, j).is_zero()) continue;
      const Poly pairing = poly_mul(d1.coeffs[i], d2.coeffs[j]) + poly_mul(d2.coeffs[i], d1.coeffs[j]);
      out += poly_mul(w.mixed(i, j), pairing);
    }
  return out;
}

Form2 lie_derivative(const Derivation& d, const Form2& w) {
  const int n = w.n();
  if (static_cast<int>(d.coeffs.size()) != n) throw InputError("derivation and form have different variable counts");
  require_same_space(w.heights(), w.field(), d.heights(), d.field());
  const PolyMatrix g = gram(w);
  // [D, d_a] = sum_i d_a(f_i) d_i up to sign.
  std::vector<std::vector<Poly>> comm(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) comm[a].push_back(partial(a, d.coeffs[i]));
  auto value = [&](int a, int b) {
    Poly v = der_apply(d, g[a][b]);
    for (int i = 0; i < n; ++i) {
      if (!comm[a][i].is_zero()) v += poly_mul(comm[a][i], g[i][b]);
      if (!comm[b][i].is_zero()) v += poly_mul(comm[b][i], g[a][i]);
    }
    return v;
  };
  Form2 out(w.heights(), w.field());
  for (int a = 0; a < n; ++a) {
    out.square(a) = value(a, a);
    for (int b = a + 1; b < n; ++b) out.mixed(a, b) = value(a, b);
  }
  return out;
}

Form2 square_of_1form(const Form1& th) {
  const int n = static_cast<int>(th.comps.size());
  Form2 out(th.heights(), th.field());
  for (int j = 0; j < n; ++j) {
    out.square(j) = poly_mul(th.comps[j], th.comps[j]);
    for (int k = j + 1; k < n; ++k) out.mixed(j, k) = poly_mul(th.comps[j], th.comps[k]);
  }
  return out;
}

Form2 product_of_1forms(const Form1& a, const Form1& b) {
  const int n = static_cast<int>(a.comps.size());
  if (static_cast<int>(b.comps.size()) != n) throw InputError("1-form size mismatch");
  Form2 out(a.heights(), a.field());
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      out.mixed(j, k) = poly_mul(a.comps[j], b.comps[k]) + poly_mul(a.comps[k], b.comps[j]);
  return out;
}

Form2 builtin_form(int tag, const Heights& h, const Field& f) {
  if (h.n() != 3) throw InputError("builtin forms live in three variables");
  Form2 w(h, f);
  const Poly one = Poly::constant(h, f, kOne);
  switch (tag) {
    case 1:
      w.mixed(0, 1) = one;
      w.square(2) = one;
      break;
    case 2:
      w.mixed(0, 1) = one;
      w.square(1) = one;
      w.square(2) = one;
      break;
    case 3:
      for (int i = 0; i < 3; ++i) w.square(i) = one;
      break;
    case 4: {
      w.mixed(0, 1) = one;
      w.square(2) = one;
      Monomial m = Monomial::unit(0, h.bound(0));
      m[2] = 1;
      w.mixed(0, 2) = Poly::monomial(h, f, m);
      break;
    }
    default:
      throw InputError("unknown builtin form omega" + std::to_string(tag));
  }
  return w;
}

int builtin_tag(const std::string& name) {
  for (int t = 1; t <= 4; ++t) {
    const std::string d = std::to_string(t);
    if (name == "omega" + d || name == "w" + d || name == d) return t;
  }
  return 0;
}

}  // namespace hamlie
