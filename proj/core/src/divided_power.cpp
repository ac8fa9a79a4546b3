#include "hamlie/divided_power.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hamlie/errors.hpp"

namespace hamlie {

Heights::Heights(std::vector<int> m) : m_(std::move(m)) {
  if (m_.empty() || static_cast<int>(m_.size()) > kMaxVars) {
    throw InputError("number of variables must lie in [1, 6]");
  }
  for (int v : m_) {
    if (v < 1 || v > kMaxHeight) {
      throw InputError("heights must lie in [1, 15], got " + std::to_string(v));
    }
  }
}

Heights Heights::parse(const std::string& text) {
  std::vector<int> m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      m.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("cannot parse heights '" + text + "'");
    }
  }
  return Heights(std::move(m));
}

int Heights::total() const { return std::accumulate(m_.begin(), m_.end(), 0); }

std::vector<int> Heights::flag_level(int j) const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (m_[i] > j) out.push_back(i);
  return out;
}

Heights Heights::swapped(int i, int j) const {
  std::vector<int> m = m_;
  std::swap(m[i], m[j]);
  return Heights(std::move(m));
}

std::string Heights::str() const {
  std::string s;
  for (int i = 0; i < n(); ++i) {
    if (i) s += ',';
    s += std::to_string(m_[i]);
  }
  return s;
}

int Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : a) d += e;
  return static_cast<int>(d);
}

bool in_range(const Monomial& m, const Heights& h) {
  for (int i = 0; i < kMaxVars; ++i) {
    if (i < h.n() ? m[i] > h.bound(i) : m[i] != 0) return false;
  }
  return true;
}

bool is_top_power(const Monomial& m, const Heights& h) {
  int hits = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    if (m[i] == 0) continue;
    if (i >= h.n() || m[i] != h.bound(i) + 1) return false;
    ++hits;
  }
  return hits == 1;
}

Monomial top_monomial(const Heights& h) {
  Monomial m;
  for (int i = 0; i < h.n(); ++i) m[i] = h.bound(i);
  return m;
}

namespace {

// Lucas: C(a+b, a) is odd iff a and b share no binary digit.
std::optional<Monomial> raw_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (int i = 0; i < kMaxVars; ++i) {
    if (a[i] & b[i]) return std::nullopt;
    out[i] = a[i] | b[i];
  }
  return out;
}

void accumulate(Poly::Terms& t, const Monomial& m, FieldElem c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

Poly::Terms raw_product(const Field& f, const Poly::Terms& x, const Poly::Terms& y) {
  Poly::Terms out;
  for (const auto& [ma, ca] : x) {
    for (const auto& [mb, cb] : y) {
      if (auto m = raw_mul(ma, mb)) accumulate(out, *m, f.mul(ca, cb));
    }
  }
  return out;
}

// (x^(alpha))^(r) = [prod (r alpha_i)! / (alpha_i!)^r] / r! * x^(r alpha).
bool single_power_is_odd(const Monomial& alpha, std::uint32_t r) {
  if (r <= 1) return true;
  long v = -v2_factorial(r);
  for (auto e : alpha.a) {
    if (e == 0) continue;
    v += v2_factorial(static_cast<std::uint64_t>(e) * r) - static_cast<long>(r) * v2_factorial(e);
  }
  return v == 0;
}

}  // namespace

std::optional<Monomial> mono_mul(const Monomial& a, const Monomial& b, const Heights& h) {
  if (!in_range(a, h) || !in_range(b, h)) {
    throw PreconditionError("mono_mul: factors must be in-range monomials");
  }
  return raw_mul(a, b);
}

bool degree_lex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return a < b;
}

std::vector<Monomial> monomial_basis(const Heights& h) {
  std::vector<Monomial> out;
  out.reserve(h.algebra_dim());
  Monomial m;
  while (true) {
    out.push_back(m);
    int i = h.n() - 1;
    while (i >= 0 && m[i] == h.bound(i)) m[i--] = 0;
    if (i < 0) break;
    ++m[i];
  }
  std::stable_sort(out.begin(), out.end(), degree_lex_less);
  return out;
}

std::string monomial_str(const Monomial& m, const Heights& h) {
  std::string s;
  for (int i = 0; i < h.n(); ++i) {
    if (m[i] == 0) continue;
    s += "x" + std::to_string(i + 1);
    if (m[i] != 1) s += "^(" + std::to_string(m[i]) + ")";
  }
  return s.empty() ? "1" : s;
}

Poly Poly::constant(const Heights& h, const Field& f, FieldElem c) {
  return monomial(h, f, Monomial{}, c);
}

Poly Poly::monomial(const Heights& h, const Field& f, const Monomial& m, FieldElem c) {
  Poly p(h, f);
  p.add_term(m, c);
  return p;
}

Poly Poly::variable(const Heights& h, const Field& f, int i) {
  return monomial(h, f, Monomial::unit(i));
}

Poly Poly::top_power(const Heights& h, const Field& f, int i) {
  return monomial(h, f, Monomial::unit(i, h.bound(i) + 1));
}

Poly Poly::xbar(const Heights& h, const Field& f, int i) {
  return monomial(h, f, Monomial::unit(i, h.bound(i)));
}

Poly Poly::xbar(const Heights& h, const Field& f) { return monomial(h, f, top_monomial(h)); }

FieldElem Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? kZero : it->second;
}

void Poly::add_term(const Monomial& m, FieldElem c) {
  if (!in_range(m, h_) && !is_top_power(m, h_)) {
    throw InputError("monomial " + monomial_str(m, h_) + " is outside the algebra for heights " +
                     h_.str());
  }
  if (!f_.contains(c)) throw InputError("coefficient outside the field");
  accumulate(terms_, m, c);
}

bool Poly::has_top_power() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return is_top_power(t.first, h_); });
}

int Poly::min_degree() const {
  if (terms_.empty()) throw InputError("degree of the zero polynomial");
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
  return d;
}

int Poly::max_degree() const {
  if (terms_.empty()) throw InputError("degree of the zero polynomial");
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Poly Poly::homogeneous_part(int degree) const {
  Poly out(h_, f_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == degree) out.terms_.emplace(m, c);
  return out;
}

Poly Poly::without_constant() const {
  Poly out = *this;
  out.terms_.erase(Monomial{});
  return out;
}

Poly Poly::scaled(FieldElem c) const {
  Poly out(h_, f_);
  if (c.is_zero()) return out;
  for (const auto& [m, e] : terms_) out.terms_.emplace(m, f_.mul(c, e));
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  require_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, c);
  return *this;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<Monomial> keys;
  for (const auto& t : terms_) keys.push_back(t.first);
  std::sort(keys.begin(), keys.end(), degree_lex_less);
  std::string s;
  for (const auto& m : keys) {
    if (!s.empty()) s += " + ";
    const FieldElem c = terms_.at(m);
    if (c != kOne) s += "[" + std::to_string(c.bits) + "]" + (m.is_one() ? "" : "*");
    if (c != kOne && m.is_one()) continue;
    s += monomial_str(m, h_);
  }
  return s;
}

void require_compatible(const Poly& a, const Poly& b) {
  if (!(a.heights() == b.heights())) {
    throw InputError("height mismatch: " + a.heights().str() + " vs " + b.heights().str());
  }
  if (!(a.field() == b.field())) throw InputError("field mismatch");
}

Poly poly_mul(const Poly& f, const Poly& g) {
  require_compatible(f, g);
  if (f.has_top_power() || g.has_top_power()) {
    throw PreconditionError("top powers do not take part in products");
  }
  Poly out(f.heights(), f.field());
  // Carry-free sums of in-range exponents stay in range.
  for (const auto& [m, c] : raw_product(f.field(), f.terms(), g.terms())) out.add_term(m, c);
  return out;
}

Poly operator*(const Poly& f, const Poly& g) { return poly_mul(f, g); }

Poly partial(int i, const Poly& f) {
  if (i < 0 || i >= f.heights().n()) throw InputError("partial: variable index out of range");
  Poly out(f.heights(), f.field());
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    out.add_term(d, c);
  }
  return out;
}

std::vector<std::optional<Poly>> divided_powers_upto(const Poly& f, std::uint32_t rmax) {
  if (!f.constant_term().is_zero()) {
    throw PreconditionError("divided powers need a zero constant term");
  }
  if (f.has_top_power()) throw PreconditionError("divided powers of top powers are not supported");
  const Field& fld = f.field();
  // acc[s] = (sum of the terms seen so far)^(s), untruncated.
  std::vector<Poly::Terms> acc(rmax + 1);
  acc[0].emplace(Monomial{}, kOne);
  for (const auto& [alpha, c] : f.terms()) {
    std::vector<Poly::Terms> tp(rmax + 1);
    for (std::uint32_t a = 0; a <= rmax; ++a) {
      if (!single_power_is_odd(alpha, a)) continue;
      Monomial m;
      for (int i = 0; i < kMaxVars; ++i) m[i] = alpha[i] * a;
      tp[a].emplace(m, fld.pow(c, a));
    }
    std::vector<Poly::Terms> next(rmax + 1);
    for (std::uint32_t s = 0; s <= rmax; ++s) {
      for (std::uint32_t a = 0; a <= s; ++a) {
        if (tp[a].empty() || acc[s - a].empty()) continue;
        for (const auto& [m, v] : raw_product(fld, tp[a], acc[s - a])) accumulate(next[s], m, v);
      }
    }
    acc = std::move(next);
  }
  std::vector<std::optional<Poly>> out(rmax + 1);
  for (std::uint32_t s = 0; s <= rmax; ++s) {
    const bool defined = std::all_of(acc[s].begin(), acc[s].end(),
                                     [&](const auto& t) { return in_range(t.first, f.heights()); });
    if (!defined) continue;
    Poly p(f.heights(), fld);
    for (const auto& [m, v] : acc[s]) p.add_term(m, v);
    out[s] = std::move(p);
  }
  return out;
}

Poly divided_power(const Poly& f, std::uint32_t r) {
  auto powers = divided_powers_upto(f, r);
  if (!powers[r]) {
    throw UndefinedDividedPower("undefined divided power: (" + f.str() + ")^(" + std::to_string(r) +
                                ") leaves heights " + f.heights().str());
  }
  return std::move(*powers[r]);
}

Poly lambda_part(const Poly& f) {
  if (f.is_zero()) throw InputError("lambda of the zero polynomial");
  return f.homogeneous_part(f.min_degree());
}

Derivation Derivation::zero(const Heights& h, const Field& f) {
  return Derivation{std::vector<Poly>(h.n(), Poly(h, f))};
}

Derivation Derivation::basis(const Heights& h, const Field& f, int i) {
  Derivation d = zero(h, f);
  d.coeffs[i] = Poly::constant(h, f, kOne);
  return d;
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Poly& p) { return p.is_zero(); });
}

Derivation& Derivation::operator+=(const Derivation& o) {
  if (coeffs.size() != o.coeffs.size()) throw InputError("derivation size mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

std::string Derivation::str() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    const std::string c = coeffs[i].str();
    if (c != "1") s += (coeffs[i].size() > 1 ? "(" + c + ")" : c) + "*";
    s += "d" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

Poly der_apply(const Derivation& d, const Poly& f) {
  if (static_cast<int>(d.coeffs.size()) != f.heights().n()) {
    throw InputError("derivation and polynomial have different variable counts");
  }
  Poly out(f.heights(), f.field());
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
    require_compatible(d.coeffs[i], f);
    if (d.coeffs[i].is_zero()) continue;
    out += poly_mul(d.coeffs[i], partial(static_cast<int>(i), f));
  }
  return out;
}

Derivation der_commutator(const Derivation& d1, const Derivation& d2) {
  if (d1.coeffs.size() != d2.coeffs.size()) throw InputError("derivation size mismatch");
  Derivation out = Derivation::zero(d1.heights(), d1.field());
  for (std::size_t i = 0; i < d1.coeffs.size(); ++i) {
    out.coeffs[i] = der_apply(d1, d2.coeffs[i]) + der_apply(d2, d1.coeffs[i]);
  }
  return out;
}

}  // namespace hamlie
