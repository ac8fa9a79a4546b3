#include "hamlie/bilinear.hpp"

#include <algorithm>
#include <stdexcept>

#include "hamlie/errors.hpp"

namespace hamlie {

namespace {

using M3 = std::array<FieldElem, 9>;

FieldElem form(const Matrix& b, const Vec& x, const Vec& y) {
  const Field& f = b.field();
  const Vec by = b.apply(y);
  FieldElem s = kZero;
  for (std::size_t i = 0; i < x.size(); ++i) s += f.mul(x[i], by[i]);
  return s;
}

// q(v) = l(v)^2 with l(v) = sum sqrt(b_ii) v_i.
Vec sqrt_diagonal(const Matrix& b) {
  Vec l(b.rows());
  for (int i = 0; i < b.rows(); ++i) l[i] = b.field().sqrt(b(i, i));
  return l;
}

FieldElem dot(const Field& f, const Vec& a, const Vec& b) {
  FieldElem s = kZero;
  for (std::size_t i = 0; i < a.size(); ++i) s += f.mul(a[i], b[i]);
  return s;
}

// Scales v so that b(v, v) = 1.
Vec unit_norm(const Field& f, const Vec& l, const Vec& v) {
  const FieldElem lv = dot(f, l, v);
  if (lv.is_zero()) throw std::logic_error("unit_norm of an isotropic vector");
  return scaled(f, f.inv(lv), v);
}

Matrix meet(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 || b.rows() == 0) return Matrix(0, a.cols(), a.field());
  return intersect_rowspaces(a, b);
}

Matrix columns(const Field& f, const std::vector<Vec>& cols) {
  return Matrix::from_rows(f, static_cast<int>(cols.front().size()), cols).transpose();
}

// Orthonormal basis of a 2-dimensional non-alternating plane.
std::pair<Vec, Vec> orthonormal_plane(const Matrix& b, const Vec& l, const Matrix& plane) {
  const Field& f = b.field();
  Vec x;
  for (const Vec& cand : {plane.row(0), plane.row(1)})
    if (!dot(f, l, cand).is_zero()) x = cand;
  if (x.empty()) {
    Vec s = plane.row(0);
    axpy(f, kOne, plane.row(1), s);
    x = s;
  }
  x = unit_norm(f, l, x);
  Matrix xm = Matrix::from_rows(f, 3, {x});
  const Matrix rest = meet(orthogonal_complement(b, xm), plane);
  return {x, unit_norm(f, l, rest.row(0))};
}

std::vector<int> distinct_heights(const Heights& h) {
  std::vector<int> s = h.values();
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Canonical finish(const BilinPair& p, BilinTag tag, const std::vector<Vec>& cols, bool rewritten) {
  const Field& f = p.field();
  Matrix change = columns(f, cols);
  std::vector<int> hs;
  for (const Vec& c : cols) hs.push_back(vector_height(p.heights, c));
  Canonical out{tag, change, Heights(hs), rewritten};
  if (!(change.transpose() * p.b * change == canonical_matrix(tag, f)) ||
      !flag_compatible(change, p.heights, out.heights)) {
    throw std::logic_error("canonicalize produced an inconsistent basis");
  }
  return out;
}

FieldElem det3(const Field& f, const M3& m) {
  auto mu = [&](FieldElem a, FieldElem b) { return f.mul(a, b); };
  return mu(m[0], mu(m[4], m[8]) + mu(m[5], m[7])) + mu(m[1], mu(m[3], m[8]) + mu(m[5], m[6])) +
         mu(m[2], mu(m[3], m[7]) + mu(m[4], m[6]));
}

// Calls visit(P, P^T B P) for every flag-compatible P from a.heights to target
// with nonzero determinant; stops when visit returns true.
template <typename Visit>
bool enumerate_congruences(const BilinPair& a, const Heights& target, Visit&& visit) {
  const Field& f = a.field();
  if (f.k() > 2) throw BoundExceeded("brute-force congruence search is limited to GF(2) and GF(4)");
  std::vector<int> free;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a.heights[i] <= target[j]) free.push_back(3 * i + j);
  const std::uint32_t q = f.order();
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < free.size(); ++t) total *= q;
  M3 b;
  for (int i = 0; i < 9; ++i) b[i] = a.b(i / 3, i % 3);
  for (std::uint64_t code = 0; code < total; ++code) {
    M3 p{};
    std::uint64_t c = code;
    for (int idx : free) {
      p[idx] = FieldElem{static_cast<std::uint32_t>(c % q)};
      c /= q;
    }
    if (det3(f, p).is_zero()) continue;
    M3 bp{}, r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        FieldElem s = kZero;
        for (int k = 0; k < 3; ++k) s += f.mul(b[3 * i + k], p[3 * k + j]);
        bp[3 * i + j] = s;
      }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        FieldElem s = kZero;
        for (int k = 0; k < 3; ++k) s += f.mul(p[3 * k + i], bp[3 * k + j]);
        r[3 * i + j] = s;
      }
    if (visit(p, r)) return true;
  }
  return false;
}

std::uint32_t pack(const M3& r) {
  const int idx[6] = {0, 1, 2, 4, 5, 8};
  std::uint32_t code = 0;
  for (int t = 0; t < 6; ++t) code |= r[idx[t]].bits << (2 * t);
  return code;
}

bool same_multiset(const Heights& a, const Heights& b) {
  auto x = a.values(), y = b.values();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace

BilinPair BilinPair::from_upper(const Heights& h, const Field& f, const std::array<FieldElem, 6>& u) {
  Matrix b(3, 3, f);
  const int pos[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (int t = 0; t < 6; ++t) {
    if (!f.contains(u[t])) throw InputError("matrix entry outside the field");
    b(pos[t][0], pos[t][1]) = b(pos[t][1], pos[t][0]) = u[t];
  }
  return BilinPair{h, b};
}

void BilinPair::validate() const {
  if (heights.n() != 3) throw InputError("bilinear pairs need exactly 3 heights");
  if (b.rows() != 3 || b.cols() != 3) throw InputError("bilinear matrix must be 3x3");
  if (!(b.transpose() == b)) throw InputError("bilinear matrix is not symmetric");
  if (determinant(b).is_zero()) throw InputError("bilinear form is degenerate");
  if (b(0, 0).is_zero() && b(1, 1).is_zero() && b(2, 2).is_zero())
    throw InputError("bilinear form is alternating");
}

std::string tag_name(BilinTag t) {
  switch (t) {
    case BilinTag::B1: return "B1";
    case BilinTag::B2: return "B2";
    case BilinTag::B3: return "B3";
  }
  return "?";
}

Matrix canonical_matrix(BilinTag t, const Field& f) {
  Matrix m(3, 3, f);
  m(2, 2) = kOne;
  if (t == BilinTag::B3) {
    m(0, 0) = m(1, 1) = kOne;
  } else {
    m(0, 1) = m(1, 0) = kOne;
    if (t == BilinTag::B2) m(1, 1) = kOne;
  }
  return m;
}

Matrix flag_space(const Heights& h, const Field& f, int s) {
  std::vector<Vec> rows;
  for (int i = 0; i < h.n(); ++i)
    if (h[i] <= s) {
      Vec e(h.n(), kZero);
      e[i] = kOne;
      rows.push_back(e);
    }
  if (rows.empty()) return Matrix(0, h.n(), f);
  return Matrix::from_rows(f, h.n(), rows);
}

int vector_height(const Heights& h, const Vec& v) {
  int s = 0;
  for (int i = 0; i < h.n(); ++i)
    if (!v[i].is_zero()) s = std::max(s, h[i]);
  return s;
}

bool flag_compatible(const Matrix& p, const Heights& rows, const Heights& cols) {
  auto inv = inverse(p);
  if (!inv) return false;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      if (!p(i, j).is_zero() && rows[i] > cols[j]) return false;
      if (!(*inv)(j, i).is_zero() && cols[j] > rows[i]) return false;
    }
  return true;
}

Matrix isotropic_hyperplane(const BilinPair& p) {
  const Vec l = sqrt_diagonal(p.b);
  if (is_zero(l)) throw PreconditionError("alternating form has no isotropic hyperplane");
  return nullspace(Matrix::from_rows(p.field(), 3, {l}));
}

Matrix orthogonal_complement(const Matrix& b, const Matrix& sub) {
  if (sub.rows() == 0) return Matrix::identity(b.rows(), b.field());
  return nullspace(sub * b);
}

Canonical canonicalize(const BilinPair& p) {
  p.validate();
  const Field& f = p.field();
  const Heights& h = p.heights;
  const Vec l = sqrt_diagonal(p.b);
  const std::vector<int> levels = distinct_heights(h);

  if (levels.size() == 1) {
    // Every basis is coordinated; take v off the line orthogonal to V^0 so
    // that v^perp is non-alternating.
    const Vec u0 = inverse(p.b)->apply(l);
    Vec v;
    for (std::uint32_t mask = 1; mask < 8 && v.empty(); ++mask) {
      Vec c(3, kZero);
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) c[i] = kOne;
      if (dot(f, l, c).is_zero()) continue;
      Subspace line(3, f);
      line.insert(u0);
      if (line.contains(c)) continue;
      v = unit_norm(f, l, c);
    }
    const auto [x, y] = orthonormal_plane(p.b, l, orthogonal_complement(p.b, Matrix::from_rows(f, 3, {v})));
    return finish(p, BilinTag::B3, {x, y, v}, false);
  }

  // v with b(v, v) = 1 in V_{m_q} ∩ V_{m_{q-1}}^perp for heights sorted ascending.
  std::vector<int> sorted = h.values();
  std::sort(sorted.begin(), sorted.end());
  Vec v;
  Matrix prev(0, 3, f);
  for (int q = 0; q < 3 && v.empty(); ++q) {
    const Matrix cur = flag_space(h, f, sorted[q]);
    const Matrix s = meet(cur, orthogonal_complement(p.b, prev));
    for (int r = 0; r < s.rows() && v.empty(); ++r)
      if (!dot(f, l, s.row(r)).is_zero()) v = unit_norm(f, l, s.row(r));
    prev = cur;
  }
  if (v.empty()) throw PreconditionError("no anisotropic vector along the flag");
  const int hv = vector_height(h, v);

  // Basis {f1, f2} of v^perp coordinated with the induced flag.
  const Matrix plane = orthogonal_complement(p.b, Matrix::from_rows(f, 3, {v}));
  Subspace acc(3, f);
  std::vector<Vec> adapted;
  for (int s : levels) {
    const Matrix piece = meet(flag_space(h, f, s), plane);
    for (int r = 0; r < piece.rows(); ++r)
      if (acc.insert(piece.row(r))) adapted.push_back(piece.row(r));
  }
  const Vec f1 = adapted.at(0), f2 = adapted.at(1);
  const int h1 = vector_height(h, f1), h2 = vector_height(h, f2);
  const FieldElem a = form(p.b, f1, f1), c = form(p.b, f1, f2), d = form(p.b, f2, f2);

  if (a.is_zero() && d.is_zero()) {
    return finish(p, BilinTag::B1, {f1, scaled(f, f.inv(c), f2), v}, false);
  }
  if (h1 == h2) {
    const auto [x, y] = orthonormal_plane(p.b, l, plane);
    return finish(p, BilinTag::B3, {x, y, v}, false);
  }
  if (!a.is_zero()) {
    const Vec x = unit_norm(f, l, f1);
    const Matrix rest = meet(orthogonal_complement(p.b, Matrix::from_rows(f, 3, {x})), plane);
    return finish(p, BilinTag::B3, {x, unit_norm(f, l, rest.row(0)), v}, false);
  }
  // f1 isotropic, f2 not: the restriction is [[0,1],[1,1]] after scaling.
  const Vec w0 = scaled(f, f.inv(c), f2);
  const FieldElem mu = f.inv(f.sqrt(form(p.b, w0, w0)));
  const Vec w = scaled(f, mu, w0);
  const Vec u = scaled(f, f.inv(mu), f1);
  if (h1 <= hv && hv <= h2) {
    Vec e2 = w, e3 = v;
    axpy(f, kOne, v, e2);
    axpy(f, kOne, u, e3);
    return finish(p, BilinTag::B1, {u, e2, e3}, true);
  }
  return finish(p, BilinTag::B2, {u, w, v}, false);
}

std::array<int, 3> n_invariants(const BilinPair& p) {
  p.validate();
  const Field& f = p.field();
  const Matrix v0 = isotropic_hyperplane(p);
  const std::vector<int> levels = distinct_heights(p.heights);
  std::array<int, 3> n{0, 0, 0};
  Matrix prev(0, 3, f);
  for (std::size_t r = 0; r < levels.size(); ++r) {
    const Matrix cur = flag_space(p.heights, f, levels[r]);
    const Matrix x = meet(cur, orthogonal_complement(p.b, prev));
    n[r] = x.rows() - meet(x, v0).rows();
    prev = cur;
  }
  return n;
}

bool pairs_equivalent(const Canonical& a, const Canonical& b) {
  if (a.tag != b.tag) return false;
  const Heights& x = a.heights;
  const Heights& y = b.heights;
  switch (a.tag) {
    case BilinTag::B1:
      return x[2] == y[2] && std::minmax(x[0], x[1]) == std::minmax(y[0], y[1]);
    case BilinTag::B2:
      return x == y;
    case BilinTag::B3:
      return same_multiset(x, y);
  }
  return false;
}

bool pairs_equivalent(const BilinPair& a, const BilinPair& b) {
  return pairs_equivalent(canonicalize(a), canonicalize(b));
}

bool brute_force_equivalent(const BilinPair& a, const BilinPair& b) {
  a.validate();
  b.validate();
  if (!(a.field() == b.field())) throw InputError("pairs are over different fields");
  if (!same_multiset(a.heights, b.heights)) return false;
  M3 target;
  for (int i = 0; i < 9; ++i) target[i] = b.b(i / 3, i % 3);
  return enumerate_congruences(a, b.heights, [&](const M3&, const M3& r) { return r == target; });
}

std::set<std::uint32_t> congruence_orbit(const BilinPair& a, const Heights& target) {
  std::set<std::uint32_t> out;
  if (!same_multiset(a.heights, target)) return out;
  enumerate_congruences(a, target, [&](const M3&, const M3& r) {
    out.insert(pack(r));
    return false;
  });
  return out;
}

std::uint32_t pack_upper(const Matrix& b) {
  M3 r;
  for (int i = 0; i < 9; ++i) r[i] = b(i / 3, i % 3);
  return pack(r);
}

std::vector<Matrix> all_nonalternating_forms(const Field& f) {
  if (f.k() > 2) throw BoundExceeded("form enumeration is limited to GF(2) and GF(4)");
  const std::uint32_t q = f.order();
  std::vector<Matrix> out;
  std::uint32_t total = 1;
  for (int t = 0; t < 6; ++t) total *= q;
  for (std::uint32_t code = 0; code < total; ++code) {
    std::array<FieldElem, 6> u;
    std::uint32_t c = code;
    for (auto& e : u) {
      e = FieldElem{c % q};
      c /= q;
    }
    if (u[0].is_zero() && u[3].is_zero() && u[5].is_zero()) continue;
    BilinPair p = BilinPair::from_upper(Heights({1, 1, 1}), f, u);
    if (determinant(p.b).is_zero()) continue;
    out.push_back(p.b);
  }
  return out;
}

}  // namespace hamlie
