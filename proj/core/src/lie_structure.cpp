#include "hamlie/lie_structure.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hamlie/errors.hpp"

namespace hamlie {

namespace {

constexpr int kExhaustiveRankDim = 16;
constexpr int kExhaustiveSpinDim = 20;
constexpr std::uint64_t kHomogeneousBound = 1ull << 20;

int worker_count() {
  return std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 16));
}

// Runs fn(begin, end) on [0, total) split into contiguous ranges.
template <typename Fn>
void parallel_ranges(std::uint64_t total, Fn&& fn) {
  const int workers = static_cast<int>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(total / 4096, 1)));
  if (workers == 1) {
    fn(std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t b = w * chunk, e = std::min(total, b + chunk);
    if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

// Structure constants as bit masks (GF(2), dim <= 64).
struct BitAlg {
  int d;
  std::vector<std::uint64_t> brk;  // brk[a * d + b]

  explicit BitAlg(const LieAlg& l) : d(l.dim()), brk(static_cast<std::size_t>(d) * d, 0) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (const auto& [g, c] : l.bracket(a, b))
          if (c.bits & 1u) brk[static_cast<std::size_t>(a) * d + b] ^= 1ull << g;
  }
  std::uint64_t bracket_with(int a, std::uint64_t w) const {
    std::uint64_t out = 0;
    while (w) {
      const int b = std::countr_zero(w);
      w &= w - 1;
      out ^= brk[static_cast<std::size_t>(a) * d + b];
    }
    return out;
  }
};

Vec from_mask(std::uint64_t m, int d) {
  Vec v(d, kZero);
  for (int i = 0; i < d; ++i)
    if (m >> i & 1) v[i] = kOne;
  return v;
}

// Echelon basis of bit vectors keyed by the highest set bit.
struct BitSpace {
  std::array<std::uint64_t, 64> piv{};
  int dim = 0;
  bool insert(std::uint64_t v) {
    while (v) {
      const int p = 63 - std::countl_zero(v);
      if (!piv[p]) {
        piv[p] = v;
        ++dim;
        return true;
      }
      v ^= piv[p];
    }
    return false;
  }
};

int bit_closure_dim(const BitAlg& b, std::uint64_t v, BitSpace& s) {
  std::uint64_t queue[64];
  int head = 0, tail = 0;
  if (s.insert(v)) queue[tail++] = v;
  while (head < tail && s.dim < b.d) {
    const std::uint64_t w = queue[head++];
    for (int a = 0; a < b.d; ++a) {
      const std::uint64_t x = b.bracket_with(a, w);
      if (x && s.insert(x)) queue[tail++] = x;
    }
  }
  return s.dim;
}

bool is_gf2(const LieAlg& l) { return l.field().k() == 1; }

Matrix rows_of(const Field& f, int cols, const std::vector<Vec>& rows) {
  if (rows.empty()) return Matrix(0, cols, f);
  return Matrix::from_rows(f, cols, rows);
}

Matrix span_basis(const Subspace& s) { return rows_of(s.field(), s.ambient_dim(), s.basis()); }

// Spins the vectors of `seed` under the matrices (v -> g v, or v -> g^T v).
Subspace spin(const std::vector<Matrix>& gens, const std::vector<Vec>& seed, bool transpose) {
  const int n = gens.front().rows();
  Subspace s(n, gens.front().field());
  std::deque<Vec> queue;
  for (const Vec& v : seed)
    if (s.insert(v)) queue.push_back(v);
  while (!queue.empty() && s.dim() < n) {
    const Vec w = queue.front();
    queue.pop_front();
    for (const Matrix& g : gens) {
      Vec x = transpose ? g.apply_left(w) : g.apply(w);
      if (!is_zero(x) && s.insert(x)) queue.push_back(std::move(x));
    }
  }
  return s;
}

std::vector<Matrix> ad_generators(const LieAlg& l) {
  std::vector<Matrix> gens;
  for (int a = 0; a < l.dim(); ++a) gens.push_back(l.ad_basis(a));
  return gens;
}

// Calls fn(v) for every projective representative of a nonzero vector in
// span(basis); v has first nonzero coordinate 1 in the basis coordinates.
template <typename Fn>
void for_each_projective(const Field& f, const std::vector<Vec>& basis, Fn&& fn) {
  const int n = static_cast<int>(basis.size());
  const std::uint64_t q = f.order();
  for (int lead = 0; lead < n; ++lead) {
    const int rest = n - lead - 1;
    std::uint64_t count = 1;
    for (int t = 0; t < rest; ++t) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      Vec v = basis[lead];
      std::uint64_t c = code;
      for (int t = lead + 1; t < n; ++t) {
        const FieldElem x{static_cast<std::uint32_t>(c % q)};
        c /= q;
        if (!x.is_zero()) axpy(f, x, basis[t], v);
      }
      fn(v);
    }
  }
}

void record(MinRank& r, int rank, Vec v, const Field& f) {
  if (r.R < 0 || rank < r.R) {
    r.R = rank;
    r.argmin.clear();
  }
  if (rank == r.R) r.argmin.push_back(projective_normal(f, std::move(v)));
}

void merge(MinRank& into, MinRank&& part) {
  into.examined += part.examined;
  if (part.R < 0) return;
  if (into.R < 0 || part.R < into.R) {
    into.R = part.R;
    into.argmin = std::move(part.argmin);
  } else if (part.R == into.R) {
    for (auto& v : part.argmin) into.argmin.push_back(std::move(v));
  }
}

MinRank exhaustive_gf2(const LieAlg& l) {
  const BitAlg b(l);
  const int d = l.dim();
  MinRank total;
  std::mutex mu;
  parallel_ranges((1ull << d) - 1, [&](std::uint64_t begin, std::uint64_t end) {
    MinRank part;
    // Gray code over i + 1, i in [begin, end).
    std::uint64_t gray = (begin + 1) ^ ((begin + 1) >> 1);
    std::vector<std::uint64_t> cols(d, 0);
    for (int a = 0; a < d; ++a)
      if (gray >> a & 1)
        for (int j = 0; j < d; ++j) cols[j] ^= b.brk[static_cast<std::size_t>(a) * d + j];
    for (std::uint64_t i = begin; i < end; ++i) {
      if (i != begin) {
        const std::uint64_t n = i + 1;
        const int a = std::countr_zero(n);
        gray ^= 1ull << a;
        for (int j = 0; j < d; ++j) cols[j] ^= b.brk[static_cast<std::size_t>(a) * d + j];
      }
      const int r = rank_gf2(cols);
      ++part.examined;
      if (part.R < 0 || r <= part.R) record(part, r, from_mask(gray, d), l.field());
    }
    std::lock_guard lock(mu);
    merge(total, std::move(part));
  });
  return total;
}

MinRank homogeneous(const LieAlg& l) {
  if (!l.has_degrees()) throw InputError("homogeneous mode needs degree metadata");
  const GradingProfile g = grading_profile(l);
  MinRank out;
  out.mode = RankMode::homogeneous;
  const std::uint64_t q = l.field().order();
  for (int t = g.min_degree; t <= g.top_degree(); ++t) {
    const std::vector<int> idx = component(l, t);
    if (idx.empty()) continue;
    long double count = 1;
    for (std::size_t s = 0; s < idx.size(); ++s) count *= q;
    if (count > static_cast<long double>(kHomogeneousBound))
      throw BoundExceeded("homogeneous component of Lie degree " + std::to_string(t) + " has " +
                          std::to_string(idx.size()) + " basis elements; enumeration bound is 2^20 vectors");
    std::vector<Vec> basis;
    for (int i : idx) basis.push_back(l.unit(i));
    if (is_gf2(l)) {
      const BitAlg b(l);
      const int d = l.dim();
      const int n = static_cast<int>(idx.size());
      std::uint64_t gray = 0;
      std::vector<std::uint64_t> cols(d, 0);
      for (std::uint64_t i = 1; i < (1ull << n); ++i) {
        const int a = idx[std::countr_zero(i)];
        gray ^= 1ull << a;
        for (int j = 0; j < d; ++j) cols[j] ^= b.brk[static_cast<std::size_t>(a) * d + j];
        ++out.examined;
        const int r = rank_gf2(cols);
        if (out.R < 0 || r <= out.R) record(out, r, from_mask(gray, d), l.field());
      }
    } else {
      for_each_projective(l.field(), basis, [&](const Vec& v) {
        ++out.examined;
        const int r = ad_rank(l, v);
        if (out.R < 0 || r <= out.R) record(out, r, v, l.field());
      });
    }
  }
  return out;
}

}  // namespace

int ad_rank(const LieAlg& l, const Vec& v) {
  if (is_gf2(l) && l.dim() <= 64) {
    const BitAlg b(l);
    std::vector<std::uint64_t> cols(l.dim(), 0);
    for (int a = 0; a < l.dim(); ++a)
      if (!v[a].is_zero())
        for (int j = 0; j < l.dim(); ++j) cols[j] ^= b.brk[static_cast<std::size_t>(a) * l.dim() + j];
    return rank_gf2(cols);
  }
  return rank(l.ad(v));
}

int witness_rank(const LieAlg& l, const Vec& d, const std::vector<Vec>& es) {
  std::vector<Vec> rows;
  for (const Vec& e : es) rows.push_back(l.bracket(d, e));
  return rank(rows_of(l.field(), l.dim(), rows));
}

Matrix bracket_span(const LieAlg& l, const Matrix& s) {
  Subspace out(l.dim(), l.field());
  for (int i = 0; i < s.rows(); ++i)
    for (int j = i + 1; j < s.rows(); ++j) {
      if (out.dim() == l.dim()) break;
      out.insert(l.bracket(s.row(i), s.row(j)));
    }
  return span_basis(out);
}

std::vector<Matrix> derived_series(const LieAlg& l) {
  std::vector<Matrix> out{Matrix::identity(l.dim(), l.field())};
  while (out.back().rows() > 0) {
    Matrix next = bracket_span(l, out.back());
    const bool same = next.rows() == out.back().rows();
    out.push_back(std::move(next));
    if (same) break;
  }
  return out;
}

std::vector<int> derived_dims(const LieAlg& l) {
  std::vector<int> dims;
  for (const Matrix& m : derived_series(l)) dims.push_back(m.rows());
  return dims;
}

bool is_perfect(const LieAlg& l) { return bracket_span(l, Matrix::identity(l.dim(), l.field())).rows() == l.dim(); }

Matrix center(const LieAlg& l) {
  const int d = l.dim();
  Matrix m(d, d * d, l.field());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (const auto& [g, c] : l.bracket(a, b)) m(a, b * d + g) = c;
  return left_kernel(m);
}

Matrix ideal_closure(const LieAlg& l, const std::vector<Vec>& gens) {
  if (l.dim() == 0) return Matrix(0, 0, l.field());
  return span_basis(spin(ad_generators(l), gens, false));
}

Matrix ideal_closure(const LieAlg& l, const Vec& v) { return ideal_closure(l, std::vector<Vec>{v}); }

Matrix normalizer_of_span(const LieAlg& l, const Matrix& s) {
  const int d = l.dim();
  Subspace sub(d, l.field());
  for (int i = 0; i < s.rows(); ++i) sub.insert(s.row(i));
  const std::vector<Vec>& sb = sub.basis();
  if (sb.empty()) return Matrix::identity(d, l.field());
  const int k = static_cast<int>(sb.size());
  Matrix m(d, d * k, l.field());
  for (int a = 0; a < d; ++a)
    for (int t = 0; t < k; ++t) {
      const Vec r = sub.reduce(l.bracket(l.unit(a), sb[t]));
      for (int g = 0; g < d; ++g) m(a, t * d + g) = r[g];
    }
  return left_kernel(m);
}

JacobiResult check_jacobi(const LieAlg& l) {
  const int d = l.dim();
  const Field& f = l.field();
  JacobiResult res;
  for (int a = 0; a < d; ++a)
    if (!l.bracket(a, a).empty()) {
      res.holds = false;
      res.counterexample = {a, a, a};
      return res;
    }
  // [[a,b],c] as a sparse accumulation into a dense scratch vector.
  auto add_bb = [&](Vec& acc, int a, int b, int c) {
    for (const auto& [g, x] : l.bracket(a, b))
      for (const auto& [h, y] : l.bracket(g, c)) acc[h] += f.mul(x, y);
  };
  Vec acc(d, kZero);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; ++c) {
        std::fill(acc.begin(), acc.end(), kZero);
        add_bb(acc, a, b, c);
        add_bb(acc, b, c, a);
        add_bb(acc, c, a, b);
        ++res.triples;
        if (!is_zero(acc)) {
          res.holds = false;
          res.counterexample = {a, b, c};
          return res;
        }
      }
  return res;
}

bool check_alternation(const LieAlg& l, std::uint64_t seed, int samples) {
  const int d = l.dim();
  if (is_gf2(l) && d <= kExhaustiveSpinDim) {
    for (std::uint64_t m = 1; m < (1ull << d); ++m) {
      const Vec v = from_mask(m, d);
      if (!is_zero(l.bracket(v, v))) return false;
    }
    return true;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    Vec v(d);
    for (auto& x : v) x = FieldElem{static_cast<std::uint32_t>(rng() % l.field().order())};
    if (!is_zero(l.bracket(v, v))) return false;
  }
  return true;
}

SimplicityResult is_simple_exhaustive(const LieAlg& l) {
  const int d = l.dim();
  if (!is_gf2(l) || d > kExhaustiveSpinDim)
    throw BoundExceeded("exhaustive simplicity needs GF(2) and dim <= " + std::to_string(kExhaustiveSpinDim));
  SimplicityResult res{false, true, "exhaustive", std::nullopt};
  if (d == 0) return res;
  const Matrix derived = bracket_span(l, Matrix::identity(d, l.field()));
  if (derived.rows() < d) {
    res.witness = derived;
    return res;
  }
  const BitAlg b(l);
  std::mutex mu;
  std::optional<std::uint64_t> found;
  parallel_ranges((1ull << d) - 1, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      BitSpace s;
      if (bit_closure_dim(b, i + 1, s) < d) {
        std::lock_guard lock(mu);
        if (!found || i + 1 < *found) found = i + 1;
        return;
      }
    }
  });
  if (found) {
    res.witness = ideal_closure(l, from_mask(*found, d));
    return res;
  }
  res.simple = true;
  return res;
}

SimplicityResult is_simple_norton(const LieAlg& l, std::uint64_t seed, int attempts) {
  const int d = l.dim();
  const Field& f = l.field();
  SimplicityResult res{false, true, "norton", std::nullopt};
  if (d == 0) return res;
  const Matrix derived = bracket_span(l, Matrix::identity(d, f));
  if (derived.rows() < d) {
    res.witness = derived;
    return res;
  }
  const std::vector<Matrix> gens = ad_generators(l);
  std::mt19937_64 rng(seed);
  auto rand_elem = [&] { return FieldElem{static_cast<std::uint32_t>(rng() % f.order())}; };
  // Random elements of the unital envelope: sums of short words minus a scalar.
  std::vector<Matrix> pool = gens;
  Matrix best;
  int best_null = d + 1;
  for (int t = 0; t < attempts && best_null > 1; ++t) {
    const Matrix& x = pool[rng() % pool.size()];
    const Matrix& y = pool[rng() % pool.size()];
    Matrix w = x * y + gens[rng() % gens.size()];
    if (pool.size() < 64) pool.push_back(w);
    Matrix theta = w;
    const FieldElem lam = rand_elem();
    for (int i = 0; i < d; ++i) theta(i, i) += lam;
    const int nullity = d - rank(theta);
    if (nullity > 0 && nullity < best_null) {
      best_null = nullity;
      best = theta;
    }
  }
  long double count = 1;
  for (int i = 0; i < best_null; ++i) count *= f.order();
  if (best_null > d || count > 1 << 14) {
    res.certified = false;
    return res;
  }
  const Matrix ker = nullspace(best);
  std::optional<Matrix> proper;
  for_each_projective(f, ker.row_vectors(), [&](const Vec& v) {
    if (proper) return;
    Subspace s = spin(gens, {v}, false);
    if (s.dim() < d) proper = span_basis(s);
  });
  if (!proper) {
    const Matrix kt = nullspace(best.transpose());
    Subspace s = spin(gens, {kt.row(0)}, true);
    // The annihilator of a proper submodule of the dual is a proper ideal.
    if (s.dim() < d) proper = nullspace(span_basis(s));
  }
  if (proper) {
    res.witness = proper;
    return res;
  }
  res.simple = true;
  return res;
}

SimplicityResult is_simple(const LieAlg& l, std::uint64_t seed) {
  SimplicityResult n = is_simple_norton(l, seed);
  if (is_gf2(l) && l.dim() <= kExhaustiveSpinDim) {
    SimplicityResult e = is_simple_exhaustive(l);
    if (n.certified && n.simple != e.simple)
      throw std::logic_error("exhaustive and Norton simplicity verdicts disagree for " + l.name);
    e.method = n.certified ? "exhaustive+norton" : "exhaustive";
    return e;
  }
  return n;
}

std::string mode_name(RankMode m) {
  switch (m) {
    case RankMode::exhaustive: return "exhaustive";
    case RankMode::homogeneous: return "homogeneous";
    case RankMode::sampled: return "sampled";
  }
  return "?";
}

std::optional<RankMode> parse_mode(const std::string& s) {
  for (RankMode m : {RankMode::exhaustive, RankMode::homogeneous, RankMode::sampled})
    if (mode_name(m) == s) return m;
  return std::nullopt;
}

MinRank min_ad_rank(const LieAlg& l, RankMode mode, std::uint64_t seed, std::uint64_t samples) {
  if (l.dim() == 0) throw PreconditionError("min_ad_rank of the zero algebra");
  MinRank out;
  switch (mode) {
    case RankMode::exhaustive:
      if (!is_gf2(l) || l.dim() > kExhaustiveRankDim)
        throw BoundExceeded("exhaustive rank search needs GF(2) and dim <= " + std::to_string(kExhaustiveRankDim));
      out = exhaustive_gf2(l);
      break;
    case RankMode::homogeneous:
      out = homogeneous(l);
      break;
    case RankMode::sampled: {
      std::mt19937_64 rng(seed);
      out.exact = false;
      for (std::uint64_t s = 0; s < samples; ++s) {
        Vec v(l.dim());
        for (auto& x : v) x = FieldElem{static_cast<std::uint32_t>(rng() % l.field().order())};
        if (is_zero(v)) continue;
        ++out.examined;
        const int r = ad_rank(l, v);
        if (out.R < 0 || r <= out.R) record(out, r, v, l.field());
      }
      break;
    }
  }
  out.mode = mode;
  std::sort(out.argmin.begin(), out.argmin.end(),
            [](const Vec& a, const Vec& b) { return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()); });
  out.argmin.erase(std::unique(out.argmin.begin(), out.argmin.end()), out.argmin.end());
  return out;
}

std::vector<int> filtration(const LieAlg& l) {
  if (!l.has_degrees()) throw InputError("algebra has no degree metadata");
  std::vector<int> out;
  for (int deg : l.degrees()) out.push_back(deg - 2);
  return out;
}

GradingProfile grading_profile(const LieAlg& l) {
  const std::vector<int> t = filtration(l);
  GradingProfile g;
  if (t.empty()) return g;
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  g.min_degree = *lo;
  g.dims.assign(*hi - *lo + 1, 0);
  for (int x : t) ++g.dims[x - *lo];
  return g;
}

std::vector<int> component(const LieAlg& l, int lie_degree) {
  std::vector<int> out;
  const std::vector<int> t = filtration(l);
  for (int i = 0; i < l.dim(); ++i)
    if (t[i] == lie_degree) out.push_back(i);
  return out;
}

LieAlg graded_algebra(const LieAlg& l) {
  const std::vector<int>& deg = l.degrees();
  if (deg.empty()) throw InputError("algebra has no degree metadata");
  LieAlg g(l.field(), l.labels(), deg);
  g.set_monomials(l.monomials());
  g.name = "gr " + l.name;
  for (int a = 0; a < l.dim(); ++a)
    for (int b = a; b < l.dim(); ++b) {
      SparseVec s;
      for (const auto& [h, c] : l.bracket(a, b))
        if (deg[h] == deg[a] + deg[b] - 2) s.emplace_back(h, c);
      g.set_bracket(a, b, std::move(s));
    }
  return g;
}

std::optional<Vec> top_line(const LieAlg& l) {
  if (!l.has_degrees() || l.dim() == 0) return std::nullopt;
  const GradingProfile g = grading_profile(l);
  const std::vector<int> idx = component(l, g.top_degree());
  if (idx.size() != 1) return std::nullopt;
  return l.unit(idx.front());
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  auto list = [&](const std::vector<int>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << "dim " << dim << ", derived ";
  list(derived);
  os << ", center " << center_dim << ", simple " << (simple ? (*simple ? "yes" : "no") : "?");
  os << ", R " << (R ? std::to_string(*R) : std::string("?"));
  if (R) os << " (" << rank_mode << ")";
  os << ", graded ";
  list(graded);
  os << ", top normalizer " << top_normalizer_dim;
  return os.str();
}

Fingerprint fingerprint(const LieAlg& l, std::uint64_t seed) {
  Fingerprint fp;
  fp.dim = l.dim();
  fp.derived = derived_dims(l);
  fp.center_dim = center(l).rows();
  const SimplicityResult s = is_simple(l, seed);
  if (s.certified) fp.simple = s.simple;
  for (RankMode m : {RankMode::exhaustive, RankMode::homogeneous}) {
    try {
      const MinRank r = min_ad_rank(l, m, seed);
      fp.R = r.R;
      fp.rank_mode = mode_name(m);
      break;
    } catch (const BoundExceeded&) {
    } catch (const InputError&) {
    }
  }
  if (l.has_degrees()) fp.graded = grading_profile(l).dims;
  if (auto top = top_line(l)) fp.top_normalizer_dim = normalizer_of_span(l, rows_of(l.field(), l.dim(), {*top})).rows();
  return fp;
}

bool fingerprints_distinct(const Fingerprint& a, const Fingerprint& b) {
  if (a.dim != b.dim || a.derived != b.derived || a.center_dim != b.center_dim) return true;
  if (a.simple && b.simple && *a.simple != *b.simple) return true;
  // R from a homogeneous search is only an upper bound on the invariant.
  if (a.R && b.R && a.rank_mode == "exhaustive" && b.rank_mode == "exhaustive" && *a.R != *b.R) return true;
  if (!a.graded.empty() && !b.graded.empty() && a.graded != b.graded) return true;
  if (a.top_normalizer_dim >= 0 && b.top_normalizer_dim >= 0 && a.top_normalizer_dim != b.top_normalizer_dim)
    return true;
  return false;
}

}  // namespace hamlie
