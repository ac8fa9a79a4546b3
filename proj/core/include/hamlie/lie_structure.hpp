#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamlie/lie_algebra.hpp"

namespace hamlie {

int ad_rank(const LieAlg& l, const Vec& v);
/// Dimension of span{[d, e] : e in es}.
int witness_rank(const LieAlg& l, const Vec& d, const std::vector<Vec>& es);

/// Rows span [S, S] for S = rowspace(s).
Matrix bracket_span(const LieAlg& l, const Matrix& s);
/// Bases of L = L^(0), L^(1), ... up to the first repeat or zero.
std::vector<Matrix> derived_series(const LieAlg& l);
std::vector<int> derived_dims(const LieAlg& l);
bool is_perfect(const LieAlg& l);
/// Rows span the center.
Matrix center(const LieAlg& l);
/// Smallest ideal containing the given vectors.
Matrix ideal_closure(const LieAlg& l, const std::vector<Vec>& gens);
Matrix ideal_closure(const LieAlg& l, const Vec& v);
/// Rows span {v : [v, s] in S for all s in S}.
Matrix normalizer_of_span(const LieAlg& l, const Matrix& s);

struct JacobiResult {
  bool holds = true;
  std::array<int, 3> counterexample{-1, -1, -1};
  std::uint64_t triples = 0;
};
/// Jacobi identity and [e_a, e_a] = 0 on all basis triples.
JacobiResult check_jacobi(const LieAlg& l);
/// [v, v] = 0 for every v (GF(2), dim <= 20) or for `samples` random v.
bool check_alternation(const LieAlg& l, std::uint64_t seed, int samples = 500);

struct SimplicityResult {
  bool simple = false;
  bool certified = false;
  std::string method;
  /// Basis of a proper nonzero ideal when one was found (or of [L, L] when
  /// L is not perfect).
  std::optional<Matrix> witness;
};

/// Spins every nonzero vector; GF(2) with dim <= 20 only.
SimplicityResult is_simple_exhaustive(const LieAlg& l);
/// Norton irreducibility test on the adjoint module.
SimplicityResult is_simple_norton(const LieAlg& l, std::uint64_t seed, int attempts = 400);
/// Exhaustive when feasible and Norton always; throws std::logic_error if the
/// two disagree.
SimplicityResult is_simple(const LieAlg& l, std::uint64_t seed = 1);

enum class RankMode { exhaustive, homogeneous, sampled };
std::string mode_name(RankMode m);
std::optional<RankMode> parse_mode(const std::string& s);

struct MinRank {
  int R = -1;
  /// Projective representatives (first nonzero coordinate 1) attaining R.
  std::vector<Vec> argmin;
  RankMode mode = RankMode::exhaustive;
  /// False for the sampled upper bound.
  bool exact = true;
  std::uint64_t examined = 0;
};
/// Throws BoundExceeded when the mode's enumeration bound is exceeded.
MinRank min_ad_rank(const LieAlg& l, RankMode mode, std::uint64_t seed = 0,
                    std::uint64_t samples = 20000);

struct GradingProfile {
  int min_degree = 0;     // Lie degree of the first component
  std::vector<int> dims;  // component dims for Lie degrees min_degree, min_degree + 1, ...
  int top_degree() const { return min_degree + static_cast<int>(dims.size()) - 1; }
};
/// Lie degree (total degree - 2) of each basis label.
std::vector<int> filtration(const LieAlg& l);
GradingProfile grading_profile(const LieAlg& l);
/// Keeps from each bracket [e_a, e_b] only the part of degree deg a + deg b.
LieAlg graded_algebra(const LieAlg& l);
/// Indices of the basis labels of the given Lie degree.
std::vector<int> component(const LieAlg& l, int lie_degree);

struct Fingerprint {
  int dim = 0;
  std::vector<int> derived;
  int center_dim = 0;
  std::optional<bool> simple;
  std::optional<int> R;
  std::string rank_mode;
  std::vector<int> graded;
  int top_normalizer_dim = -1;

  std::string str() const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const LieAlg& l, std::uint64_t seed = 1);
/// True when some field known for both differs.
bool fingerprints_distinct(const Fingerprint& a, const Fingerprint& b);
/// Spanning vector of the top filtration component when it is a line.
std::optional<Vec> top_line(const LieAlg& l);

}  // namespace hamlie
