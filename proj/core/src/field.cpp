#include "hamlie/field.hpp"

#include <bit>
#include <sstream>

#include "hamlie/errors.hpp"

namespace hamlie {
namespace {

int degree_of(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_of(m);
  for (int da = degree_of(a); da >= dm; da = degree_of(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) {
  const int d = degree_of(poly);
  if (d < 1) return false;
  if (d == 1) return true;
  for (std::uint64_t q = 2; degree_of(q) <= d / 2; ++q) {
    if (gf2_mod(poly, q) == 0) return false;
  }
  return true;
}

std::uint32_t least_irreducible(int k) {
  if (k < 1 || k > Field::kMaxExponent) {
    throw InputError("field exponent must lie in [1, 16], got " + std::to_string(k));
  }
  for (std::uint32_t p = 1u << k;; ++p) {
    if (is_irreducible_gf2(p)) return p;
  }
}

Field::Field(int k) : k_(k), poly_(least_irreducible(k)) {}

Field::Field(int k, std::uint32_t irreducible) : k_(k), poly_(irreducible) {
  if (k < 1 || k > kMaxExponent) {
    throw InputError("field exponent must lie in [1, 16], got " + std::to_string(k));
  }
  if (degree_of(irreducible) != k || !is_irreducible_gf2(irreducible)) {
    throw InputError("modulus " + std::to_string(irreducible) +
                     " is not an irreducible polynomial of degree " + std::to_string(k));
  }
}

FieldElem Field::element(std::uint64_t bits) const {
  if (bits >= order()) {
    throw InputError("field element " + std::to_string(bits) + " out of range for GF(2^" +
                     std::to_string(k_) + ")");
  }
  return FieldElem{static_cast<std::uint32_t>(bits)};
}

FieldElem Field::mul_slow(FieldElem a, FieldElem b) const {
  std::uint64_t acc = 0;
  std::uint64_t x = a.bits;
  for (std::uint32_t y = b.bits; y != 0; y >>= 1, x <<= 1) {
    if (y & 1u) acc ^= x;
  }
  return FieldElem{static_cast<std::uint32_t>(gf2_mod(acc, poly_))};
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
  FieldElem result = kOne;
  for (; e != 0; e >>= 1, a = mul(a, a)) {
    if (e & 1u) result = mul(result, a);
  }
  return result;
}

FieldElem Field::inv(FieldElem a) const {
  if (a.is_zero()) throw DivisionByZero();
  // The multiplicative group has order 2^k - 1.
  return pow(a, order() - 2);
}

FieldElem Field::sqrt(FieldElem a) const { return root2s(a, 1); }

FieldElem Field::root2s(FieldElem a, int s) const {
  // Frobenius has order k, so the inverse of its s-th power is its (k - s mod k)-th power.
  const int steps = ((k_ - s) % k_ + k_) % k_;
  for (int i = 0; i < steps; ++i) a = frob(a);
  return a;
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out;
  out.reserve(order());
  for (std::uint32_t b = 0; b < order(); ++b) out.emplace_back(b);
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(2^" << k_ << ") mod " << poly_;
  return os.str();
}

FieldElem field_arith(const Field& f, FieldElem a, FieldElem b, FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return f.add(a, b);
    case FieldOp::mul:
      return f.mul(a, b);
    case FieldOp::inv:
      return f.inv(a);
    case FieldOp::frob:
      return f.frob(a);
  }
  throw InputError("unknown field operation");
}

FieldElem field_sqrt(const Field& f, FieldElem a) { return f.sqrt(a); }

}  // namespace hamlie
