#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hamlie {

/// Element of GF(2^k): a polynomial over GF(2) packed into the low k bits.
struct FieldElem {
  std::uint32_t bits = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }

  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;

  // Addition is field independent in characteristic 2.
  friend constexpr FieldElem operator+(FieldElem a, FieldElem b) {
    return FieldElem{a.bits ^ b.bits};
  }
  constexpr FieldElem& operator+=(FieldElem o) {
    bits ^= o.bits;
    return *this;
  }
};

inline constexpr FieldElem kZero{0};
inline constexpr FieldElem kOne{1};

bool is_irreducible_gf2(std::uint32_t poly);

/// Numerically least irreducible polynomial of degree k over GF(2).
std::uint32_t least_irreducible(int k);

/// The finite field GF(2^k), 1 <= k <= 16, presented as GF(2)[t]/(p(t)).
///
/// The field is a small value type; two fields compare equal when both the
/// exponent and the modulus agree.
class Field {
 public:
  static constexpr int kMaxExponent = 16;

  /// GF(2^k) with the least irreducible modulus of degree k.
  explicit Field(int k = 1);
  /// GF(2^k) with an explicit modulus; throws InputError if it is reducible.
  Field(int k, std::uint32_t irreducible);

  int k() const { return k_; }
  std::uint32_t irreducible() const { return poly_; }
  std::uint32_t order() const { return 1u << k_; }

  bool contains(FieldElem a) const { return a.bits < order(); }
  /// Checked conversion from the serialized integer form.
  FieldElem element(std::uint64_t bits) const;

  FieldElem add(FieldElem a, FieldElem b) const { return a + b; }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (k_ == 1) return FieldElem{a.bits & b.bits};
    return mul_slow(a, b);
  }
  FieldElem frob(FieldElem a) const { return mul(a, a); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  /// Throws DivisionByZero for a == 0.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  /// Unique square root, a^(2^(k-1)).
  FieldElem sqrt(FieldElem a) const;
  /// Unique b with b^(2^s) == a.
  FieldElem root2s(FieldElem a, int s) const;

  /// The class of t; a primitive element when the modulus is primitive.
  FieldElem generator() const { return FieldElem{k_ == 1 ? 1u : 2u}; }
  std::vector<FieldElem> elements() const;

  std::string describe() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  FieldElem mul_slow(FieldElem a, FieldElem b) const;

  int k_ = 1;
  std::uint32_t poly_ = 2;
};

enum class FieldOp { add, mul, inv, frob };

/// Dispatching form of the basic operations; inv and frob ignore b.
FieldElem field_arith(const Field& f, FieldElem a, FieldElem b, FieldOp op);
FieldElem field_sqrt(const Field& f, FieldElem a);

}  // namespace hamlie
