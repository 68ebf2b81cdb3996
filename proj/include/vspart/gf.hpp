#pragma once

// Exact arithmetic in GF(p^e).
//
// Elements are integer codes 0..q-1. The code of a field element is the
// base-p number whose digits are the coefficients of its polynomial
// representative, constant term least significant. Code 0 is the additive
// identity, code 1 the multiplicative identity.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace vspart {

using Elem = std::uint32_t;
using Vector = std::vector<Elem>;

/// Largest field order accepted by make_field.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);

/// base^exp, throwing TooLarge when the result does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

class Field {
 public:
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }

  /// Monic modulus over GF(p), constant term first, length e+1.
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[std::size_t{log_[a]} + log_[b]];
  }
  /// Multiplicative inverse; a must be nonzero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  /// Generator of the multiplicative group used for the log tables.
  Elem primitive() const noexcept { return primitive_; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

  // Use make_field.
  Field(std::uint32_t p, std::uint32_t e, std::vector<Elem> modulus);

 private:
  Elem add_digits(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  Elem primitive_ = 1;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^e) with the lexicographically least monic irreducible modulus
/// (coefficients compared from the constant term upward). Fields are cached
/// and shared; repeated calls return the same object.
FieldPtr make_field(std::uint32_t p, std::uint32_t e);

/// Same as make_field for q = p^e; throws NotPrime if q is not a prime power.
FieldPtr make_field_of_order(std::uint64_t q);

// Dense polynomials over a Field, coefficients constant term first.
namespace poly {

/// Remainder of a modulo the monic polynomial m.
Vector rem(const Field& f, Vector a, std::span<const Elem> m);
Vector mul(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
/// True iff the monic polynomial m of degree >= 1 has no monic factor of
/// degree 1..deg/2 (trial division).
bool is_irreducible(const Field& f, std::span<const Elem> m);
/// Lexicographically least monic irreducible polynomial of the given degree,
/// comparing coefficients from the constant term upward.
Vector least_irreducible(const Field& f, unsigned degree);

}  // namespace poly

/// GF(q^d) realized as GF(q)[x]/(m) with m the least monic irreducible of
/// degree d over GF(q). Elements are coefficient vectors of length d over
/// the base field; the power basis 1, x, ..., x^(d-1) is the unit basis.
class ExtensionField {
 public:
  ExtensionField(FieldPtr base, unsigned degree);

  const Field& base() const noexcept { return *base_; }
  unsigned degree() const noexcept { return degree_; }
  std::uint64_t order() const noexcept { return order_; }
  const Vector& modulus() const noexcept { return modulus_; }

  Vector mul(std::span<const Elem> a, std::span<const Elem> b) const;
  /// Element with index i: base-q digits of i, constant term least significant.
  Vector element(std::uint64_t index) const;
  /// x^j for j < degree.
  Vector power_basis(unsigned j) const;

 private:
  FieldPtr base_;
  unsigned degree_;
  std::uint64_t order_;
  Vector modulus_;
};

/// The ambient space V_n(q).
struct Space {
  FieldPtr field;
  unsigned n = 0;

  std::uint32_t q() const { return field->q(); }
  /// q^n; throws TooLarge when it does not fit.
  std::uint64_t size() const { return checked_pow(field->q(), n); }
  /// Integer encoding of a vector, first coordinate most significant.
  std::uint64_t encode(std::span<const Elem> v) const;
  Vector decode(std::uint64_t index) const;
  Vector zero() const { return Vector(n, 0); }
  Vector unit(unsigned i) const;

  Vector add(std::span<const Elem> a, std::span<const Elem> b) const;
  Vector scale(Elem c, std::span<const Elem> a) const;

  friend bool operator==(const Space& a, const Space& b) noexcept {
    return a.n == b.n && *a.field == *b.field;
  }
};

}  // namespace vspart
