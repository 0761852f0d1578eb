#pragma once

// Exact coefficient fields: F_p, F_{p^k} and F_p(t).
//
// Field descriptors are interned: every distinct (p, k, parameter) triple is
// created once and lives for the rest of the process, so a Field is a cheap
// handle and a FieldElement can carry a plain pointer to its field.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hklab {

/// Dense univariate polynomial over F_p, low degree first, with no trailing
/// zero coefficients. The zero polynomial is the empty vector.
using UPoly = std::vector<std::uint32_t>;

namespace upoly {

int degree(const UPoly& a);  // -1 for zero
void trim(UPoly& a);
UPoly add(const UPoly& a, const UPoly& b, std::uint32_t p);
UPoly sub(const UPoly& a, const UPoly& b, std::uint32_t p);
UPoly mul(const UPoly& a, const UPoly& b, std::uint32_t p);
UPoly scale(const UPoly& a, std::uint32_t c, std::uint32_t p);
/// Quotient and remainder; throws DivisionByZero when `b` is zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b, std::uint32_t p);
/// Monic greatest common divisor (zero when both inputs are zero).
UPoly gcd(UPoly a, UPoly b, std::uint32_t p);
UPoly pow_mod(const UPoly& base, std::uint64_t e, const UPoly& mod, std::uint32_t p);
/// Substitutes t -> t^q (the Frobenius q-th power for q a power of p).
UPoly inflate(const UPoly& a, std::uint64_t q);
bool is_irreducible(const UPoly& f, std::uint32_t p);
std::string to_string(const UPoly& a, std::string_view var);

}  // namespace upoly

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
bool is_prime(std::uint64_t n);

enum class FieldKind { prime, extension, rational_function };

/// Reduced fraction num/den over F_p with monic denominator.
struct RationalFunction {
  UPoly num;
  UPoly den;
  bool operator==(const RationalFunction&) const = default;
};

namespace detail {
struct FieldData;
}

class FieldElement;

class Field {
 public:
  /// Name of the generator of F_{p^k} over F_p in printed elements.
  static constexpr std::string_view kGeneratorName = "a";

  static Field prime(std::uint64_t p);
  /// F_{p^k} with the lexicographically smallest monic irreducible modulus
  /// (coefficients compared low degree first). k = 1 gives the prime field.
  static Field extension(std::uint64_t p, unsigned k);
  static Field rational_function(std::uint64_t p, std::string parameter);

  FieldKind kind() const noexcept;
  std::uint32_t characteristic() const noexcept;
  unsigned extension_degree() const noexcept;
  const std::optional<std::string>& parameter() const noexcept;
  /// Defining polynomial of the generator: `x` for a prime field.
  const UPoly& modulus() const noexcept;
  bool is_finite() const noexcept { return kind() != FieldKind::rational_function; }
  /// p^k for finite fields.
  std::uint64_t order() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_integer(std::int64_t n) const;
  /// `a` for F_{p^k}, the parameter for F_p(t). Prime fields have none.
  FieldElement generator() const;
  /// Evaluates a univariate polynomial at the generator.
  FieldElement from_upoly(const UPoly& poly) const;
  /// Finite fields only: element with base-p digits `code` (digit i is the
  /// coefficient of a^i).
  FieldElement from_code(std::uint64_t code) const;
  /// num/den in F_p(t), reduced to canonical form.
  FieldElement fraction(const UPoly& num, const UPoly& den) const;

  /// True if elements of `sub` can be mapped into this field.
  bool can_embed(const Field& sub) const noexcept;
  FieldElement embed(const FieldElement& x) const;

  std::string to_string() const;

  bool operator==(const Field& other) const noexcept { return data_ == other.data_; }

  const detail::FieldData* data() const noexcept { return data_; }

 private:
  explicit Field(const detail::FieldData* data) : data_(data) {}
  friend class FieldElement;

  const detail::FieldData* data_;
};

/// make_extension_field: F_{p^k}; throws NonPrimeCharacteristic.
inline Field make_extension_field(std::uint64_t p, unsigned k) { return Field::extension(p, k); }

class FieldElement {
 public:
  FieldElement() = default;  // an invalid placeholder; assign before use

  Field field() const noexcept { return Field(field_); }
  bool valid() const noexcept { return field_ != nullptr; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Residue for F_p, digit code for F_{p^k}.
  std::uint64_t code() const noexcept { return code_; }
  /// F_p(t) only.
  const RationalFunction& fraction() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  /// Throws DivisionByZero for zero.
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  /// x^p.
  FieldElement frobenius() const;

  bool operator==(const FieldElement& other) const;

  /// Canonical printed form: residue, polynomial in `a`, or (num)/(den).
  std::string to_string() const;
  /// True if the printed form is a single token (no '+', '-' or '/').
  bool prints_atomic() const;

 private:
  friend class Field;
  friend FieldElement rational_normalize(const Field&, const UPoly&, const UPoly&);
  FieldElement(const detail::FieldData* field, std::uint64_t code) : field_(field), code_(code) {}
  FieldElement(const detail::FieldData* field, std::shared_ptr<const RationalFunction> frac)
      : field_(field), frac_(std::move(frac)) {}

  void require_same_field(const FieldElement& other) const;

  const detail::FieldData* field_ = nullptr;
  std::uint64_t code_ = 0;
  std::shared_ptr<const RationalFunction> frac_;
};

FieldElement field_inverse(const FieldElement& a);

/// Canonical reduced fraction in F_p(t); throws DivisionByZero if den = 0.
FieldElement rational_normalize(const Field& field, const UPoly& num, const UPoly& den);

}  // namespace hklab
