#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hklab {

inline constexpr std::size_t kMaxVariables = 12;

enum class MonomialOrder { grevlex, lex };

std::string_view to_string(MonomialOrder order);
MonomialOrder parse_monomial_order(std::string_view name);

/// Exponent vector over a fixed number of variables (at most kMaxVariables),
/// stored inline with its cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars);
  Monomial(std::initializer_list<std::uint32_t> exponents);
  explicit Monomial(const std::vector<std::uint32_t>& exponents);

  std::size_t size() const noexcept { return size_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, std::uint32_t e);

  bool divides(const Monomial& other) const noexcept {
    if ((support_ & ~other.support_) != 0) return false;
    for (std::size_t i = 0; i < size_; ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  bool coprime(const Monomial& other) const noexcept { return (support_ & other.support_) == 0; }

  /// Bit i set iff variable i has positive exponent.
  std::uint32_t support() const noexcept { return support_; }

  /// Product; throws ExponentOverflow.
  Monomial operator*(const Monomial& other) const;
  /// Quotient; `other` must divide *this.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  /// Every exponent multiplied by q; throws ExponentOverflow.
  Monomial scaled(std::uint64_t q) const;

  std::vector<std::uint32_t> exponents() const;

  bool operator==(const Monomial& other) const noexcept {
    return size_ == other.size_ && exps_ == other.exps_;
  }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void refresh();

  std::array<std::uint32_t, kMaxVariables> exps_{};
  std::uint64_t degree_ = 0;
  std::uint32_t support_ = 0;
  std::uint32_t size_ = 0;
};

/// Hot-path comparison; both monomials must have the same length.
inline std::strong_ordering compare_unchecked(const Monomial& u, const Monomial& v, MonomialOrder order) noexcept {
  const std::size_t n = u.size();
  if (order == MonomialOrder::grevlex) {
    if (u.degree() != v.degree()) return u.degree() <=> v.degree();
    for (std::size_t i = n; i-- > 0;) {
      if (u[i] != v[i]) return v[i] <=> u[i];
    }
    return std::strong_ordering::equal;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] != v[i]) return u[i] <=> v[i];
  }
  return std::strong_ordering::equal;
}

/// Total multiplicative order comparison; throws LengthMismatch.
std::strong_ordering compare_monomials(const Monomial& u, const Monomial& v, MonomialOrder order);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

}  // namespace hklab
