#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hklab/polynomial.hpp"

namespace hklab {

struct GroebnerOptions {
  /// Total-degree cap on S-polynomials and new basis elements; exceeding it
  /// throws ResourceExceeded.
  std::optional<std::uint64_t> degree_cap;
};

/// Reduced Groebner basis: monic, interreduced, sorted by ascending leading
/// monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(RingRef ring, std::vector<Polynomial> generators);

  const RingRef& ring() const noexcept { return ring_; }
  MonomialOrder order() const noexcept { return ring_->order(); }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  std::vector<Monomial> leading_monomials() const;
  bool is_unit() const noexcept;

  Polynomial reduce(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }

  /// One generator per line in ascending leading-monomial order.
  std::string to_string() const;

 private:
  RingRef ring_;
  std::vector<Polynomial> generators_;
};

/// (lcm/lt(f)) f - (lcm/lt(g)) g with leading coefficients normalized to 1.
/// Throws ZeroInput.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order);

/// Full reduction of f modulo `basis`: f - r lies in the ideal and no term of
/// r is divisible by a leading monomial of the basis.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, MonomialOrder order);

/// Reduced Groebner basis of the ideal generated by `generators`.
/// Throws EmptyIdeal if every generator is zero.
GroebnerBasis buchberger(std::vector<Polynomial> generators, MonomialOrder order,
                         const GroebnerOptions& options = {});

struct ColengthResult {
  std::optional<std::uint64_t> value;  // nullopt means INFINITE
  std::optional<std::vector<Monomial>> standard_monomials;

  bool finite() const noexcept { return value.has_value(); }
};

/// Number of monomials outside the leading-term ideal. Standard monomials are
/// listed when there are at most `list_limit` of them.
ColengthResult colength(const GroebnerBasis& basis, std::size_t list_limit = 4096);

/// Counts monomials in `num_vars` variables not divisible by any of
/// `leading`; nullopt when that set is infinite.
std::optional<std::uint64_t> count_standard_monomials(std::span<const Monomial> leading, std::size_t num_vars,
                                                      std::vector<Monomial>* listing = nullptr,
                                                      std::size_t list_limit = 0);

/// Krull dimension of the quotient: size of the largest variable subset S such
/// that no leading monomial involves only variables of S. Throws UnitIdeal.
unsigned krull_dimension(const GroebnerBasis& basis);

}  // namespace hklab
