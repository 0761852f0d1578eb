#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hklab/coeff.hpp"
#include "hklab/monomial.hpp"

namespace hklab {

/// Ambient data shared by the polynomials of one ring: coefficient field,
/// variable names and the active monomial order.
class PolyRing {
 public:
  static std::shared_ptr<const PolyRing> make(Field field, std::vector<std::string> variables,
                                              MonomialOrder order = MonomialOrder::grevlex);

  const Field& field() const noexcept { return field_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t num_vars() const noexcept { return variables_.size(); }
  MonomialOrder order() const noexcept { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  std::shared_ptr<const PolyRing> with_order(MonomialOrder order) const;
  std::shared_ptr<const PolyRing> with_field(Field field) const;

  bool same_as(const PolyRing& other) const noexcept {
    return this == &other ||
           (field_ == other.field_ && order_ == other.order_ && variables_ == other.variables_);
  }

  std::string to_string() const;

 private:
  PolyRing(Field field, std::vector<std::string> variables, MonomialOrder order)
      : field_(field), variables_(std::move(variables)), order_(order) {}

  Field field_;
  std::vector<std::string> variables_;
  MonomialOrder order_;
};

using RingRef = std::shared_ptr<const PolyRing>;

struct Term {
  Monomial monomial;
  FieldElement coeff;
};

/// Sparse polynomial. Terms are kept sorted descending by the ring's order
/// with no zero coefficients and no repeated monomials.
class Polynomial {
 public:
  explicit Polynomial(RingRef ring);

  static Polynomial constant(RingRef ring, const FieldElement& c);
  static Polynomial variable(RingRef ring, std::size_t index);
  static Polynomial term(RingRef ring, const FieldElement& c, const Monomial& m);
  /// Sorts, merges duplicate monomials and drops zero coefficients.
  static Polynomial from_terms(RingRef ring, std::vector<Term> terms);
  /// Trusted constructor: `terms` must already satisfy the class invariant.
  static Polynomial from_sorted_terms(RingRef ring, std::vector<Term> terms);

  const RingRef& ring() const noexcept { return ring_; }
  const Field& field() const noexcept { return ring_->field(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  const FieldElement& leading_coefficient() const { return leading_term().coeff; }
  std::uint64_t total_degree() const noexcept;
  bool is_constant() const noexcept;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const FieldElement& c) const;
  /// c * m * this.
  Polynomial mul_term(const FieldElement& c, const Monomial& m) const;
  Polynomial pow(std::uint64_t n) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  FieldElement evaluate(std::span<const FieldElement> point) const;

  /// Re-expresses this polynomial in `target`, matching variables by name
  /// and embedding coefficients. Throws UnknownVariable / FieldMismatch.
  Polynomial in_ring(const RingRef& target) const;

  bool operator==(const Polynomial& other) const;

  std::string to_string() const;

 private:
  Polynomial(RingRef ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {}
  void require_same_ring(const Polynomial& other) const;

  RingRef ring_;
  std::vector<Term> terms_;
};

/// f^q by the Frobenius rule (c, m) -> (c^q, q*m). Throws NotAPowerOfP or
/// ExponentOverflow.
Polynomial poly_power_q(const Polynomial& f, std::uint64_t q);

/// f(x_1 + a_1, ..., x_n + a_n). Throws LengthMismatch or FieldMismatch.
Polynomial shift_point(const Polynomial& f, std::span<const FieldElement> point);

/// Returns e with p^e = q, or nullopt.
std::optional<unsigned> log_p(std::uint64_t q, std::uint32_t p);

/// C(n, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// R = F[x_1..x_n]/J given by generators of J.
struct RingPresentation {
  RingRef ring;
  std::vector<Polynomial> relations;

  /// Validates that relations are nonzero and live in `ring`.
  static RingPresentation make(RingRef ring, std::vector<Polynomial> relations);

  const Field& field() const noexcept { return ring->field(); }
  const std::vector<std::string>& variables() const noexcept { return ring->variables(); }
  std::uint32_t characteristic() const noexcept { return ring->field().characteristic(); }
};

}  // namespace hklab
