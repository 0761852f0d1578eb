#include "hklab/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "hklab/error.hpp"

namespace hklab {

// ---------------------------------------------------------------------------
// PolyRing

RingRef PolyRing::make(Field field, std::vector<std::string> variables, MonomialOrder order) {
  if (variables.size() > kMaxVariables) {
    throw ResourceExceeded("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (variables[i] == variables[j]) {
        throw Error("InvalidArgument", "duplicate variable name '" + variables[i] + "'");
      }
    }
    if (field.parameter() && variables[i] == *field.parameter()) {
      throw Error("InvalidArgument", "variable '" + variables[i] + "' clashes with the field parameter");
    }
    if (field.kind() == FieldKind::extension && variables[i] == Field::kGeneratorName) {
      throw Error("InvalidArgument", "variable name 'a' is reserved for the extension generator");
    }
  }
  return RingRef(new PolyRing(field, std::move(variables), order));
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

RingRef PolyRing::with_order(MonomialOrder order) const { return make(field_, variables_, order); }

RingRef PolyRing::with_field(Field field) const { return make(field, variables_, order_); }

std::string PolyRing::to_string() const {
  std::string out = field_.to_string() + "[";
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i > 0) out += ',';
    out += variables_[i];
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Helpers

namespace {

struct DescendingBy {
  MonomialOrder order;
  bool operator()(const Term& a, const Term& b) const noexcept {
    return compare_unchecked(a.monomial, b.monomial, order) > 0;
  }
};

// Merges two descending term lists: a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract,
                              MonomialOrder order) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const auto cmp = compare_unchecked(a[i].monomial, b[j].monomial, order);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(subtract ? Term{b[j].monomial, -b[j].coeff} : b[j]);
      ++j;
    } else {
      FieldElement c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back(Term{a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(subtract ? Term{b[j].monomial, -b[j].coeff} : b[j]);
  return out;
}

std::uint32_t small_binomial(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return static_cast<std::uint32_t>(num * inverse_mod(static_cast<std::uint32_t>(den), p) % p);
}

}  // namespace

std::optional<unsigned> log_p(std::uint64_t q, std::uint32_t p) {
  if (q == 0) return std::nullopt;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return e;
}

std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    result = result * small_binomial(nd, kd, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(RingRef ring) : ring_(std::move(ring)) {}

Polynomial Polynomial::constant(RingRef ring, const FieldElement& c) {
  const FieldElement value = ring->field().embed(c);
  Polynomial out(ring);
  if (!value.is_zero()) out.terms_.push_back(Term{Monomial(ring->num_vars()), value});
  return out;
}

Polynomial Polynomial::variable(RingRef ring, std::size_t index) {
  if (index >= ring->num_vars()) throw UnknownVariable("variable index out of range");
  Monomial m(ring->num_vars());
  m.set(index, 1);
  Polynomial out(ring);
  out.terms_.push_back(Term{m, ring->field().one()});
  return out;
}

Polynomial Polynomial::term(RingRef ring, const FieldElement& c, const Monomial& m) {
  if (m.size() != ring->num_vars()) throw LengthMismatch("monomial length does not match the ring");
  const FieldElement value = ring->field().embed(c);
  Polynomial out(ring);
  if (!value.is_zero()) out.terms_.push_back(Term{m, value});
  return out;
}

Polynomial Polynomial::from_terms(RingRef ring, std::vector<Term> terms) {
  const MonomialOrder order = ring->order();
  for (const auto& t : terms) {
    if (t.monomial.size() != ring->num_vars()) throw LengthMismatch("monomial length does not match the ring");
    if (!(t.coeff.field() == ring->field())) throw FieldMismatch("coefficient outside the ring's field");
  }
  std::sort(terms.begin(), terms.end(), DescendingBy{order});
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

Polynomial Polynomial::from_sorted_terms(RingRef ring, std::vector<Term> terms) {
  return Polynomial(std::move(ring), std::move(terms));
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw ZeroInput("zero polynomial has no leading term");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (!ring_->same_as(*other.ring_)) {
    throw FieldMismatch("polynomials from different rings: " + ring_->to_string() + " and " +
                        other.ring_->to_string());
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  terms_ = merge_terms(terms_, other.terms_, false, ring_->order());
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other);
  terms_ = merge_terms(terms_, other.terms_, true, ring_->order());
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  if (a.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].monomial);
  if (b.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].monomial);
  std::vector<Term> products;
  products.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) products.push_back(Term{s.monomial * t.monomial, s.coeff * t.coeff});
  }
  return Polynomial::from_terms(a.ring_, std::move(products));
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  if (c.is_one()) return *this;
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

Polynomial Polynomial::mul_term(const FieldElement& c, const Monomial& m) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial out(ring_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(Term{t.monomial * m, t.coeff * c});
  return out;
}

Polynomial Polynomial::pow(std::uint64_t n) const {
  Polynomial result = constant(ring_, ring_->field().one());
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_.front().coeff.is_one()) return *this;
  return scaled(terms_.front().coeff.inverse());
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
  if (point.size() != ring_->num_vars()) throw LengthMismatch("point length does not match the ring");
  Field target = ring_->field();
  for (const auto& x : point) {
    if (!(x.field() == target)) {
      if (x.field().can_embed(target)) {
        target = x.field();
      } else if (!target.can_embed(x.field())) {
        throw FieldMismatch("point coordinates are not compatible with " + target.to_string());
      }
    }
  }
  std::vector<FieldElement> coords;
  coords.reserve(point.size());
  for (const auto& x : point) coords.push_back(target.embed(x));
  FieldElement sum = target.zero();
  for (const auto& t : terms_) {
    FieldElement value = target.embed(t.coeff);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (t.monomial[i] != 0) value *= coords[i].pow(t.monomial[i]);
    }
    sum += value;
  }
  return sum;
}

Polynomial Polynomial::in_ring(const RingRef& target) const {
  if (ring_->same_as(*target)) return Polynomial(target, terms_);
  std::vector<std::size_t> mapping(ring_->num_vars());
  for (std::size_t i = 0; i < ring_->num_vars(); ++i) {
    const auto j = target->index_of(ring_->variables()[i]);
    if (!j) {
      // Variables absent from the target are allowed only if unused.
      bool used = false;
      for (const auto& t : terms_) used = used || t.monomial[i] != 0;
      if (used) throw UnknownVariable("variable '" + ring_->variables()[i] + "' is not in " + target->to_string());
      mapping[i] = kMaxVariables;
      continue;
    }
    mapping[i] = *j;
  }
  std::vector<Term> mapped;
  mapped.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->num_vars());
    for (std::size_t i = 0; i < ring_->num_vars(); ++i) {
      if (mapping[i] != kMaxVariables) m.set(mapping[i], t.monomial[i]);
    }
    mapped.push_back(Term{m, target->field().embed(t.coeff)});
  }
  return from_terms(target, std::move(mapped));
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (!ring_->same_as(*other.ring_) || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].monomial == other.terms_[i].monomial) || !(terms_[i].coeff == other.terms_[i].coeff)) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.monomial.is_one()) {
      out += t.coeff.to_string();
      continue;
    }
    if (!t.coeff.is_one()) {
      if (t.coeff.prints_atomic()) {
        out += t.coeff.to_string();
      } else {
        out += '(';
        out += t.coeff.to_string();
        out += ')';
      }
      out += '*';
    }
    out += t.monomial.to_string(ring_->variables());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frobenius power and coordinate shift

Polynomial poly_power_q(const Polynomial& f, std::uint64_t q) {
  const std::uint32_t p = f.field().characteristic();
  if (!log_p(q, p)) {
    throw NotAPowerOfP(std::to_string(q) + " is not a power of the characteristic " + std::to_string(p));
  }
  if (q == 1) return f;
  std::vector<Term> out;
  out.reserve(f.size());
  // Scaling every exponent by q preserves both supported orders, so the
  // result is already sorted.
  for (const auto& t : f.terms()) out.push_back(Term{t.monomial.scaled(q), t.coeff.pow(q)});
  return Polynomial::from_sorted_terms(f.ring(), std::move(out));
}

Polynomial shift_point(const Polynomial& f, std::span<const FieldElement> point) {
  const RingRef& ring = f.ring();
  if (point.size() != ring->num_vars()) {
    throw LengthMismatch("point has " + std::to_string(point.size()) + " coordinates, ring has " +
                         std::to_string(ring->num_vars()) + " variables");
  }
  std::vector<FieldElement> coords;
  coords.reserve(point.size());
  for (const auto& x : point) {
    if (!ring->field().can_embed(x.field())) {
      throw FieldMismatch("coordinate in " + x.field().to_string() + " does not lie in " + ring->field().to_string());
    }
    coords.push_back(ring->field().embed(x));
  }
  const std::uint32_t p = ring->field().characteristic();
  std::vector<Term> current = f.terms();
  for (std::size_t var = 0; var < coords.size(); ++var) {
    const FieldElement& alpha = coords[var];
    if (alpha.is_zero()) continue;
    std::vector<Term> expanded;
    for (const auto& t : current) {
      const std::uint32_t e = t.monomial[var];
      if (e == 0) {
        expanded.push_back(t);
        continue;
      }
      // (x + alpha)^e = sum_j C(e, j) alpha^(e-j) x^j
      FieldElement alpha_power = ring->field().one();
      std::vector<FieldElement> powers(e + 1);
      for (std::uint32_t k = 0; k <= e; ++k) {
        powers[k] = alpha_power;
        alpha_power *= alpha;
      }
      for (std::uint32_t j = 0; j <= e; ++j) {
        const std::uint32_t b = binomial_mod(e, j, p);
        if (b == 0) continue;
        FieldElement c = t.coeff * powers[e - j] * ring->field().from_integer(b);
        if (c.is_zero()) continue;
        Monomial m = t.monomial;
        m.set(var, j);
        expanded.push_back(Term{m, std::move(c)});
      }
    }
    current = Polynomial::from_terms(ring, std::move(expanded)).terms();
  }
  return Polynomial::from_terms(ring, std::move(current));
}

// ---------------------------------------------------------------------------
// RingPresentation

RingPresentation RingPresentation::make(RingRef ring, std::vector<Polynomial> relations) {
  for (auto& r : relations) {
    if (r.is_zero()) throw Error("InvalidArgument", "relation generators must be nonzero");
    if (!r.ring()->same_as(*ring)) r = r.in_ring(ring);
  }
  return RingPresentation{std::move(ring), std::move(relations)};
}

}  // namespace hklab
