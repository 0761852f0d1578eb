#include "hklab/monomial.hpp"

#include <limits>

#include "hklab/error.hpp"

namespace hklab {

namespace {
constexpr std::uint64_t kMaxExponent = std::numeric_limits<std::uint32_t>::max();

void check_size(std::size_t n) {
  if (n > kMaxVariables) {
    throw ResourceExceeded("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
}
}  // namespace

std::string_view to_string(MonomialOrder order) {
  return order == MonomialOrder::grevlex ? "grevlex" : "lex";
}

MonomialOrder parse_monomial_order(std::string_view name) {
  if (name == "grevlex") return MonomialOrder::grevlex;
  if (name == "lex") return MonomialOrder::lex;
  throw Error("InvalidArgument", "unknown monomial order '" + std::string(name) + "'");
}

Monomial::Monomial(std::size_t num_vars) {
  check_size(num_vars);
  size_ = static_cast<std::uint32_t>(num_vars);
}

Monomial::Monomial(std::initializer_list<std::uint32_t> exponents) {
  check_size(exponents.size());
  size_ = static_cast<std::uint32_t>(exponents.size());
  std::size_t i = 0;
  for (auto e : exponents) exps_[i++] = e;
  refresh();
}

Monomial::Monomial(const std::vector<std::uint32_t>& exponents) {
  check_size(exponents.size());
  size_ = static_cast<std::uint32_t>(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) exps_[i] = exponents[i];
  refresh();
}

void Monomial::refresh() {
  degree_ = 0;
  support_ = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    degree_ += exps_[i];
    if (exps_[i] != 0) support_ |= 1U << i;
  }
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
  if (e != 0) {
    support_ |= 1U << i;
  } else {
    support_ &= ~(1U << i);
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (size_ != other.size_) throw LengthMismatch("monomial product of different lengths");
  Monomial out = *this;
  for (std::size_t i = 0; i < size_; ++i) {
    const std::uint64_t e = static_cast<std::uint64_t>(exps_[i]) + other.exps_[i];
    if (e > kMaxExponent) throw ExponentOverflow("exponent overflow in monomial product");
    out.exps_[i] = static_cast<std::uint32_t>(e);
  }
  out.degree_ = degree_ + other.degree_;
  out.support_ = support_ | other.support_;
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out = *this;
  for (std::size_t i = 0; i < size_; ++i) out.exps_[i] -= other.exps_[i];
  out.refresh();
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out = *this;
  for (std::size_t i = 0; i < size_; ++i) {
    if (other.exps_[i] > out.exps_[i]) out.exps_[i] = other.exps_[i];
  }
  out.refresh();
  return out;
}

Monomial Monomial::scaled(std::uint64_t q) const {
  Monomial out = *this;
  for (std::size_t i = 0; i < size_; ++i) {
    if (exps_[i] != 0 && q > kMaxExponent / exps_[i]) {
      throw ExponentOverflow("exponent overflow raising a monomial to the power " + std::to_string(q));
    }
    out.exps_[i] = static_cast<std::uint32_t>(exps_[i] * q);
  }
  out.refresh();
  return out;
}

std::vector<std::uint32_t> Monomial::exponents() const {
  return std::vector<std::uint32_t>(exps_.begin(), exps_.begin() + size_);
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  if (degree_ == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (exps_[i] > 1) {
      out += '^';
      out += std::to_string(exps_[i]);
    }
  }
  return out;
}

std::strong_ordering compare_monomials(const Monomial& u, const Monomial& v, MonomialOrder order) {
  if (u.size() != v.size()) {
    throw LengthMismatch("comparing monomials of lengths " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()));
  }
  return compare_unchecked(u, v, order);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < m.size(); ++i) {
    h ^= m[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace hklab
