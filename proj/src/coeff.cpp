#include "hklab/coeff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "hklab/error.hpp"

namespace hklab {

// ---------------------------------------------------------------------------
// Scalar helpers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p));
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quotient * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quotient * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// ---------------------------------------------------------------------------
// Univariate polynomials over F_p

namespace upoly {

int degree(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly add(const UPoly& a, const UPoly& b, std::uint32_t p) {
  UPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(out[i]) + b[i]) % p);
  }
  trim(out);
  return out;
}

UPoly sub(const UPoly& a, const UPoly& b, std::uint32_t p) {
  UPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(out[i]) + p - b[i]) % p);
  }
  trim(out);
  return out;
}

UPoly mul(const UPoly& a, const UPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1 && a[0] == 1) return b;
  if (b.size() == 1 && b[0] == 1) return a;
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  // Accumulate without reduction while the sum cannot overflow.
  const std::uint64_t bound = static_cast<std::uint64_t>(p - 1) * (p - 1);
  const std::uint64_t limit = bound == 0 ? ~0ULL : (~0ULL) / bound;
  std::size_t pending = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    }
    if (++pending + 1 >= limit) {
      for (auto& v : acc) v %= p;
      pending = 0;
    }
  }
  UPoly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p);
  trim(out);
  return out;
}

UPoly scale(const UPoly& a, std::uint32_t c, std::uint32_t p) {
  if (c % p == 0) return {};
  UPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) * c % p);
  }
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b, std::uint32_t p) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  if (a.size() < b.size()) return {UPoly{}, a};
  UPoly rem = a;
  UPoly quot(a.size() - b.size() + 1, 0);
  const std::uint64_t lead_inv = inverse_mod(b.back(), p);
  for (std::size_t i = rem.size(); i-- >= b.size();) {
    const std::uint64_t c = rem[i] * lead_inv % p;
    if (c == 0) continue;
    const std::size_t shift = i + 1 - b.size();
    quot[shift] = static_cast<std::uint32_t>(c);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t sub_term = c * b[j] % p;
      rem[shift + j] = static_cast<std::uint32_t>((rem[shift + j] + p - sub_term) % p);
    }
  }
  trim(rem);
  trim(quot);
  return {std::move(quot), std::move(rem)};
}

namespace {
UPoly make_monic(UPoly a, std::uint32_t p) {
  if (a.empty() || a.back() == 1) return a;
  return scale(a, inverse_mod(a.back(), p), p);
}
}  // namespace

UPoly gcd(UPoly a, UPoly b, std::uint32_t p) {
  while (!b.empty()) {
    UPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

UPoly pow_mod(const UPoly& base, std::uint64_t e, const UPoly& mod, std::uint32_t p) {
  UPoly result = divmod(UPoly{1}, mod, p).second;
  UPoly b = divmod(base, mod, p).second;
  while (e > 0) {
    if (e & 1U) result = divmod(mul(result, b, p), mod, p).second;
    e >>= 1U;
    if (e > 0) b = divmod(mul(b, b, p), mod, p).second;
  }
  return result;
}

UPoly inflate(const UPoly& a, std::uint64_t q) {
  if (a.empty() || q == 1) return a;
  UPoly out((a.size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i * q] = a[i];
  return out;
}

bool is_irreducible(const UPoly& f, std::uint32_t p) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const UPoly x{0, 1};
  UPoly h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = pow_mod(h, p, f, p);
    if (degree(gcd(f, sub(h, x, p), p)) > 0) return false;
  }
  return true;
}

std::string to_string(const UPoly& a, std::string_view var) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(a[i]);
      continue;
    }
    if (a[i] != 1) {
      out += std::to_string(a[i]);
      out += '*';
    }
    out += var;
    if (i > 1) {
      out += '^';
      out += std::to_string(i);
    }
  }
  return out;
}

}  // namespace upoly

// ---------------------------------------------------------------------------
// Field descriptors

namespace detail {

struct FieldData {
  FieldKind kind = FieldKind::prime;
  std::uint32_t p = 2;
  unsigned k = 1;
  std::optional<std::string> parameter;
  UPoly modulus;
  std::uint64_t order = 0;  // p^k, finite fields only
  // Discrete log tables over a primitive element, for small extensions.
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
  std::shared_ptr<const RationalFunction> zero_frac;
  std::shared_ptr<const RationalFunction> one_frac;

  UPoly decode(std::uint64_t code) const {
    UPoly out(k, 0);
    for (unsigned i = 0; i < k; ++i) {
      out[i] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    upoly::trim(out);
    return out;
  }

  std::uint64_t encode(const UPoly& digits) const {
    std::uint64_t code = 0;
    for (std::size_t i = digits.size(); i-- > 0;) code = code * p + digits[i];
    return code;
  }

  std::uint64_t ext_add(std::uint64_t a, std::uint64_t b) const {
    if (p == 2) return a ^ b;
    std::uint64_t out = 0, place = 1;
    for (unsigned i = 0; i < k; ++i) {
      out += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return out;
  }

  std::uint64_t ext_neg(std::uint64_t a) const {
    if (p == 2) return a;
    std::uint64_t out = 0, place = 1;
    for (unsigned i = 0; i < k; ++i) {
      out += ((p - a % p) % p) * place;
      a /= p;
      place *= p;
    }
    return out;
  }

  std::uint64_t ext_mul_slow(std::uint64_t a, std::uint64_t b) const {
    return encode(upoly::divmod(upoly::mul(decode(a), decode(b), p), modulus, p).second);
  }

  std::uint64_t ext_mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_table.empty()) {
      const std::uint64_t n = order - 1;
      return exp_table[(log_table[a] + static_cast<std::uint64_t>(log_table[b])) % n];
    }
    return ext_mul_slow(a, b);
  }

  std::uint64_t ext_pow_slow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1;
    while (e > 0) {
      if (e & 1U) result = ext_mul_slow(result, a);
      a = ext_mul_slow(a, a);
      e >>= 1U;
    }
    return result;
  }

  std::uint64_t ext_inverse(std::uint64_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(order) + ")");
    if (!log_table.empty()) {
      const std::uint64_t n = order - 1;
      return exp_table[(n - log_table[a]) % n];
    }
    return ext_pow_slow(a, order - 2);
  }

  void build_tables() {
    constexpr std::uint64_t kTableLimit = 1ULL << 16;
    if (order > kTableLimit) return;
    const std::uint64_t n = order - 1;
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t rest = n;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        prime_factors.push_back(d);
        while (rest % d == 0) rest /= d;
      }
    }
    if (rest > 1) prime_factors.push_back(rest);
    std::uint64_t primitive = 0;
    for (std::uint64_t g = 2; g < order && primitive == 0; ++g) {
      bool ok = true;
      for (const auto r : prime_factors) {
        if (ext_pow_slow(g, n / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) primitive = g;
    }
    exp_table.assign(n, 0);
    log_table.assign(order, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_table[i] = static_cast<std::uint32_t>(x);
      log_table[x] = static_cast<std::uint32_t>(i);
      x = ext_mul_slow(x, primitive);
    }
  }
};

}  // namespace detail

namespace {

using FieldKey = std::tuple<std::uint64_t, unsigned, std::string>;

struct FieldRegistry {
  std::mutex mutex;
  std::map<FieldKey, std::unique_ptr<detail::FieldData>> fields;
};

FieldRegistry& registry() {
  static FieldRegistry instance;
  return instance;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
  }
  if (p > 0x7fffffffULL) {
    throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " exceeds 2^31");
  }
}

UPoly smallest_irreducible(std::uint32_t p, unsigned k) {
  if (k == 1) return UPoly{0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  // Candidate index n enumerates (c_0, ..., c_{k-1}) lexicographically with
  // c_0 most significant.
  for (std::uint64_t n = 0; n < count; ++n) {
    UPoly f(k + 1, 0);
    std::uint64_t rest = n;
    for (unsigned i = k; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[k] = 1;
    if (upoly::is_irreducible(f, p)) return f;
  }
  throw Error("InternalError", "no irreducible polynomial found");
}

const detail::FieldData* intern(std::uint64_t p, unsigned k, const std::string& parameter) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  const FieldKey key{p, k, parameter};
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();

  auto data = std::make_unique<detail::FieldData>();
  data->p = static_cast<std::uint32_t>(p);
  data->k = k;
  if (!parameter.empty()) {
    data->kind = FieldKind::rational_function;
    data->parameter = parameter;
    data->modulus = UPoly{0, 1};
    data->zero_frac = std::make_shared<const RationalFunction>(RationalFunction{{}, {1}});
    data->one_frac = std::make_shared<const RationalFunction>(RationalFunction{{1}, {1}});
  } else {
    data->kind = k == 1 ? FieldKind::prime : FieldKind::extension;
    data->modulus = smallest_irreducible(data->p, k);
    data->order = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (data->order > (~0ULL) / p) throw ResourceExceeded("field order overflows 64 bits");
      data->order *= p;
    }
    if (data->kind == FieldKind::extension) data->build_tables();
  }
  const auto* raw = data.get();
  reg.fields.emplace(key, std::move(data));
  return raw;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  require_prime(p);
  return Field(intern(p, 1, ""));
}

Field Field::extension(std::uint64_t p, unsigned k) {
  require_prime(p);
  if (k < 1) throw Error("InvalidArgument", "extension degree must be at least 1");
  return Field(intern(p, k, ""));
}

Field Field::rational_function(std::uint64_t p, std::string parameter) {
  require_prime(p);
  if (parameter.empty()) throw Error("InvalidArgument", "parameter name must be nonempty");
  return Field(intern(p, 1, parameter));
}

FieldKind Field::kind() const noexcept { return data_->kind; }
std::uint32_t Field::characteristic() const noexcept { return data_->p; }
unsigned Field::extension_degree() const noexcept { return data_->k; }
const std::optional<std::string>& Field::parameter() const noexcept { return data_->parameter; }
const UPoly& Field::modulus() const noexcept { return data_->modulus; }

std::uint64_t Field::order() const {
  if (!is_finite()) throw Error("InvalidArgument", "rational function field is infinite");
  return data_->order;
}

FieldElement Field::zero() const {
  if (data_->kind == FieldKind::rational_function) return FieldElement(data_, data_->zero_frac);
  return FieldElement(data_, std::uint64_t{0});
}

FieldElement Field::one() const {
  if (data_->kind == FieldKind::rational_function) return FieldElement(data_, data_->one_frac);
  return FieldElement(data_, std::uint64_t{1});
}

FieldElement Field::from_integer(std::int64_t n) const {
  const std::int64_t p = data_->p;
  std::int64_t r = n % p;
  if (r < 0) r += p;
  if (data_->kind == FieldKind::rational_function) {
    if (r == 0) return zero();
    return FieldElement(data_, std::make_shared<const RationalFunction>(
                                   RationalFunction{{static_cast<std::uint32_t>(r)}, {1}}));
  }
  return FieldElement(data_, static_cast<std::uint64_t>(r));
}

FieldElement Field::generator() const {
  switch (data_->kind) {
    case FieldKind::prime:
      throw Error("InvalidArgument", "prime field has no generator");
    case FieldKind::extension:
      return FieldElement(data_, std::uint64_t{data_->p});
    case FieldKind::rational_function:
      return FieldElement(data_, std::make_shared<const RationalFunction>(RationalFunction{{0, 1}, {1}}));
  }
  return zero();
}

FieldElement Field::from_upoly(const UPoly& poly) const {
  UPoly reduced = poly;
  for (auto& c : reduced) c %= data_->p;
  upoly::trim(reduced);
  switch (data_->kind) {
    case FieldKind::prime: {
      // Evaluate at the generator of F_p[x]/(x), i.e. at 0.
      return FieldElement(data_, std::uint64_t{reduced.empty() ? 0U : reduced[0]});
    }
    case FieldKind::extension:
      return FieldElement(data_, data_->encode(upoly::divmod(reduced, data_->modulus, data_->p).second));
    case FieldKind::rational_function:
      if (reduced.empty()) return zero();
      return FieldElement(data_, std::make_shared<const RationalFunction>(RationalFunction{reduced, {1}}));
  }
  return zero();
}

FieldElement Field::from_code(std::uint64_t code) const {
  if (!is_finite() || code >= data_->order) {
    throw Error("InvalidArgument", "element code out of range for " + to_string());
  }
  return FieldElement(data_, code);
}

FieldElement Field::fraction(const UPoly& num, const UPoly& den) const {
  return rational_normalize(*this, num, den);
}

bool Field::can_embed(const Field& sub) const noexcept {
  if (sub == *this) return true;
  return sub.kind() == FieldKind::prime && sub.characteristic() == characteristic();
}

FieldElement Field::embed(const FieldElement& x) const {
  const Field source = x.field();
  if (source == *this) return x;
  if (!can_embed(source)) {
    throw FieldMismatch("cannot embed " + source.to_string() + " into " + to_string());
  }
  return from_integer(static_cast<std::int64_t>(x.code()));
}

std::string Field::to_string() const {
  switch (data_->kind) {
    case FieldKind::prime:
      return "GF(" + std::to_string(data_->p) + ")";
    case FieldKind::extension:
      return "GF(" + std::to_string(data_->p) + "^" + std::to_string(data_->k) + ")";
    case FieldKind::rational_function:
      return "GF(" + std::to_string(data_->p) + ")(" + *data_->parameter + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Rational functions

namespace {

std::shared_ptr<const RationalFunction> make_fraction(UPoly num, UPoly den) {
  return std::make_shared<const RationalFunction>(RationalFunction{std::move(num), std::move(den)});
}

// Normalizes a fraction whose numerator and denominator may share factors.
std::shared_ptr<const RationalFunction> reduce_fraction(const detail::FieldData& f, UPoly num, UPoly den) {
  const std::uint32_t p = f.p;
  if (den.empty()) throw DivisionByZero("rational function with zero denominator");
  if (num.empty()) return f.zero_frac;
  if (den.size() > 1) {
    UPoly g = upoly::gcd(num, den, p);
    if (g.size() > 1) {
      num = upoly::divmod(num, g, p).first;
      den = upoly::divmod(den, g, p).first;
    }
  }
  if (den.back() != 1) {
    const std::uint32_t inv = inverse_mod(den.back(), p);
    num = upoly::scale(num, inv, p);
    den = upoly::scale(den, inv, p);
  }
  return make_fraction(std::move(num), std::move(den));
}

bool is_unit_poly(const UPoly& a) { return a.size() == 1 && a[0] == 1; }

}  // namespace

FieldElement rational_normalize(const Field& field, const UPoly& num, const UPoly& den) {
  if (field.kind() != FieldKind::rational_function) {
    throw FieldMismatch("rational_normalize requires a rational function field, got " + field.to_string());
  }
  UPoly n = num, d = den;
  for (auto& c : n) c %= field.characteristic();
  for (auto& c : d) c %= field.characteristic();
  upoly::trim(n);
  upoly::trim(d);
  return FieldElement(field.data(), reduce_fraction(*field.data(), std::move(n), std::move(d)));
}

// ---------------------------------------------------------------------------
// Field elements

void FieldElement::require_same_field(const FieldElement& other) const {
  if (field_ != other.field_) {
    throw FieldMismatch("arithmetic between " + Field(field_).to_string() + " and " +
                        Field(other.field_).to_string());
  }
}

const RationalFunction& FieldElement::fraction() const {
  if (field_ == nullptr || field_->kind != FieldKind::rational_function) {
    throw FieldMismatch("element is not in a rational function field");
  }
  return *frac_;
}

bool FieldElement::is_zero() const noexcept {
  if (field_ != nullptr && field_->kind == FieldKind::rational_function) return frac_->num.empty();
  return code_ == 0;
}

bool FieldElement::is_one() const noexcept {
  if (field_ != nullptr && field_->kind == FieldKind::rational_function) {
    return is_unit_poly(frac_->num) && is_unit_poly(frac_->den);
  }
  return code_ == 1;
}

bool FieldElement::operator==(const FieldElement& other) const {
  if (field_ != other.field_) return false;
  if (field_ != nullptr && field_->kind == FieldKind::rational_function) {
    return frac_ == other.frac_ || *frac_ == *other.frac_;
  }
  return code_ == other.code_;
}

FieldElement FieldElement::operator-() const {
  const auto& f = *field_;
  switch (f.kind) {
    case FieldKind::prime:
      return FieldElement(field_, code_ == 0 ? 0 : f.p - code_);
    case FieldKind::extension:
      return FieldElement(field_, f.ext_neg(code_));
    case FieldKind::rational_function:
      if (frac_->num.empty() || f.p == 2) return *this;
      return FieldElement(field_, make_fraction(upoly::scale(frac_->num, f.p - 1, f.p), frac_->den));
  }
  return *this;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  require_same_field(other);
  const auto& f = *field_;
  switch (f.kind) {
    case FieldKind::prime:
      code_ += other.code_;
      if (code_ >= f.p) code_ -= f.p;
      break;
    case FieldKind::extension:
      code_ = f.ext_add(code_, other.code_);
      break;
    case FieldKind::rational_function: {
      const auto& a = *frac_;
      const auto& b = *other.frac_;
      if (b.num.empty()) break;
      if (a.num.empty()) {
        frac_ = other.frac_;
        break;
      }
      if (a.den == b.den) {
        UPoly num = upoly::add(a.num, b.num, f.p);
        if (is_unit_poly(a.den)) {
          frac_ = num.empty() ? f.zero_frac : make_fraction(std::move(num), a.den);
        } else {
          frac_ = reduce_fraction(f, std::move(num), a.den);
        }
        break;
      }
      UPoly num = upoly::add(upoly::mul(a.num, b.den, f.p), upoly::mul(b.num, a.den, f.p), f.p);
      frac_ = reduce_fraction(f, std::move(num), upoly::mul(a.den, b.den, f.p));
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) { return *this += -other; }

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  require_same_field(other);
  const auto& f = *field_;
  switch (f.kind) {
    case FieldKind::prime:
      code_ = code_ * other.code_ % f.p;
      break;
    case FieldKind::extension:
      code_ = f.ext_mul(code_, other.code_);
      break;
    case FieldKind::rational_function: {
      const auto& a = *frac_;
      const auto& b = *other.frac_;
      if (a.num.empty() || b.num.empty()) {
        frac_ = f.zero_frac;
        break;
      }
      if (is_unit_poly(b.num) && is_unit_poly(b.den)) break;
      if (is_unit_poly(a.num) && is_unit_poly(a.den)) {
        frac_ = other.frac_;
        break;
      }
      if (is_unit_poly(a.den) && is_unit_poly(b.den)) {
        frac_ = make_fraction(upoly::mul(a.num, b.num, f.p), a.den);
        break;
      }
      // Cross-cancel so the product stays reduced.
      UPoly an = a.num, ad = a.den, bn = b.num, bd = b.den;
      UPoly g1 = upoly::gcd(an, bd, f.p);
      if (g1.size() > 1) {
        an = upoly::divmod(an, g1, f.p).first;
        bd = upoly::divmod(bd, g1, f.p).first;
      }
      UPoly g2 = upoly::gcd(bn, ad, f.p);
      if (g2.size() > 1) {
        bn = upoly::divmod(bn, g2, f.p).first;
        ad = upoly::divmod(ad, g2, f.p).first;
      }
      UPoly num = upoly::mul(an, bn, f.p);
      UPoly den = upoly::mul(ad, bd, f.p);
      if (den.back() != 1) {
        const std::uint32_t inv = inverse_mod(den.back(), f.p);
        num = upoly::scale(num, inv, f.p);
        den = upoly::scale(den, inv, f.p);
      }
      frac_ = make_fraction(std::move(num), std::move(den));
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) { return *this *= other.inverse(); }

FieldElement FieldElement::inverse() const {
  const auto& f = *field_;
  if (is_zero()) throw DivisionByZero("inverse of zero in " + Field(field_).to_string());
  switch (f.kind) {
    case FieldKind::prime:
      return FieldElement(field_, std::uint64_t{inverse_mod(static_cast<std::uint32_t>(code_), f.p)});
    case FieldKind::extension:
      return FieldElement(field_, f.ext_inverse(code_));
    case FieldKind::rational_function: {
      UPoly num = frac_->den, den = frac_->num;
      const std::uint32_t inv = inverse_mod(den.back(), f.p);
      return FieldElement(field_, make_fraction(upoly::scale(num, inv, f.p), upoly::scale(den, inv, f.p)));
    }
  }
  return *this;
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  const auto& f = *field_;
  if (f.kind == FieldKind::rational_function) {
    // Frobenius fast path: (num/den)^(p^j) = num(t^(p^j)) / den(t^(p^j)).
    std::uint64_t q = 1;
    while (e % f.p == 0 && e > 0) {
      e /= f.p;
      q *= f.p;
    }
    FieldElement base = *this;
    if (q > 1) {
      base = FieldElement(field_, make_fraction(upoly::inflate(frac_->num, q), upoly::inflate(frac_->den, q)));
    }
    FieldElement result = Field(field_).one();
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }
  FieldElement result = Field(field_).one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

FieldElement FieldElement::frobenius() const { return pow(field_->p); }

std::string FieldElement::to_string() const {
  const auto& f = *field_;
  switch (f.kind) {
    case FieldKind::prime:
      return std::to_string(code_);
    case FieldKind::extension:
      return upoly::to_string(f.decode(code_), Field::kGeneratorName);
    case FieldKind::rational_function: {
      const std::string num = upoly::to_string(frac_->num, *f.parameter);
      if (is_unit_poly(frac_->den)) return num;
      return "(" + num + ")/(" + upoly::to_string(frac_->den, *f.parameter) + ")";
    }
  }
  return "?";
}

bool FieldElement::prints_atomic() const {
  const auto& f = *field_;
  switch (f.kind) {
    case FieldKind::prime:
      return true;
    case FieldKind::extension: {
      const UPoly digits = f.decode(code_);
      return std::count_if(digits.begin(), digits.end(), [](auto d) { return d != 0; }) <= 1;
    }
    case FieldKind::rational_function:
      return is_unit_poly(frac_->den) &&
             std::count_if(frac_->num.begin(), frac_->num.end(), [](auto d) { return d != 0; }) <= 1;
  }
  return false;
}

FieldElement field_inverse(const FieldElement& a) { return a.inverse(); }

}  // namespace hklab
