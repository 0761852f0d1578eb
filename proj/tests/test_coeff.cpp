#include <random>

#include "doctest.h"
#include "hklab/coeff.hpp"
#include "hklab/error.hpp"

using namespace hklab;

namespace {

// Degree-k monic polynomials over F_p with no root and no factor of any
// lower degree, found by brute-force multiplication of all monic pairs.
std::vector<UPoly> irreducibles_by_enumeration(std::uint32_t p, unsigned k) {
  const auto monic_of_degree = [p](unsigned d) {
    std::vector<UPoly> out;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      UPoly f(d + 1, 0);
      std::uint64_t rest = code;
      for (unsigned i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      f[d] = 1;
      out.push_back(f);
    }
    return out;
  };
  std::vector<UPoly> reducible;
  for (unsigned d = 1; d < k; ++d) {
    for (const auto& f : monic_of_degree(d)) {
      for (const auto& g : monic_of_degree(k - d)) reducible.push_back(upoly::mul(f, g, p));
    }
  }
  std::vector<UPoly> out;
  for (const auto& f : monic_of_degree(k)) {
    if (std::find(reducible.begin(), reducible.end(), f) == reducible.end()) out.push_back(f);
  }
  return out;
}

FieldElement random_element(const Field& field, std::mt19937_64& rng) {
  if (field.is_finite()) return field.from_code(rng() % field.order());
  std::uniform_int_distribution<int> degree(0, 3);
  const auto random_upoly = [&](bool nonzero) {
    UPoly f;
    do {
      f.assign(degree(rng) + 1, 0);
      for (auto& c : f) c = static_cast<std::uint32_t>(rng() % field.characteristic());
      upoly::trim(f);
    } while (nonzero && f.empty());
    return f;
  };
  return field.fraction(random_upoly(false), random_upoly(true));
}

void check_field_axioms(const Field& field, int triples) {
  std::mt19937_64 rng(20240611 + field.characteristic() * 31 + field.extension_degree());
  for (int i = 0; i < triples; ++i) {
    const auto a = random_element(field, rng);
    const auto b = random_element(field, rng);
    const auto c = random_element(field, rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + field.zero() == a);
    REQUIRE(a * field.one() == a);
    REQUIRE((a - a).is_zero());
    if (!a.is_zero()) REQUIRE((a * a.inverse()).is_one());
    const std::uint32_t p = field.characteristic();
    REQUIRE((a + b).pow(p) == a.pow(p) + b.pow(p));
    REQUIRE(a.frobenius() == a.pow(p));
  }
}

}  // namespace

TEST_CASE("extension field moduli") {
  const Field f2 = make_extension_field(2, 1);
  CHECK(f2.kind() == FieldKind::prime);
  CHECK(f2.modulus() == UPoly{0, 1});

  const Field f4 = make_extension_field(2, 2);
  CHECK(f4.modulus() == UPoly{1, 1, 1});
  const auto degree_two = irreducibles_by_enumeration(2, 2);
  REQUIRE(degree_two.size() == 1);
  CHECK(degree_two.front() == f4.modulus());

  CHECK_THROWS_AS(make_extension_field(4, 1), NonPrimeCharacteristic);
  CHECK_THROWS_AS(Field::prime(1), NonPrimeCharacteristic);
}

TEST_CASE("modulus is the smallest irreducible, low degree first") {
  for (const auto& [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
    auto all = irreducibles_by_enumeration(p, k);
    REQUIRE(!all.empty());
    // Vector comparison looks at the constant term first.
    std::sort(all.begin(), all.end());
    CHECK(Field::extension(p, k).modulus() == all.front());
    for (const auto& f : all) CHECK(upoly::is_irreducible(f, p));
  }
}

TEST_CASE("field inverses") {
  const Field f5 = Field::prime(5);
  CHECK(field_inverse(f5.from_integer(2)) == f5.from_integer(3));

  const Field f4 = Field::extension(2, 2);
  const auto a = f4.generator();
  CHECK(field_inverse(a) == a + f4.one());
  CHECK(field_inverse(a).to_string() == "a+1");

  const Field ft = Field::rational_function(2, "t");
  const auto t = ft.generator();
  const auto x = t / (t + ft.one());
  CHECK(field_inverse(x) == (t + ft.one()) / t);
  CHECK(field_inverse(x).to_string() == "(t+1)/(t)");
  CHECK_THROWS_AS(f5.zero().inverse(), DivisionByZero);
  CHECK_THROWS_AS(ft.zero().inverse(), DivisionByZero);
}

TEST_CASE("rational normalization") {
  const Field ft = Field::rational_function(2, "t");
  const auto n1 = rational_normalize(ft, {0, 1, 1}, {0, 1});
  CHECK(n1.fraction().num == UPoly{1, 1});
  CHECK(n1.fraction().den == UPoly{1});
  CHECK(rational_normalize(ft, {0, 1}, {0, 1}).is_one());
  const auto n3 = rational_normalize(ft, {1, 0, 1}, {1, 1});
  CHECK(n3.fraction().num == UPoly{1, 1});
  CHECK(n3.fraction().den == UPoly{1});
  CHECK(n3.to_string() == "t+1");
  CHECK_THROWS_AS(rational_normalize(ft, {1}, {}), DivisionByZero);

  const Field f3t = Field::rational_function(3, "s");
  const auto scaled = rational_normalize(f3t, {2, 2}, {2});
  CHECK(scaled.fraction().den == UPoly{1});
  CHECK(scaled.fraction().num == UPoly{1, 1});
}

TEST_CASE("normalization is idempotent and products stay reduced") {
  const Field ft = Field::rational_function(3, "t");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_element(ft, rng);
    const auto b = random_element(ft, rng);
    const auto again = rational_normalize(ft, a.fraction().num, a.fraction().den);
    CHECK(again == a);
    CHECK(again.fraction() == a.fraction());
    const auto product = a * b;
    const auto& f = product.fraction();
    CHECK(upoly::gcd(f.num, f.den, 3) == UPoly{1});
    CHECK(f.den.back() == 1);
  }
}

TEST_CASE("field axioms on random triples") {
  check_field_axioms(Field::prime(2), 1000);
  check_field_axioms(Field::prime(3), 1000);
  check_field_axioms(Field::prime(5), 1000);
  check_field_axioms(Field::extension(2, 2), 1000);
  check_field_axioms(Field::extension(2, 3), 1000);
  check_field_axioms(Field::extension(3, 2), 1000);
  check_field_axioms(Field::rational_function(2, "t"), 1000);
  check_field_axioms(Field::rational_function(3, "t"), 1000);
}

TEST_CASE("printing") {
  CHECK(Field::prime(7).from_integer(-1).to_string() == "6");
  const Field f8 = Field::extension(2, 3);
  CHECK(f8.to_string() == "GF(2^3)");
  CHECK((f8.generator().pow(2) + f8.one()).to_string() == "a^2+1");
  const Field ft = Field::rational_function(2, "t");
  CHECK(ft.to_string() == "GF(2)(t)");
  CHECK((ft.generator() * ft.generator()).to_string() == "t^2");
  CHECK(ft.fraction({1}, {1, 1}).to_string() == "(1)/(t+1)");
}

TEST_CASE("embedding and mismatches") {
  const Field f2 = Field::prime(2);
  const Field f4 = Field::extension(2, 2);
  CHECK(f4.can_embed(f2));
  CHECK_FALSE(f2.can_embed(f4));
  CHECK(f4.embed(f2.one()).is_one());
  CHECK_THROWS_AS(f4.one() + f2.one(), FieldMismatch);
  CHECK(Field::extension(2, 2) == f4);
}
