#include <algorithm>
#include <random>

#include "doctest.h"
#include "hklab/error.hpp"
#include "hklab/groebner.hpp"
#include "hklab/parser.hpp"
#include "support/macaulay_oracle.hpp"

using namespace hklab;

namespace {

GroebnerBasis gb(const RingRef& ring, std::string_view gens, MonomialOrder order = MonomialOrder::grevlex) {
  return buchberger(parse_polynomial_list(gens, ring), order);
}

std::vector<Polynomial> random_generators(const RingRef& ring, std::mt19937_64& rng, const std::vector<std::string>& names) {
  const std::uint32_t p = ring->field().characteristic();
  std::vector<Polynomial> gens;
  const std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    gens.push_back(parse_polynomial(oracle::to_text(oracle::random_poly(rng, names.size(), 3, 4, p), names), ring));
  }
  return gens;
}

}  // namespace

TEST_CASE("s-polynomials") {
  const auto f2 = PolyRing::make(Field::prime(2), {"x", "y"});
  CHECK(s_polynomial(parse_polynomial("x^2", f2), parse_polynomial("x*y", f2), MonomialOrder::grevlex).is_zero());
  const auto f3 = PolyRing::make(Field::prime(3), {"x", "y"});
  const auto s = s_polynomial(parse_polynomial("x^2-y", f3), parse_polynomial("x", f3), MonomialOrder::grevlex);
  CHECK(s.monic() == parse_polynomial("y", f3));
  const auto f = parse_polynomial("x^2+y", f3);
  CHECK(s_polynomial(f, f, MonomialOrder::grevlex).is_zero());
  CHECK_THROWS_AS(s_polynomial(Polynomial(f3), f, MonomialOrder::grevlex), ZeroInput);
}

TEST_CASE("normal forms") {
  const auto f2 = PolyRing::make(Field::prime(2), {"x", "y"});
  const std::vector<Polynomial> x2 = {parse_polynomial("x^2", f2)};
  CHECK(normal_form(parse_polynomial("x^3", f2), x2, MonomialOrder::grevlex).is_zero());
  const auto f3 = PolyRing::make(Field::prime(3), {"x", "y"});
  const std::vector<Polynomial> basis = {parse_polynomial("x^2-1", f3)};
  CHECK(normal_form(parse_polynomial("x^2*y+y", f3), basis, MonomialOrder::grevlex) == parse_polynomial("2*y", f3));
  const auto g = parse_polynomial("x*y+y^3", f3);
  CHECK(normal_form(g, basis, MonomialOrder::grevlex) == g);
}

TEST_CASE("reduced bases") {
  const auto f2 = PolyRing::make(Field::prime(2), {"x", "y"});
  CHECK(gb(f2, "x^8, y^8").to_string() == "y^8\nx^8\n");
  CHECK(gb(f2, "x*y, x^2").to_string() == "x*y\nx^2\n");
  const auto f3 = PolyRing::make(Field::prime(3), {"x", "y", "z"});
  CHECK(gb(f3, "x-y, y-z", MonomialOrder::lex).to_string() == "y+2*z\nx+2*z\n");
  CHECK(gb(f3, "x+1, x").is_unit());
  CHECK_THROWS_AS(buchberger({Polynomial(f3)}, MonomialOrder::grevlex), EmptyIdeal);
}

TEST_CASE("colength and dimension") {
  const auto f2 = PolyRing::make(Field::prime(2), {"x", "y"});
  CHECK(colength(gb(f2, "x^2, y^2")).value == 4);
  auto standard = colength(gb(f2, "x^2, y^2")).standard_monomials;
  REQUIRE(standard);
  CHECK(standard->size() == 4);
  for (std::uint64_t q : {2, 4, 8, 16, 32}) {
    const auto text = "x*y, x^" + std::to_string(q) + ", y^" + std::to_string(q);
    CHECK(colength(gb(f2, text)).value == 2 * q - 1);
  }
  CHECK_FALSE(colength(gb(f2, "x")).value);
  CHECK(krull_dimension(gb(f2, "x*y")) == 1);
  CHECK(krull_dimension(gb(f2, "x^2, y^2")) == 0);
  const auto bm = PolyRing::make(Field::prime(2), {"x", "y", "z", "t"});
  CHECK(krull_dimension(gb(bm, "z^4+x*y*z^2+(x^3+y^3)*z+t*x^2*y^2")) == 3);
  CHECK_THROWS_AS(krull_dimension(gb(f2, "1")), UnitIdeal);
}

TEST_CASE("degree cap") {
  const auto f2 = PolyRing::make(Field::prime(2), {"x", "y", "z"});
  GroebnerOptions options;
  options.degree_cap = 4;
  CHECK_THROWS_AS(buchberger(parse_polynomial_list("x^3*y+z^2, y^3*z+x, z^3*x+y^2", f2), MonomialOrder::grevlex, options),
                  ResourceExceeded);
}

TEST_CASE("canonical, idempotent, complete on random ideals") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> names = {"x", "y", "z"};
  for (const std::uint32_t p : {2U, 3U}) {
    const auto ring = PolyRing::make(Field::prime(p), names);
    for (int i = 0; i < 40; ++i) {
      auto gens = random_generators(ring, rng, names);
      const auto basis = buchberger(gens, MonomialOrder::grevlex);
      std::reverse(gens.begin(), gens.end());
      CHECK(buchberger(gens, MonomialOrder::grevlex).to_string() == basis.to_string());
      std::shuffle(gens.begin(), gens.end(), rng);
      CHECK(buchberger(gens, MonomialOrder::grevlex).to_string() == basis.to_string());
      for (const auto& g : gens) CHECK(basis.contains(g));
      const auto f = parse_polynomial(oracle::to_text(oracle::random_poly(rng, 3, 4, 5, p), names), ring);
      const auto r = basis.reduce(f);
      CHECK(basis.reduce(r) == r);
      CHECK(basis.contains(f - r));
      // S-polynomials of the basis reduce to zero.
      const auto& g = basis.generators();
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = a + 1; b < g.size(); ++b) {
          CHECK(basis.reduce(s_polynomial(g[a], g[b], MonomialOrder::grevlex)).is_zero());
        }
      }
      if (!basis.is_unit()) {
        CHECK(colength(basis, 0).value.has_value() == (krull_dimension(basis) == 0));
      }
    }
  }
}

TEST_CASE("colength agrees with the dense oracle") {
  std::mt19937_64 rng(77);
  const std::vector<std::string> names = {"x", "y", "z"};
  for (int i = 0; i < 30; ++i) {
    const std::uint32_t p = i % 2 == 0 ? 2 : 3;
    const std::size_t nvars = 1 + i % 3;
    const std::vector<std::string> used(names.begin(), names.begin() + nvars);
    const auto ring = PolyRing::make(Field::prime(p), used);
    std::vector<oracle::Poly> gens;
    const std::size_t count = 1 + rng() % 3;
    for (std::size_t k = 0; k < count; ++k) gens.push_back(oracle::random_poly(rng, nvars, 3, 4, p));
    const std::uint32_t box = 2 + rng() % 4;
    std::vector<Polynomial> engine;
    for (const auto& g : gens) engine.push_back(parse_polynomial(oracle::to_text(g, used), ring));
    for (std::size_t v = 0; v < nvars; ++v) {
      Monomial m(nvars);
      m.set(v, box);
      engine.push_back(Polynomial::term(ring, ring->field().one(), m));
    }
    const auto result = colength(buchberger(engine, MonomialOrder::grevlex), 0);
    REQUIRE(result.value);
    CHECK(*result.value == oracle::truncated_colength(gens, nvars, box, p));
  }
}
