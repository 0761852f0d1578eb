#include "doctest.h"
#include "hklab/error.hpp"
#include "hklab/hilbert_kunz.hpp"
#include "hklab/parser.hpp"

using namespace hklab;

namespace {

RingPresentation presentation(const Field& field, std::vector<std::string> vars, std::vector<std::string> relations) {
  const auto ring = PolyRing::make(field, std::move(vars));
  std::vector<Polynomial> rels;
  for (const auto& r : relations) rels.push_back(parse_polynomial(r, ring));
  return RingPresentation::make(ring, std::move(rels));
}

PrimeLocus point(const RingPresentation& ring, const std::vector<std::string>& coords, const Field& field) {
  std::vector<FieldElement> values;
  for (const auto& c : coords) values.push_back(parse_field_element(c, field));
  return PrimeLocus::maximal_point(ring, std::move(values));
}

RingPresentation brenner_monsky() {
  return presentation(Field::prime(2), {"x", "y", "z", "t"}, {"z^4+x*y*z^2+(x^3+y^3)*z+t*x^2*y^2"});
}

Rational ratio(long n, long d) { return Rational(n) / Rational(d); }

}  // namespace

TEST_CASE("frobenius powers of ideals") {
  const auto ring = PolyRing::make(Field::prime(2), {"x", "y"});
  const auto powered = frobenius_power(parse_polynomial_list("x, y", ring), 4);
  CHECK(powered[0].to_string() == "x^4");
  CHECK(powered[1].to_string() == "y^4");
  const auto a = buchberger(frobenius_power(parse_polynomial_list("x+y, y", ring), 2), MonomialOrder::grevlex);
  const auto b = buchberger(parse_polynomial_list("x^2, y^2", ring), MonomialOrder::grevlex);
  CHECK(a.to_string() == b.to_string());
  const auto gens = parse_polynomial_list("x^2+y, x*y", ring);
  CHECK(frobenius_power(gens, 1) == gens);
}

TEST_CASE("colengths at points and coordinate primes") {
  const auto plane = presentation(Field::prime(2), {"x", "y"}, {});
  const auto origin = point(plane, {"0", "0"}, Field::prime(2));
  CHECK(hk_colength(plane, origin, 4) == 16);
  CHECK(origin.height() == 2);

  for (const std::uint32_t p : {2U, 3U}) {
    const auto node = presentation(Field::prime(p), {"x", "y"}, {"x*y"});
    const auto o = point(node, {"0", "0"}, Field::prime(p));
    for (std::uint64_t q = p; q <= 81; q *= p) CHECK(hk_colength(node, o, q) == 2 * q - 1);
  }

  const auto bm = brenner_monsky();
  const auto curve = PrimeLocus::coordinate_prime(bm, std::vector<std::string>{"x", "y", "z"});
  CHECK(curve.height() == 2);
  CHECK(curve.local_field().to_string() == "GF(2)(t)");
  CHECK(curve.describe(bm) == "(x,y,z)");
  CHECK(hk_colength(bm, curve, 2) == 8);
  CHECK(hk_colength(bm, curve, 4) == 44);
  CHECK(hk_colength(bm, curve, 8) == 188);
  CHECK_THROWS_AS(hk_colength(bm, curve, 6), NotAPowerOfP);
  CHECK_THROWS_AS(hk_colength(bm, curve, 1), NotAPowerOfP);
}

TEST_CASE("hilbert-kunz function values") {
  const auto plane3 = presentation(Field::prime(3), {"x", "y"}, {});
  CHECK(hk_function(plane3, point(plane3, {"0", "0"}, Field::prime(3)), 9) == 1);
  CHECK(hk_function(plane3, point(plane3, {"1", "2"}, Field::prime(3)), 9) == 1);
  const auto node = presentation(Field::prime(2), {"x", "y"}, {"x*y"});
  CHECK(hk_function(node, point(node, {"0", "0"}, Field::prime(2)), 8) == ratio(15, 8));
  const auto bm = brenner_monsky();
  CHECK(hk_function(bm, PrimeLocus::coordinate_prime(bm, std::vector<std::string>{"x", "y", "z"}), 2) == 2);
}

TEST_CASE("convergence brackets") {
  const auto node = presentation(Field::prime(2), {"x", "y"}, {"x*y"});
  const auto est = hk_multiplicity_estimate(node, point(node, {"0", "0"}, Field::prime(2)), 6);
  CHECK(est.c_hat == 1);
  CHECK(est.bracket_lo == ratio(63, 32));
  CHECK(est.bracket_hi == 2);
  CHECK(est.heuristic);
  CHECK(est.samples.size() == 6);

  const auto plane = presentation(Field::prime(2), {"x", "y"}, {});
  const auto flat = hk_multiplicity_estimate(plane, point(plane, {"0", "0"}, Field::prime(2)), 4);
  CHECK(flat.c_hat == 0);
  CHECK(flat.bracket_lo == 1);
  CHECK(flat.bracket_hi == 1);

  CHECK_THROWS_AS(hk_multiplicity_estimate(plane, point(plane, {"0", "0"}, Field::prime(2)), 1), InsufficientSamples);
  CHECK_THROWS_AS(fit_convergence(2, 2, {}), InsufficientSamples);
}

TEST_CASE("the fitted constant bounds every sampled difference") {
  const auto cusp = presentation(Field::prime(3), {"x", "y"}, {"y^2-x^3"});
  const auto est = hk_multiplicity_estimate(cusp, point(cusp, {"0", "0"}, Field::prime(3)), 4);
  for (std::size_t i = 0; i + 1 < est.samples.size(); ++i) {
    const Rational lq(BigInt(est.samples[i].colength));
    const Rational lpq(BigInt(est.samples[i + 1].colength));
    Rational diff = 3 * lq - lpq;
    if (diff < 0) diff = -diff;
    CHECK(diff <= est.c_hat);  // height 1: q^(h-1) = 1
  }
}

TEST_CASE("monotonicity along chains") {
  const auto node = presentation(Field::prime(2), {"x", "y"}, {"x*y"});
  const auto branch = PrimeLocus::coordinate_prime(node, std::vector<std::string>{"x"});
  CHECK(branch.height() == 0);
  const auto origin = point(node, {"0", "0"}, Field::prime(2));
  for (std::uint64_t q : {2, 4, 8}) {
    const auto report = monotonicity_check(node, {branch, origin}, q);
    CHECK(report.pass);
    CHECK(report.links[0].f_lower == 1);
    CHECK(report.links[0].f_upper == Rational(2 * q - 1) / Rational(q));
  }
  CHECK_THROWS_AS(monotonicity_check(node, {origin, branch}, 2), NotAChain);
  CHECK_THROWS_AS(monotonicity_check(node, {origin}, 2), NotAChain);

  const auto plane = presentation(Field::prime(3), {"x", "y"}, {});
  const auto chain = std::vector<PrimeLocus>{PrimeLocus::coordinate_prime(plane, std::vector<std::string>{"x"}),
                                             point(plane, {"0", "1"}, Field::prime(3))};
  const auto flat = monotonicity_check(plane, chain, 9);
  CHECK(flat.pass);
  CHECK(flat.links[0].f_lower == 1);
  CHECK(flat.links[0].f_upper == 1);

  const auto bm = brenner_monsky();
  const auto curve = PrimeLocus::coordinate_prime(bm, std::vector<std::string>{"x", "y", "z"});
  const auto t0 = point(bm, {"0", "0", "0", "0"}, Field::prime(2));
  ExecutionOptions two_jobs;
  two_jobs.jobs = 2;
  const auto serial = monotonicity_check(bm, {curve, t0}, 2);
  const auto parallel = monotonicity_check(bm, {curve, t0}, 2, two_jobs);
  CHECK(serial.pass);
  CHECK(serial.links[0].f_lower == parallel.links[0].f_lower);
  CHECK(serial.links[0].f_upper == parallel.links[0].f_upper);
}

TEST_CASE("semicontinuity scans") {
  const auto plane = presentation(Field::prime(2), {"x", "y"}, {});
  const auto base = PrimeLocus::coordinate_prime(plane, std::vector<std::string>{"x"});
  const std::vector<PrimeLocus> points = {point(plane, {"0", "0"}, Field::prime(2)),
                                          point(plane, {"0", "1"}, Field::prime(2))};
  const auto scan = semicontinuity_scan(plane, base, points, 3, ratio(1, 100));
  CHECK(scan.base.bracket_lo == 1);
  CHECK(scan.base.bracket_hi == 1);
  for (const auto& entry : scan.points) {
    CHECK(entry.classification == Classification::below);
    CHECK_FALSE(entry.strictly_exceeds_base);
  }
  CHECK_FALSE(scan.all_strictly_exceed);
  CHECK(scan.common_q == 8);

  const auto node = presentation(Field::prime(2), {"x", "y"}, {"x*y"});
  const auto branch = PrimeLocus::coordinate_prime(node, std::vector<std::string>{"x"});
  const auto node_scan = semicontinuity_scan(
      node, branch, {point(node, {"0", "1"}, Field::prime(2)), point(node, {"0", "0"}, Field::prime(2))}, 4,
      ratio(1, 10));
  CHECK(node_scan.points[0].classification == Classification::below);
  CHECK(node_scan.points[1].classification == Classification::above);
  CHECK(node_scan.points[1].strictly_exceeds_base);
  CHECK(to_string(Classification::undecided) == "UNDECIDED");

  const auto off = PrimeLocus::coordinate_prime(plane, std::vector<std::string>{"y"});
  CHECK_THROWS_AS(semicontinuity_scan(plane, off, {point(plane, {"1", "1"}, Field::prime(2))}, 2, 0), NotContaining);
}

TEST_CASE("parameter multiplicities") {
  const auto fat = presentation(Field::prime(2), {"x", "y"}, {"x^2"});
  const auto o1 = point(fat, {"0", "0"}, Field::prime(2));
  const auto r1 = parameter_multiplicity_check(fat, o1, parse_polynomial_list("y", fat.ring), {3});
  CHECK(r1.length_parameters == 2);
  CHECK(r1.length_powered == 6);
  CHECK(r1.holds);

  const auto plane = presentation(Field::prime(3), {"x", "y"}, {});
  const auto r2 = parameter_multiplicity_check(plane, point(plane, {"0", "0"}, Field::prime(3)),
                                               parse_polynomial_list("x, y", plane.ring), {2, 2});
  CHECK(r2.length_parameters == 1);
  CHECK(r2.length_powered == 4);
  CHECK(r2.holds);

  const auto node = presentation(Field::prime(2), {"x", "y"}, {"x*y"});
  const auto r3 = parameter_multiplicity_check(node, point(node, {"0", "0"}, Field::prime(2)),
                                               parse_polynomial_list("x+y", node.ring), {2});
  CHECK(r3.length_parameters == 2);
  CHECK(r3.length_powered == 4);
  CHECK(r3.holds);

  // x - 1 vanishes elsewhere on the line; only the local part at the origin counts.
  const auto line = presentation(Field::prime(3), {"x", "y"}, {"y"});
  const auto r4 = parameter_multiplicity_check(line, point(line, {"0", "0"}, Field::prime(3)),
                                               parse_polynomial_list("x^2-x", line.ring), {2});
  CHECK(r4.length_parameters == 1);
  CHECK(r4.length_powered == 2);

  CHECK_THROWS_AS(parameter_multiplicity_check(plane, point(plane, {"0", "0"}, Field::prime(3)),
                                               parse_polynomial_list("x", plane.ring), {2}),
                  NotSystemOfParameters);
  CHECK_THROWS_AS(parameter_multiplicity_check(plane, point(plane, {"0", "0"}, Field::prime(3)),
                                               parse_polynomial_list("x, x", plane.ring), {2, 2}),
                  NotSystemOfParameters);
}

TEST_CASE("locus validation") {
  const auto node = presentation(Field::prime(2), {"x", "y"}, {"x*y"});
  CHECK_THROWS_AS(point(node, {"1", "1"}, Field::prime(2)), InvalidLocus);
  CHECK_THROWS_AS(point(node, {"0"}, Field::prime(2)), InvalidLocus);
  CHECK_THROWS_AS(PrimeLocus::coordinate_prime(node, std::vector<std::string>{"w"}), InvalidLocus);

  const auto curve = presentation(Field::prime(2), {"x", "y", "z"}, {"x+y*z"});
  CHECK_THROWS_AS(PrimeLocus::coordinate_prime(curve, std::vector<std::string>{"y"}), InvalidLocus);
  CHECK_THROWS_AS(PrimeLocus::coordinate_prime(curve, std::vector<std::string>{"z"}), InvalidLocus);
  CHECK_NOTHROW(PrimeLocus::coordinate_prime(curve, std::vector<std::string>{"x", "z"}));

  const auto space = presentation(Field::prime(2), {"x", "y", "z"}, {});
  CHECK_THROWS_AS(PrimeLocus::coordinate_prime(space, std::vector<std::string>{"x"}), UnsupportedLocus);
  const auto over_f4 = presentation(Field::extension(2, 2), {"x", "y"}, {});
  CHECK_THROWS_AS(PrimeLocus::coordinate_prime(over_f4, std::vector<std::string>{"x"}), UnsupportedLocus);

  const auto bm = brenner_monsky();
  const auto pa = point(bm, {"0", "0", "0", "a"}, Field::extension(2, 2));
  CHECK(pa.height() == 3);
  CHECK(pa.describe(bm) == "(x,y,z,t+a)");
  const auto base = PrimeLocus::coordinate_prime(bm, std::vector<std::string>{"x", "y", "z"});
  CHECK(base.contained_in(pa));
  CHECK_FALSE(pa.contained_in(base));
  CHECK(hk_colength(bm, pa, 2) == 16);
}
