#include "hklab/hilbert_kunz.hpp"

#include <algorithm>
#include <set>

#include "hklab/error.hpp"

namespace hklab {

namespace {

unsigned presentation_dimension(const RingPresentation& ring) {
  if (ring.relations.empty()) return static_cast<unsigned>(ring.ring->num_vars());
  const GroebnerBasis gb = buchberger(ring.relations, MonomialOrder::grevlex);
  if (gb.is_unit()) throw InvalidLocus("the relations generate the unit ideal");
  return krull_dimension(gb);
}

std::uint64_t checked_q(std::uint64_t q, std::uint32_t p) {
  const auto e = log_p(q, p);
  if (!e || *e == 0) {
    throw NotAPowerOfP("q = " + std::to_string(q) + " is not p^e with e >= 1 for p = " + std::to_string(p));
  }
  return q;
}

Polynomial pure_power(const RingRef& ring, std::size_t var, std::uint64_t exponent) {
  if (exponent > 0xffffffffULL) throw ExponentOverflow("exponent " + std::to_string(exponent) + " too large");
  Monomial m(ring->num_vars());
  m.set(var, static_cast<std::uint32_t>(exponent));
  return Polynomial::term(ring, ring->field().one(), m);
}

// Drops the terms lying in (x_1^q, ..., x_n^q).
Polynomial truncate_below(const Polynomial& f, std::uint64_t q) {
  std::vector<Term> kept;
  for (const auto& t : f.terms()) {
    bool inside = true;
    for (std::size_t i = 0; i < t.monomial.size() && inside; ++i) inside = t.monomial[i] < q;
    if (inside) kept.push_back(t);
  }
  return Polynomial::from_sorted_terms(f.ring(), std::move(kept));
}

// Local length at the origin of the local ring, for ideals whose zero set may
// contain other points: with G the global colength, adding x_i^G kills every
// component away from the origin and leaves the local part untouched (its
// maximal ideal is nilpotent of index at most G).
std::uint64_t local_length_at_origin(const LocalPresentation& lp, const std::vector<Polynomial>& extra,
                                     const GroebnerOptions& options) {
  std::vector<Polynomial> gens = lp.relations;
  gens.insert(gens.end(), extra.begin(), extra.end());
  const GroebnerBasis global = buchberger(gens, MonomialOrder::grevlex, options);
  const auto total = colength(global, 0).value;
  if (!total) throw NotSystemOfParameters("the parameter ideal does not have finite colength");
  if (*total == 0) throw NotSystemOfParameters("the parameters generate the unit ideal");
  for (std::size_t i = 0; i < lp.ring->num_vars(); ++i) gens.push_back(pure_power(lp.ring, i, *total));
  const GroebnerBasis local = buchberger(gens, MonomialOrder::grevlex, options);
  const auto value = colength(local, 0).value;
  if (!value || *value == 0) throw NotSystemOfParameters("the point is not on the parameter locus");
  return *value;
}

Rational power_of(std::uint64_t base, int exponent) {
  Rational out = 1;
  const Rational b = Rational(BigInt(base));
  for (int i = 0; i < std::abs(exponent); ++i) out *= b;
  return exponent >= 0 ? out : Rational(1) / out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PrimeLocus

PrimeLocus PrimeLocus::maximal_point(const RingPresentation& ring, std::vector<FieldElement> coordinates) {
  const std::size_t n = ring.ring->num_vars();
  if (coordinates.size() != n) {
    throw InvalidLocus("point has " + std::to_string(coordinates.size()) + " coordinates, ring has " +
                       std::to_string(n) + " variables");
  }
  Field field = ring.field();
  for (const auto& c : coordinates) {
    if (!c.valid()) throw InvalidLocus("uninitialized coordinate");
    if (field.can_embed(c.field())) continue;
    if (c.field().can_embed(field)) {
      field = c.field();
      continue;
    }
    throw InvalidLocus("coordinate in " + c.field().to_string() + " is incompatible with " + field.to_string());
  }
  for (auto& c : coordinates) {
    if (!field.can_embed(c.field())) {
      throw InvalidLocus("coordinates mix incompatible fields " + c.field().to_string() + " and " +
                         field.to_string());
    }
    c = field.embed(c);
  }
  for (std::size_t r = 0; r < ring.relations.size(); ++r) {
    if (!ring.relations[r].evaluate(coordinates).is_zero()) {
      throw InvalidLocus("point does not lie on V(J): relation " + std::to_string(r) + " does not vanish");
    }
  }
  PrimeLocus locus;
  locus.kind_ = LocusKind::maximal_point;
  locus.coordinates_ = std::move(coordinates);
  locus.num_vars_ = n;
  locus.height_ = presentation_dimension(ring);
  locus.local_field_ = field;
  return locus;
}

PrimeLocus PrimeLocus::coordinate_prime(const RingPresentation& ring, const std::vector<std::string>& variables) {
  std::vector<std::size_t> indices;
  for (const auto& name : variables) {
    const auto index = ring.ring->index_of(name);
    if (!index) throw InvalidLocus("unknown variable '" + name + "' in coordinate prime");
    indices.push_back(*index);
  }
  return coordinate_prime(ring, std::move(indices));
}

PrimeLocus PrimeLocus::coordinate_prime(const RingPresentation& ring, std::vector<std::size_t> indices) {
  const std::size_t n = ring.ring->num_vars();
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty()) throw InvalidLocus("a coordinate prime needs at least one variable");
  std::uint32_t mask = 0;
  for (const auto i : indices) {
    if (i >= n) throw InvalidLocus("variable index out of range");
    mask |= 1U << i;
  }
  for (std::size_t r = 0; r < ring.relations.size(); ++r) {
    for (const auto& t : ring.relations[r].terms()) {
      if ((t.monomial.support() & mask) == 0) {
        throw InvalidLocus("relation " + std::to_string(r) + " is not contained in the coordinate prime");
      }
    }
  }
  const std::size_t complement = n - indices.size();
  PrimeLocus locus;
  locus.kind_ = LocusKind::coordinate_prime;
  locus.variables_ = indices;
  locus.num_vars_ = n;
  if (complement > 1) {
    throw UnsupportedLocus("the residue field would need " + std::to_string(complement) +
                           " transcendental parameters; at most one is supported");
  }
  if (complement == 1) {
    if (ring.field().kind() != FieldKind::prime) {
      throw UnsupportedLocus("function fields over " + ring.field().to_string() + " are not supported");
    }
    std::size_t free_var = 0;
    while (mask & (1U << free_var)) ++free_var;
    locus.local_field_ = Field::rational_function(ring.characteristic(), ring.variables()[free_var]);
  } else {
    locus.local_field_ = ring.field();
  }
  const unsigned dim = presentation_dimension(ring);
  if (dim < complement) throw InvalidLocus("the coordinate prime is not a prime of this ring");
  locus.height_ = dim - static_cast<unsigned>(complement);
  return locus;
}

bool PrimeLocus::contained_in(const PrimeLocus& other) const {
  if (num_vars_ != other.num_vars_) return false;
  if (kind_ == LocusKind::coordinate_prime && other.kind_ == LocusKind::coordinate_prime) {
    return std::includes(other.variables_.begin(), other.variables_.end(), variables_.begin(), variables_.end());
  }
  if (kind_ == LocusKind::coordinate_prime && other.kind_ == LocusKind::maximal_point) {
    for (const auto i : variables_) {
      if (!other.coordinates_[i].is_zero()) return false;
    }
    return true;
  }
  if (kind_ == LocusKind::maximal_point && other.kind_ == LocusKind::maximal_point) {
    if (!(local_field_ == other.local_field_)) return false;
    return coordinates_ == other.coordinates_;
  }
  // A maximal point lies in a coordinate prime only if both are the origin.
  if (other.variables_.size() != num_vars_) return false;
  return std::all_of(coordinates_.begin(), coordinates_.end(), [](const auto& c) { return c.is_zero(); });
}

std::string PrimeLocus::describe(const RingPresentation& ring) const {
  std::string out = "(";
  if (kind_ == LocusKind::coordinate_prime) {
    for (std::size_t k = 0; k < variables_.size(); ++k) {
      if (k > 0) out += ',';
      out += ring.variables()[variables_[k]];
    }
    return out + ")";
  }
  const RingRef local = ring.ring->with_field(local_field_);
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (i > 0) out += ',';
    out += (Polynomial::variable(local, i) - Polynomial::constant(local, coordinates_[i])).to_string();
  }
  return out + ")";
}

LocalPresentation local_presentation(const RingPresentation& ring, const PrimeLocus& locus) {
  if (locus.kind() == LocusKind::maximal_point) {
    const RingRef local = ring.ring->with_field(locus.local_field());
    LocalPresentation out{local, {}};
    for (const auto& r : ring.relations) {
      Polynomial shifted = shift_point(r.in_ring(local), locus.coordinates());
      if (!shifted.is_zero()) out.relations.push_back(std::move(shifted));
    }
    return out;
  }
  const auto& subset = locus.variables();
  if (subset.size() == ring.ring->num_vars()) return LocalPresentation{ring.ring, ring.relations};

  std::vector<std::string> names;
  std::uint32_t mask = 0;
  for (const auto i : subset) {
    names.push_back(ring.variables()[i]);
    mask |= 1U << i;
  }
  std::size_t free_var = 0;
  while (mask & (1U << free_var)) ++free_var;
  const Field& fiber_field = locus.local_field();
  const RingRef local = PolyRing::make(fiber_field, names, ring.ring->order());
  LocalPresentation out{local, {}};
  for (const auto& r : ring.relations) {
    std::vector<Term> mapped;
    for (const auto& t : r.terms()) {
      UPoly coeff(t.monomial[free_var] + 1, 0);
      coeff.back() = static_cast<std::uint32_t>(t.coeff.code());
      Monomial m(subset.size());
      for (std::size_t k = 0; k < subset.size(); ++k) m.set(k, t.monomial[subset[k]]);
      mapped.push_back(Term{m, fiber_field.from_upoly(coeff)});
    }
    Polynomial fiber = Polynomial::from_terms(local, std::move(mapped));
    if (!fiber.is_zero()) out.relations.push_back(std::move(fiber));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert-Kunz functions

std::vector<Polynomial> frobenius_power(const std::vector<Polynomial>& generators, std::uint64_t q) {
  std::vector<Polynomial> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(poly_power_q(g, q));
  return out;
}

std::uint64_t hk_colength(const RingPresentation& ring, const PrimeLocus& locus, std::uint64_t q,
                          const GroebnerOptions& options) {
  checked_q(q, ring.characteristic());
  const LocalPresentation lp = local_presentation(ring, locus);
  std::vector<Polynomial> gens;
  for (const auto& r : lp.relations) {
    Polynomial t = truncate_below(r, q);
    if (!t.is_zero()) gens.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < lp.ring->num_vars(); ++i) gens.push_back(pure_power(lp.ring, i, q));
  const GroebnerBasis gb = buchberger(std::move(gens), MonomialOrder::grevlex, options);
  if (gb.is_unit()) throw InvalidLocus("the Frobenius power of the prime is the unit ideal locally");
  const auto value = colength(gb, 0).value;
  if (!value) throw InvalidLocus("the Frobenius power of the prime is not primary to it");
  return *value;
}

HKSample hk_sample(const RingPresentation& ring, const PrimeLocus& locus, std::uint64_t q,
                   const GroebnerOptions& options) {
  HKSample s;
  s.q = q;
  s.colength = hk_colength(ring, locus, q, options);
  s.height = locus.height();
  s.value = Rational(BigInt(s.colength)) / power_of(q, static_cast<int>(s.height));
  return s;
}

Rational hk_function(const RingPresentation& ring, const PrimeLocus& locus, std::uint64_t q,
                     const GroebnerOptions& options) {
  return hk_sample(ring, locus, q, options).value;
}

ConvergenceReport fit_convergence(std::uint32_t p, unsigned height, std::vector<HKSample> samples) {
  if (samples.size() < 2) throw InsufficientSamples("at least two samples are needed to fit the constant");
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.q < b.q; });
  ConvergenceReport report;
  report.characteristic = p;
  report.height = height;
  const Rational p_h = power_of(p, static_cast<int>(height));
  Rational c_hat = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const std::uint64_t q = samples[i].q;
    if (samples[i + 1].q != q * p) {
      throw InsufficientSamples("samples must be taken at consecutive powers of p");
    }
    Rational diff = p_h * Rational(BigInt(samples[i].colength)) - Rational(BigInt(samples[i + 1].colength));
    if (diff < 0) diff = -diff;
    const Rational scaled = diff / power_of(q, static_cast<int>(height) - 1);
    if (scaled > c_hat) c_hat = scaled;
  }
  const HKSample& last = samples.back();
  const Rational half_width = c_hat / Rational(BigInt(last.q));
  report.c_hat = c_hat;
  report.bracket_lo = last.value - half_width;
  report.bracket_hi = last.value + half_width;
  report.samples = std::move(samples);
  return report;
}

ConvergenceReport hk_multiplicity_estimate(const RingPresentation& ring, const PrimeLocus& locus, unsigned e_max,
                                           const ExecutionOptions& options) {
  if (e_max < 2) throw InsufficientSamples("e_max must be at least 2");
  const std::uint32_t p = ring.characteristic();
  std::vector<std::uint64_t> qs;
  std::uint64_t q = 1;
  for (unsigned e = 1; e <= e_max; ++e) {
    if (q > (~0ULL) / p) throw ExponentOverflow("q = p^e overflows");
    q *= p;
    qs.push_back(q);
  }
  std::vector<HKSample> samples(qs.size());
  parallel_for(qs.size(), options.jobs,
               [&](std::size_t i) { samples[i] = hk_sample(ring, locus, qs[i], options.groebner); });
  return fit_convergence(p, locus.height(), std::move(samples));
}

MonotonicityReport monotonicity_check(const RingPresentation& ring, const std::vector<PrimeLocus>& chain,
                                      std::uint64_t q, const ExecutionOptions& options) {
  if (chain.size() < 2) throw NotAChain("a chain needs at least two loci");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!chain[i].contained_in(chain[i + 1])) {
      throw NotAChain("locus " + std::to_string(i) + " is not contained in locus " + std::to_string(i + 1));
    }
  }
  checked_q(q, ring.characteristic());
  std::vector<Rational> values(chain.size());
  parallel_for(chain.size(), options.jobs,
               [&](std::size_t i) { values[i] = hk_function(ring, chain[i], q, options.groebner); });
  MonotonicityReport report;
  report.q = q;
  report.pass = true;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    MonotonicityLink link{i, i + 1, values[i], values[i + 1], values[i] <= values[i + 1]};
    report.pass = report.pass && link.holds;
    report.links.push_back(std::move(link));
  }
  return report;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::below:
      return "BELOW";
    case Classification::above:
      return "ABOVE";
    case Classification::undecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

Classification classify(const ConvergenceReport& base, const ConvergenceReport& point, const Rational& epsilon) {
  if (point.bracket_hi < base.bracket_lo + epsilon) return Classification::below;
  if (point.bracket_lo > base.bracket_hi + epsilon) return Classification::above;
  return Classification::undecided;
}

ScanReport semicontinuity_scan(const RingPresentation& ring, const PrimeLocus& base,
                               const std::vector<PrimeLocus>& points, unsigned e_max, const Rational& epsilon,
                               const ExecutionOptions& options) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!base.contained_in(points[i])) {
      throw NotContaining("point " + std::to_string(i) + " does not contain the base prime");
    }
  }
  std::vector<ConvergenceReport> reports(points.size() + 1);
  ExecutionOptions inner = options;
  inner.jobs = 1;
  parallel_for(points.size() + 1, options.jobs, [&](std::size_t i) {
    reports[i] = hk_multiplicity_estimate(ring, i == 0 ? base : points[i - 1], e_max, inner);
  });
  ScanReport scan;
  scan.base = std::move(reports[0]);
  scan.epsilon = epsilon;
  scan.common_q = scan.base.samples.back().q;
  const Rational& base_f = scan.base.samples.back().value;
  scan.all_strictly_exceed = !points.empty();
  for (std::size_t i = 1; i < reports.size(); ++i) {
    ScanEntry entry;
    entry.report = std::move(reports[i]);
    entry.classification = classify(scan.base, entry.report, epsilon);
    entry.strictly_exceeds_base = entry.report.samples.back().value > base_f;
    scan.all_strictly_exceed = scan.all_strictly_exceed && entry.strictly_exceeds_base;
    scan.points.push_back(std::move(entry));
  }
  return scan;
}

ParameterMultiplicityReport parameter_multiplicity_check(const RingPresentation& ring, const PrimeLocus& point,
                                                         const std::vector<Polynomial>& parameters,
                                                         const std::vector<std::uint32_t>& exponents,
                                                         const GroebnerOptions& options) {
  if (point.kind() != LocusKind::maximal_point) {
    throw InvalidLocus("parameter multiplicities are computed at maximal points");
  }
  if (parameters.size() != point.height()) {
    throw NotSystemOfParameters("expected " + std::to_string(point.height()) + " parameters, got " +
                                std::to_string(parameters.size()));
  }
  if (exponents.size() != parameters.size()) {
    throw NotSystemOfParameters("one exponent per parameter is required");
  }
  const LocalPresentation lp = local_presentation(ring, point);
  std::vector<Polynomial> shifted;
  std::vector<Polynomial> powered;
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (exponents[i] == 0) throw NotSystemOfParameters("exponents must be positive");
    Polynomial local = shift_point(parameters[i].in_ring(lp.ring), point.coordinates());
    powered.push_back(local.pow(exponents[i]));
    shifted.push_back(std::move(local));
    product *= exponents[i];
  }
  ParameterMultiplicityReport report;
  report.length_parameters = local_length_at_origin(lp, shifted, options);
  report.length_powered = local_length_at_origin(lp, powered, options);
  report.exponent_product = product;
  report.holds = report.length_powered == product * report.length_parameters;
  return report;
}

// ---------------------------------------------------------------------------

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("missing digits");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("invalid digit in '" + std::string(s) + "'");
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

}  // namespace hklab
