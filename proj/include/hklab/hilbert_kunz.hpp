#pragma once

// Hilbert-Kunz functions of quotient rings R = F[x_1..x_n]/J at two kinds of
// primes:
//
//  * maximal points (x_1 - a_1, ..., x_n - a_n), a_i in F or an extension
//    F_{p^k}: the point is moved to the origin and the colength of
//    J + (x_1^q, ..., x_n^q) is counted, which equals the local length since
//    m^[q] is m-primary;
//  * coordinate primes (x_i : i in S) with J inside the prime: the single
//    complementary variable becomes the parameter of F_p(v), and the colength
//    of J + (x_i^q : i in S) is counted over that function field.
//
// Heights come from leading-term dimensions, dim(J) - dim(J + P), which is
// only meaningful for locally equidimensional rings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hklab/groebner.hpp"
#include "hklab/polynomial.hpp"
#include "hklab/rational.hpp"

namespace hklab {

enum class LocusKind { maximal_point, coordinate_prime };

class PrimeLocus {
 public:
  /// Throws InvalidLocus if the point is not on V(J) or the coordinates do
  /// not fit the ring.
  static PrimeLocus maximal_point(const RingPresentation& ring, std::vector<FieldElement> coordinates);
  /// Throws InvalidLocus if some relation is not in the prime, and
  /// UnsupportedLocus if the residue field would need more than one
  /// transcendental parameter (or a parameter over F_{p^k} / F_p(t)).
  static PrimeLocus coordinate_prime(const RingPresentation& ring, const std::vector<std::string>& variables);
  static PrimeLocus coordinate_prime(const RingPresentation& ring, std::vector<std::size_t> indices);

  LocusKind kind() const noexcept { return kind_; }
  const std::vector<FieldElement>& coordinates() const noexcept { return coordinates_; }
  /// Sorted variable indices of a coordinate prime.
  const std::vector<std::size_t>& variables() const noexcept { return variables_; }
  unsigned height() const noexcept { return height_; }
  /// Field the local computation runs over.
  const Field& local_field() const noexcept { return local_field_; }

  /// p ⊆ q for loci of the same ring.
  bool contained_in(const PrimeLocus& other) const;

  /// Generators, e.g. "(x,y,z)" or "(x,y,z,t+a)".
  std::string describe(const RingPresentation& ring) const;

 private:
  PrimeLocus() : local_field_(Field::prime(2)) {}

  LocusKind kind_ = LocusKind::maximal_point;
  std::vector<FieldElement> coordinates_;
  std::vector<std::size_t> variables_;
  std::size_t num_vars_ = 0;
  unsigned height_ = 0;
  Field local_field_;
};

/// Ring and relations after moving the locus to the origin: the prime is
/// generated by all variables of `ring`.
struct LocalPresentation {
  RingRef ring;
  std::vector<Polynomial> relations;
};

LocalPresentation local_presentation(const RingPresentation& ring, const PrimeLocus& locus);

struct ExecutionOptions {
  unsigned jobs = 1;
  GroebnerOptions groebner;
};

struct HKSample {
  std::uint64_t q = 0;
  std::uint64_t colength = 0;
  unsigned height = 0;
  Rational value;  // colength / q^height
};

struct ConvergenceReport {
  std::uint32_t characteristic = 0;
  unsigned height = 0;
  std::vector<HKSample> samples;
  Rational c_hat;
  Rational bracket_lo;
  Rational bracket_hi;
  bool heuristic = true;  // c_hat is fitted from data, not proven
};

/// {g^q : g in generators}; throws NotAPowerOfP.
std::vector<Polynomial> frobenius_power(const std::vector<Polynomial>& generators, std::uint64_t q);

/// Length of R_P / P^[q] R_P. Throws NotAPowerOfP (q must be p^e, e >= 1),
/// InvalidLocus, ResourceExceeded.
std::uint64_t hk_colength(const RingPresentation& ring, const PrimeLocus& locus, std::uint64_t q,
                          const GroebnerOptions& options = {});

/// hk_colength / q^height, exact.
Rational hk_function(const RingPresentation& ring, const PrimeLocus& locus, std::uint64_t q,
                     const GroebnerOptions& options = {});

HKSample hk_sample(const RingPresentation& ring, const PrimeLocus& locus, std::uint64_t q,
                   const GroebnerOptions& options = {});

/// Fits c_hat = max |p^h l_q - l_{pq}| / q^(h-1) over consecutive samples and
/// brackets e_HK by f_{q_max} -/+ c_hat / q_max. Samples must be at
/// consecutive powers of p. Throws InsufficientSamples for fewer than two.
ConvergenceReport fit_convergence(std::uint32_t p, unsigned height, std::vector<HKSample> samples);

/// Samples q = p, ..., p^e_max and fits the bracket. Throws
/// InsufficientSamples if e_max < 2.
ConvergenceReport hk_multiplicity_estimate(const RingPresentation& ring, const PrimeLocus& locus, unsigned e_max,
                                           const ExecutionOptions& options = {});

struct MonotonicityLink {
  std::size_t lower = 0;  // index into the chain
  std::size_t upper = 0;
  Rational f_lower;
  Rational f_upper;
  bool holds = false;
};

struct MonotonicityReport {
  std::uint64_t q = 0;
  std::vector<MonotonicityLink> links;
  bool pass = false;
};

/// Checks f_q(P_i) <= f_q(P_{i+1}) along a chain P_0 ⊆ P_1 ⊆ ... .
/// Throws NotAChain.
MonotonicityReport monotonicity_check(const RingPresentation& ring, const std::vector<PrimeLocus>& chain,
                                      std::uint64_t q, const ExecutionOptions& options = {});

enum class Classification { below, above, undecided };

std::string_view to_string(Classification c);

/// BELOW if the point bracket ends before base_lo + epsilon, ABOVE if it
/// starts after base_hi + epsilon, UNDECIDED otherwise.
Classification classify(const ConvergenceReport& base, const ConvergenceReport& point, const Rational& epsilon);

struct ScanEntry {
  ConvergenceReport report;
  Classification classification = Classification::undecided;
  bool strictly_exceeds_base = false;  // at the largest common q
};

struct ScanReport {
  ConvergenceReport base;
  Rational epsilon;
  std::vector<ScanEntry> points;
  std::uint64_t common_q = 0;
  bool all_strictly_exceed = false;
};

/// Brackets every point and classifies it against the base bracket shifted
/// by epsilon. Throws NotContaining if a point does not contain the base.
ScanReport semicontinuity_scan(const RingPresentation& ring, const PrimeLocus& base,
                               const std::vector<PrimeLocus>& points, unsigned e_max, const Rational& epsilon,
                               const ExecutionOptions& options = {});

struct ParameterMultiplicityReport {
  std::uint64_t length_parameters = 0;  // l(R/(x_1..x_d)) at the point
  std::uint64_t length_powered = 0;     // l(R/(x_1^n_1..x_d^n_d)) at the point
  std::uint64_t exponent_product = 0;
  bool holds = false;  // length_powered == exponent_product * length_parameters
};

/// Local lengths of a parameter ideal and its powered version at a maximal
/// point. Throws NotSystemOfParameters.
ParameterMultiplicityReport parameter_multiplicity_check(const RingPresentation& ring, const PrimeLocus& point,
                                                         const std::vector<Polynomial>& parameters,
                                                         const std::vector<std::uint32_t>& exponents,
                                                         const GroebnerOptions& options = {});

/// Runs fn(0..count-1) on up to `jobs` threads; results keep input order.
/// The first exception (by index) is rethrown after all tasks finish.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn);

}  // namespace hklab

#include "hklab/detail/parallel.hpp"
