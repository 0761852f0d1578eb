#include "hklab/groebner.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "hklab/error.hpp"

namespace hklab {

namespace {

struct Reducer {
  const Polynomial* poly;
  Monomial lm;
  FieldElement lc_inv;
};

const Reducer* find_reducer(const std::vector<Reducer>& reducers, const Monomial& m) {
  for (const auto& r : reducers) {
    if (r.lm.divides(m)) return &r;
  }
  return nullptr;
}

std::vector<Reducer> make_reducers(const std::vector<const Polynomial*>& polys) {
  std::vector<Reducer> out;
  out.reserve(polys.size());
  for (const Polynomial* p : polys) {
    if (p->is_zero()) continue;
    out.push_back(Reducer{p, p->leading_monomial(), p->leading_coefficient().inverse()});
  }
  return out;
}

// work (ascending) -= c * m * tail(g), where tail(g) skips g's leading term.
// Terms of work below the smallest new term are left in place.
void subtract_scaled_tail(std::vector<Term>& work, std::vector<Term>& scratch, const FieldElement& c,
                          const Monomial& m, const std::vector<Term>& g, MonomialOrder order) {
  if (g.size() <= 1) return;
  const Monomial lowest = g.back().monomial * m;
  const auto split = std::partition_point(work.begin(), work.end(), [&](const Term& t) {
    return compare_unchecked(t.monomial, lowest, order) < 0;
  });
  const std::size_t k = static_cast<std::size_t>(split - work.begin());
  scratch.clear();
  scratch.reserve(work.size() - k + g.size());
  std::size_t i = k;
  std::size_t j = g.size() - 1;  // ascending walk over g[1..]
  const FieldElement neg_c = -c;
  while (i < work.size() && j >= 1) {
    Monomial gm = g[j].monomial * m;
    const auto cmp = compare_unchecked(work[i].monomial, gm, order);
    if (cmp < 0) {
      scratch.push_back(std::move(work[i++]));
    } else if (cmp > 0) {
      scratch.push_back(Term{gm, g[j].coeff * neg_c});
      --j;
    } else {
      FieldElement v = work[i].coeff + g[j].coeff * neg_c;
      if (!v.is_zero()) scratch.push_back(Term{gm, std::move(v)});
      ++i;
      --j;
    }
  }
  for (; j >= 1; --j) scratch.push_back(Term{g[j].monomial * m, g[j].coeff * neg_c});
  for (; i < work.size(); ++i) scratch.push_back(std::move(work[i]));
  work.resize(k);
  work.insert(work.end(), std::make_move_iterator(scratch.begin()), std::make_move_iterator(scratch.end()));
}

// Full reduction. Input and output are descending term lists.
std::vector<Term> reduce_terms(const std::vector<Term>& desc, const std::vector<Reducer>& reducers,
                               MonomialOrder order) {
  std::vector<Term> work(desc.rbegin(), desc.rend());
  std::vector<Term> rem;
  std::vector<Term> scratch;
  while (!work.empty()) {
    const Reducer* r = find_reducer(reducers, work.back().monomial);
    if (r == nullptr) {
      rem.push_back(std::move(work.back()));
      work.pop_back();
      continue;
    }
    const FieldElement c = work.back().coeff * r->lc_inv;
    const Monomial m = work.back().monomial / r->lm;
    work.pop_back();
    subtract_scaled_tail(work, scratch, c, m, r->poly->terms(), order);
  }
  return rem;
}

Polynomial in_order(const Polynomial& f, MonomialOrder order) {
  if (f.ring()->order() == order) return f;
  return f.in_ring(f.ring()->with_order(order));
}

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

// Normal selection strategy: smallest lcm first, ties by index.
bool pair_before(const CriticalPair& a, const CriticalPair& b, MonomialOrder order) {
  const auto cmp = compare_unchecked(a.lcm, b.lcm, order);
  if (cmp != 0) return cmp < 0;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

class BuchbergerState {
 public:
  BuchbergerState(RingRef ring, const GroebnerOptions& options) : ring_(std::move(ring)), options_(options) {}

  // Gebauer-Moeller installation of a new monic element that is reduced
  // with respect to the active set.
  void install(Polynomial h) {
    check_degree(h.total_degree());
    const std::size_t hidx = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(false);
    const Monomial lh = polys_[hidx].leading_monomial();

    std::vector<CriticalPair> candidates;
    for (std::size_t g = 0; g < hidx; ++g) {
      if (active_[g]) candidates.push_back(CriticalPair{g, hidx, lh.lcm(polys_[g].leading_monomial())});
    }
    // Chain criterion among the new pairs; coprime pairs survive this step.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const auto& pa = candidates[a];
      bool keep = lh.coprime(polys_[pa.i].leading_monomial());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b) {
          if (candidates[b].lcm.divides(pa.lcm)) keep = false;
        }
        for (std::size_t b = 0; b < kept.size() && keep; ++b) {
          if (kept[b].lcm.divides(pa.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(pa);
    }
    // Product criterion: coprime leading monomials give S-polynomials that
    // reduce to zero.
    std::vector<CriticalPair> fresh;
    for (const auto& pr : kept) {
      if (!lh.coprime(polys_[pr.i].leading_monomial())) fresh.push_back(pr);
    }
    // Old pairs made redundant by h.
    std::vector<CriticalPair> survivors;
    survivors.reserve(pairs_.size() + fresh.size());
    for (const auto& pr : pairs_) {
      const bool redundant = lh.divides(pr.lcm) && !(polys_[pr.i].leading_monomial().lcm(lh) == pr.lcm) &&
                             !(lh.lcm(polys_[pr.j].leading_monomial()) == pr.lcm);
      if (!redundant) survivors.push_back(pr);
    }
    survivors.insert(survivors.end(), fresh.begin(), fresh.end());
    pairs_ = std::move(survivors);

    for (std::size_t g = 0; g < hidx; ++g) {
      if (active_[g] && lh.divides(polys_[g].leading_monomial())) active_[g] = false;
    }
    active_[hidx] = true;
    refresh_reducers();
  }

  bool has_pairs() const noexcept { return !pairs_.empty(); }

  CriticalPair take_pair() {
    const MonomialOrder order = ring_->order();
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      if (pair_before(pairs_[k], pairs_[best], order)) best = k;
    }
    CriticalPair out = pairs_[best];
    pairs_[best] = pairs_.back();
    pairs_.pop_back();
    return out;
  }

  Polynomial reduce(const Polynomial& f) const {
    return Polynomial::from_sorted_terms(ring_, reduce_terms(f.terms(), reducers_, ring_->order()));
  }

  const Polynomial& poly(std::size_t i) const { return polys_[i]; }

  void check_degree(std::uint64_t degree) const {
    if (options_.degree_cap && degree > *options_.degree_cap) {
      throw ResourceExceeded("intermediate degree " + std::to_string(degree) + " exceeds the cap " +
                             std::to_string(*options_.degree_cap));
    }
  }

  std::vector<Polynomial> active_polys() const {
    std::vector<Polynomial> out;
    for (std::size_t g = 0; g < polys_.size(); ++g) {
      if (active_[g]) out.push_back(polys_[g]);
    }
    return out;
  }

 private:
  void refresh_reducers() {
    std::vector<const Polynomial*> ptrs;
    for (std::size_t g = 0; g < polys_.size(); ++g) {
      if (active_[g]) ptrs.push_back(&polys_[g]);
    }
    // Prefer short reducers; ties by leading monomial for determinism.
    const MonomialOrder order = ring_->order();
    std::stable_sort(ptrs.begin(), ptrs.end(), [order](const Polynomial* a, const Polynomial* b) {
      if (a->size() != b->size()) return a->size() < b->size();
      return compare_unchecked(a->leading_monomial(), b->leading_monomial(), order) < 0;
    });
    reducers_ = make_reducers(ptrs);
  }

  RingRef ring_;
  GroebnerOptions options_;
  std::deque<Polynomial> polys_;  // stable addresses for reducers_
  std::vector<bool> active_;
  std::vector<CriticalPair> pairs_;
  std::vector<Reducer> reducers_;
};

// Interreduces a minimal basis into the reduced Groebner basis.
std::vector<Polynomial> interreduce(std::vector<Polynomial> basis, const RingRef& ring) {
  const MonomialOrder order = ring->order();
  std::sort(basis.begin(), basis.end(), [order](const Polynomial& a, const Polynomial& b) {
    return compare_unchecked(a.leading_monomial(), b.leading_monomial(), order) < 0;
  });
  // Drop elements whose leading monomial is divisible by another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = basis[j].leading_monomial();
      const Monomial& b = basis[i].leading_monomial();
      if (a.divides(b) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Polynomial*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(&minimal[j]);
    }
    const auto reducers = make_reducers(others);
    const auto& terms = minimal[i].terms();
    std::vector<Term> tail(terms.begin() + 1, terms.end());
    std::vector<Term> out{terms.front()};
    auto rest = reduce_terms(tail, reducers, order);
    out.insert(out.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
    reduced.push_back(Polynomial::from_sorted_terms(ring, std::move(out)).monic());
  }
  return reduced;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroebnerBasis

GroebnerBasis::GroebnerBasis(RingRef ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)) {
  const MonomialOrder order = ring_->order();
  std::sort(generators_.begin(), generators_.end(), [order](const Polynomial& a, const Polynomial& b) {
    return compare_unchecked(a.leading_monomial(), b.leading_monomial(), order) < 0;
  });
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.leading_monomial());
  return out;
}

bool GroebnerBasis::is_unit() const noexcept {
  for (const auto& g : generators_) {
    if (g.leading_monomial().is_one()) return true;
  }
  return false;
}

Polynomial GroebnerBasis::reduce(const Polynomial& f) const {
  return normal_form(f, generators_, ring_->order());
}

std::string GroebnerBasis::to_string() const {
  std::string out;
  for (const auto& g : generators_) {
    out += g.to_string();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order) {
  if (f.is_zero() || g.is_zero()) throw ZeroInput("S-polynomial of a zero polynomial");
  const Polynomial a = in_order(f, order);
  const Polynomial b = in_order(g, order);
  if (!a.ring()->same_as(*b.ring())) throw FieldMismatch("S-polynomial of polynomials from different rings");
  const Monomial lcm = a.leading_monomial().lcm(b.leading_monomial());
  const Polynomial left = a.mul_term(a.leading_coefficient().inverse(), lcm / a.leading_monomial());
  const Polynomial right = b.mul_term(b.leading_coefficient().inverse(), lcm / b.leading_monomial());
  return left - right;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, MonomialOrder order) {
  const Polynomial target = in_order(f, order);
  std::vector<Polynomial> converted;
  converted.reserve(basis.size());
  for (const auto& b : basis) {
    Polynomial c = in_order(b, order);
    if (!c.ring()->same_as(*target.ring())) c = c.in_ring(target.ring());
    converted.push_back(std::move(c));
  }
  std::vector<const Polynomial*> ptrs;
  for (const auto& c : converted) ptrs.push_back(&c);
  const auto reducers = make_reducers(ptrs);
  return Polynomial::from_sorted_terms(target.ring(), reduce_terms(target.terms(), reducers, order));
}

GroebnerBasis buchberger(std::vector<Polynomial> generators, MonomialOrder order, const GroebnerOptions& options) {
  RingRef ring;
  std::vector<Polynomial> inputs;
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    Polynomial c = in_order(g, order);
    if (!ring) {
      ring = c.ring();
    } else if (!c.ring()->same_as(*ring)) {
      c = c.in_ring(ring);
    }
    inputs.push_back(std::move(c));
  }
  if (inputs.empty()) throw EmptyIdeal("all generators are zero");

  // Short, low generators first so later inputs reduce against them.
  std::stable_sort(inputs.begin(), inputs.end(), [order](const Polynomial& a, const Polynomial& b) {
    return compare_unchecked(a.leading_monomial(), b.leading_monomial(), order) < 0;
  });

  const auto unit_basis = [&] {
    return GroebnerBasis(ring, {Polynomial::constant(ring, ring->field().one())});
  };

  BuchbergerState state(ring, options);
  for (const auto& g : inputs) {
    state.check_degree(g.total_degree());
    Polynomial h = state.reduce(g);
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit_basis();
    state.install(h.monic());
  }
  while (state.has_pairs()) {
    const CriticalPair pair = state.take_pair();
    state.check_degree(pair.lcm.degree());
    Polynomial h = state.reduce(s_polynomial(state.poly(pair.i), state.poly(pair.j), order));
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit_basis();
    state.install(h.monic());
  }
  return GroebnerBasis(ring, interreduce(state.active_polys(), ring));
}

std::optional<std::uint64_t> count_standard_monomials(std::span<const Monomial> leading, std::size_t num_vars,
                                                      std::vector<Monomial>* listing, std::size_t list_limit) {
  for (const auto& m : leading) {
    if (m.is_one()) return 0;
  }
  // Dickson staircase: finite iff every variable has a pure-power leading term.
  std::vector<std::uint64_t> bound(num_vars, 0);
  for (std::size_t v = 0; v < num_vars; ++v) {
    for (const auto& m : leading) {
      if (m.support() == (1U << v)) {
        bound[v] = bound[v] == 0 ? m[v] : std::min<std::uint64_t>(bound[v], m[v]);
      }
    }
    if (bound[v] == 0) return std::nullopt;
  }
  std::uint64_t count = 0;
  Monomial current(num_vars);
  bool listing_overflow = false;
  const std::function<void(std::size_t)> walk = [&](std::size_t v) {
    for (std::uint32_t e = 0; e < bound[v]; ++e) {
      current.set(v, e);
      bool divisible = false;
      for (const auto& m : leading) {
        if (m.divides(current)) {
          divisible = true;
          break;
        }
      }
      // Larger exponents of v stay divisible.
      if (divisible) break;
      if (v + 1 == num_vars) {
        ++count;
        if (listing != nullptr && !listing_overflow) {
          if (listing->size() < list_limit) {
            listing->push_back(current);
          } else {
            listing_overflow = true;
          }
        }
      } else {
        walk(v + 1);
      }
    }
    current.set(v, 0);
  };
  if (num_vars == 0) return 1;
  walk(0);
  if (listing != nullptr && listing_overflow) listing->clear();
  return count;
}

ColengthResult colength(const GroebnerBasis& basis, std::size_t list_limit) {
  const auto leading = basis.leading_monomials();
  std::vector<Monomial> listing;
  ColengthResult result;
  result.value = count_standard_monomials(leading, basis.ring()->num_vars(), &listing, list_limit + 1);
  if (result.value && *result.value <= list_limit) result.standard_monomials = std::move(listing);
  return result;
}

unsigned krull_dimension(const GroebnerBasis& basis) {
  if (basis.is_unit()) throw UnitIdeal("the ideal is the whole ring");
  const std::size_t n = basis.ring()->num_vars();
  std::vector<std::uint32_t> supports;
  for (const auto& m : basis.leading_monomials()) supports.push_back(m.support());
  unsigned best = 0;
  for (std::uint32_t subset = 0; subset < (1U << n); ++subset) {
    const auto size = static_cast<unsigned>(std::popcount(subset));
    if (size <= best) continue;
    bool independent = true;
    for (const auto s : supports) {
      if ((s & ~subset) == 0) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

}  // namespace hklab
