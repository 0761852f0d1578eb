#pragma once

// Independent colength oracle: plain integer arithmetic mod p and dense
// Gaussian elimination, no engine types. For generators f_1..f_r in
// F_p[x_1..x_n] it returns dim F_p[x]/(f_1..f_r, x_1^N..x_n^N) as
//   N^n - rank{ m * f_j mod (x_i^N) : m a monomial of the box }.
// The ideal generated by the f_j in the truncated algebra is exactly that
// span, so the result is exact.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Exponents = std::vector<std::uint32_t>;
using Poly = std::map<Exponents, std::uint32_t>;  // nonzero coefficients mod p

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

inline std::size_t box_index(const Exponents& e, std::uint32_t box) {
  std::size_t index = 0;
  for (const auto v : e) index = index * box + v;
  return index;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::size_t cols, std::uint32_t p) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = inverse_mod(rows[rank][c], p);
    for (auto& v : rows[rank]) v = static_cast<std::uint32_t>(v * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint64_t factor = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - factor) * rows[rank][k]) % p);
      }
    }
    ++rank;
  }
  return rank;
}

/// dim F_p[x]/(gens + (x_i^box)) for polynomials in `nvars` variables.
inline std::size_t truncated_colength(const std::vector<Poly>& gens, std::size_t nvars, std::uint32_t box,
                                      std::uint32_t p) {
  std::size_t cols = 1;
  for (std::size_t i = 0; i < nvars; ++i) cols *= box;
  std::vector<std::vector<std::uint32_t>> rows;
  Exponents shift(nvars, 0);
  for (std::size_t s = 0; s < cols; ++s) {
    std::size_t rest = s;
    for (std::size_t i = nvars; i-- > 0;) {
      shift[i] = static_cast<std::uint32_t>(rest % box);
      rest /= box;
    }
    for (const auto& g : gens) {
      std::vector<std::uint32_t> row(cols, 0);
      bool any = false;
      for (const auto& [e, c] : g) {
        Exponents product(nvars);
        bool inside = true;
        for (std::size_t i = 0; i < nvars; ++i) {
          product[i] = e[i] + shift[i];
          inside = inside && product[i] < box;
        }
        if (!inside) continue;
        auto& slot = row[box_index(product, box)];
        slot = (slot + c) % p;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  return cols - rank_mod_p(std::move(rows), cols, p);
}

/// Random polynomial with total degree <= max_degree and up to max_terms
/// terms; never zero.
template <typename Rng>
Poly random_poly(Rng& rng, std::size_t nvars, std::uint32_t max_degree, std::size_t max_terms, std::uint32_t p) {
  Poly f;
  std::uniform_int_distribution<std::size_t> term_count(1, max_terms);
  std::uniform_int_distribution<std::uint32_t> coeff(1, p - 1);
  std::uniform_int_distribution<std::uint32_t> degree(0, max_degree);
  const std::size_t terms = term_count(rng);
  while (f.size() < terms) {
    Exponents e(nvars, 0);
    std::uint32_t budget = degree(rng);
    for (std::uint32_t k = 0; k < budget; ++k) e[std::uniform_int_distribution<std::size_t>(0, nvars - 1)(rng)]++;
    f[e] = coeff(rng);
  }
  return f;
}

/// Text accepted by the engine's parser, e.g. "2*x^2*y+1".
inline std::string to_text(const Poly& f, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [e, c] : f) {
    if (!out.empty()) out += "+";
    out += std::to_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += "*" + names[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace oracle
