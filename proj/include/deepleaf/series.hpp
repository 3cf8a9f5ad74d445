#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "deepleaf/real.hpp"
#include "deepleaf/truncated_poly.hpp"
#include "deepleaf/types.hpp"

namespace deepleaf {

// counts[(n, m)] = number of trees of size n with exactly 2m leaves at the
// deepest level. Entries are stored only when nonzero.
struct CountTable {
  unsigned n_max = 0;
  unsigned m_max = 0;
  std::map<std::pair<unsigned, unsigned>, BigInt> counts;

  BigInt at(unsigned n, unsigned m) const;
  BigInt row_sum(unsigned n) const;
};

// I_k: trees of height <= k, by size. I_0 = 1, I_{k+1} = 1 + z I_k^2.
TruncatedPoly height_bounded_poly(unsigned k, std::size_t max_deg);

// Q_k: trees of height k with exactly one deepest sibling pair.
// Q_1 = z, Q_{k+1} = 2 z I_{k-1} Q_k.
TruncatedPoly deepest_pair_poly(unsigned k, std::size_t max_deg);

// Qhat_k: the marked-leaf variant. Qhat_0 = 1, Qhat_{k+1} = 2 z I_k Qhat_k,
// linked to Q by Q_{k+1} = z Qhat_k.
TruncatedPoly marked_leaf_poly(unsigned k, std::size_t max_deg);

// Q_k^[m]: trees of height k with exactly m deepest sibling pairs.
// Q_1^[1] = z; Q_0^[m] = Q_1^[m] = 0 for m >= 2;
// Q_{k+1}^[m] = 2 z I_{k-1} Q_k^[m] + z sum_{i=1}^{m-1} Q_k^[i] Q_k^[m-i].
TruncatedPoly deepest_m_poly(unsigned k, unsigned m, std::size_t max_deg);

// Full table [z^n] sum_k Q_k^[m] for n <= n_max, m <= m_max. The k-sum is
// finite because Q_k^[m] has no terms below degree k.
CountTable count_table(unsigned n_max, unsigned m_max);

// All m values that can occur at size n_max or below.
inline unsigned full_m_range(unsigned n_max) { return (n_max + 1) / 2; }

BigInt catalan(unsigned n);

// e_k(z) = C(z) - I_k(z) via e_0 = C(z) - 1, e_{k+1} = r(z) e_k - z e_k^2
// with r(z) = 1 - sqrt(1-4z). Exact overload: requires z in (0, 1/4] with
// rational sqrt(1-4z) (throws std::domain_error otherwise).
BigRat truncation_error_at(unsigned k, const BigRat& z);
// High-precision overload for arbitrary real z in (0, 1/4].
Real truncation_error_at(unsigned k, const Real& z);

// r_n = [z^n] Q(z) / Catalan(n) for n = 1..n_max (result[i] is n = i+1),
// where Q = sum_k Q_k. Computed with coefficients scaled by 4^-n so the
// floating representation stays in range at large n.
std::vector<Real> coefficient_ratio_series(std::size_t n_max,
                                           unsigned precision_bits = 128);

// Least-squares fit r_n ~ kappa + a/n over n >= n_lo; returns kappa.
double extrapolate_ratio_limit(const std::vector<Real>& r, std::size_t n_lo);

}  // namespace deepleaf
