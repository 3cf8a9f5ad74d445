#include "deepleaf/series.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace deepleaf {

BigInt CountTable::at(unsigned n, unsigned m) const {
  auto it = counts.find({n, m});
  return it == counts.end() ? BigInt(0) : it->second;
}

BigInt CountTable::row_sum(unsigned n) const {
  BigInt s = 0;
  for (auto it = counts.lower_bound({n, 0});
       it != counts.end() && it->first.first == n; ++it)
    s += it->second;
  return s;
}

TruncatedPoly height_bounded_poly(unsigned k, std::size_t max_deg) {
  TruncatedPoly I = TruncatedPoly::one(max_deg);
  for (unsigned j = 0; j < k; ++j) {
    TruncatedPoly next = TruncatedPoly::one(max_deg);
    TruncatedPoly::add_sq_shifted(next, I, 1);
    I = std::move(next);
  }
  return I;
}

TruncatedPoly deepest_pair_poly(unsigned k, std::size_t max_deg) {
  TruncatedPoly Q(max_deg);
  if (k == 0) return Q;
  if (max_deg >= 1) Q[1] = 1;  // Q_1 = z
  TruncatedPoly I = TruncatedPoly::one(max_deg);  // I_0
  for (unsigned j = 1; j < k; ++j) {
    // Q_{j+1} = 2 z I_{j-1} Q_j
    TruncatedPoly next(max_deg);
    TruncatedPoly::add_mul_shifted(next, I, Q, 1, 2);
    Q = std::move(next);
    TruncatedPoly In = TruncatedPoly::one(max_deg);
    TruncatedPoly::add_sq_shifted(In, I, 1);
    I = std::move(In);
  }
  return Q;
}

TruncatedPoly marked_leaf_poly(unsigned k, std::size_t max_deg) {
  TruncatedPoly Qh = TruncatedPoly::one(max_deg);    // Qhat_0 = 1
  TruncatedPoly I = TruncatedPoly::one(max_deg);     // I_0
  for (unsigned j = 0; j < k; ++j) {
    // Qhat_{j+1} = 2 z I_j Qhat_j
    TruncatedPoly next(max_deg);
    TruncatedPoly::add_mul_shifted(next, I, Qh, 1, 2);
    Qh = std::move(next);
    TruncatedPoly In = TruncatedPoly::one(max_deg);
    TruncatedPoly::add_sq_shifted(In, I, 1);
    I = std::move(In);
  }
  return Qh;
}

namespace {

// Advances the exact cascade state (q[m-1] = Q_k^[m], I = I_{k-1}) one step.
// The convolution uses the symmetric split to halve the polynomial products.
void cascade_step(std::vector<TruncatedPoly>& q, TruncatedPoly& I,
                  std::size_t max_deg, std::size_t next_I_cap) {
  const unsigned M = static_cast<unsigned>(q.size());
  for (unsigned m = M; m >= 1; --m) {
    TruncatedPoly next(max_deg);
    TruncatedPoly::add_mul_shifted(next, I, q[m - 1], 1, 2);
    for (unsigned i = 1; 2 * i < m; ++i)
      TruncatedPoly::add_mul_shifted(next, q[i - 1], q[m - i - 1], 1, 2);
    if (m % 2 == 0)
      TruncatedPoly::add_sq_shifted(next, q[m / 2 - 1], 1, 1);
    q[m - 1] = std::move(next);
  }
  // I_k, truncated to the highest degree any later product can read
  TruncatedPoly In = TruncatedPoly::one(next_I_cap);
  TruncatedPoly::add_sq_shifted(In, I, 1);
  I = std::move(In);
}

}  // namespace

TruncatedPoly deepest_m_poly(unsigned k, unsigned m, std::size_t max_deg) {
  if (m == 0) throw std::invalid_argument("deepest_m_poly: m must be >= 1");
  std::vector<TruncatedPoly> q(m, TruncatedPoly(max_deg));
  if (k == 0) return q[m - 1];
  if (max_deg >= 1) q[0][1] = 1;
  TruncatedPoly I = TruncatedPoly::one(max_deg);
  for (unsigned j = 1; j < k; ++j) cascade_step(q, I, max_deg, max_deg);
  return q[m - 1];
}

CountTable count_table(unsigned n_max, unsigned m_max) {
  if (n_max == 0) throw std::invalid_argument("count_table: n_max must be >= 1");
  const std::size_t d = n_max;
  const unsigned M = m_max;
  CountTable table;
  table.n_max = n_max;
  table.m_max = m_max;

  std::vector<TruncatedPoly> q(M, TruncatedPoly(d));
  std::vector<TruncatedPoly> S(M, TruncatedPoly(d));
  if (M >= 1) q[0][1] = 1;
  TruncatedPoly I = TruncatedPoly::one(d >= 2 ? d - 2 : 0);  // I_0
  for (unsigned k = 1;; ++k) {
    for (unsigned m = 0; m < M; ++m) S[m] += q[m];
    if (k == n_max) break;
    // Q_{k+1}^[m] reads I_k only through 2z * I_k * q (q min degree k+1),
    // so I_k never needs terms above degree d - k - 2.
    cascade_step(q, I, d, d >= k + 2 ? d - k - 2 : 0);
  }
  for (unsigned m = 1; m <= M; ++m)
    for (unsigned n = 1; n <= n_max; ++n)
      if (S[m - 1][n] != 0) table.counts[{n, m}] = S[m - 1][n];
  return table;
}

BigInt catalan(unsigned n) {
  BigInt r;
  mpz_bin_uiui(r.backend().data(), 2ul * n, n);
  r /= (n + 1);
  return r;
}

BigRat truncation_error_at(unsigned k, const BigRat& z) {
  if (z <= 0 || z > BigRat(1, 4))
    throw std::domain_error("truncation_error_at: z must lie in (0, 1/4]");
  const BigRat s2 = 1 - 4 * z;  // = tau^2
  BigInt num = numerator(s2), den = denominator(s2);
  BigInt rn = sqrt(num), rd = sqrt(den);
  if (rn * rn != num || rd * rd != den)
    throw std::domain_error(
        "truncation_error_at: sqrt(1-4z) is irrational; use the real overload");
  const BigRat s(rn, rd);
  const BigRat r = 1 - s;            // r(z) = 2 z C(z)
  const BigRat C = (1 - s) / (2 * z);
  BigRat e = C - 1;
  for (unsigned j = 0; j < k; ++j) e = r * e - z * e * e;
  return e;
}

Real truncation_error_at(unsigned k, const Real& z) {
  const unsigned bits = z.precision();
  const Real one(1L, bits);
  if (z.sign() <= 0 || z > Real(BigRat(1, 4), bits))
    throw std::domain_error("truncation_error_at: z must lie in (0, 1/4]");
  const Real s = sqrt(one - z * 4L);
  const Real r = one - s;
  const Real C = (one - s) / (z * 2L);
  Real e = C - one;
  for (unsigned j = 0; j < k; ++j) e = r * e - z * e * e;
  return e;
}

std::vector<Real> coefficient_ratio_series(std::size_t n_max,
                                           unsigned precision_bits) {
  if (n_max == 0) return {};
  const std::size_t d = n_max;
  const unsigned bits = precision_bits;

  // Scaled coefficients a_n = c_n / 4^n, so every z-multiplication carries an
  // extra factor 1/4 and all magnitudes stay below 1.
  auto make = [bits](std::size_t n) {
    std::vector<__mpfr_struct> v(n);
    for (auto& x : v) {
      mpfr_init2(&x, bits);
      mpfr_set_zero(&x, 1);
    }
    return v;
  };
  auto clear = [](std::vector<__mpfr_struct>& v) {
    for (auto& x : v) mpfr_clear(&x);
  };

  std::vector<__mpfr_struct> Ia = make(d), Ib = make(d), Q = make(d + 1),
                             Qn = make(d + 1), S = make(d + 1);
  mpfr_t tmp;
  mpfr_init2(tmp, bits);

  mpfr_set_ui(&Ia[0], 1, MPFR_RNDN);  // I_0
  std::size_t ideg = 0;               // highest stored degree of the I buffer
  mpfr_set_ui_2exp(&Q[1], 1, -2, MPFR_RNDN);  // Q_1 = z -> 1/4
  mpfr_set(&S[1], &Q[1], MPFR_RNDN);

  std::vector<__mpfr_struct>*Ip = &Ia, *In = &Ib;
  for (std::size_t k = 1; k < d; ++k) {
    // Q_{k+1}[n+j+1] += (1/2) Q[n] I[j]; Q_k has support [k, d]
    for (std::size_t t = k + 1; t <= d; ++t) mpfr_set_zero(&Qn[t], 1);
    for (std::size_t n = k; n < d; ++n) {
      if (mpfr_zero_p(&Q[n])) continue;
      mpfr_div_2ui(tmp, &Q[n], 1, MPFR_RNDN);
      const std::size_t jhi = std::min(ideg, d - 1 - n);
      for (std::size_t j = 0; j <= jhi; ++j)
        mpfr_fma(&Qn[n + j + 1], tmp, &(*Ip)[j], &Qn[n + j + 1], MPFR_RNDN);
    }
    std::swap(Q, Qn);
    for (std::size_t t = k + 1; t <= d; ++t)
      mpfr_add(&S[t], &S[t], &Q[t], MPFR_RNDN);

    // I_k = 1 + z I_{k-1}^2, kept only up to the degree later steps can read
    const std::size_t ncap = d >= k + 2 ? d - k - 2 : 0;
    for (std::size_t t = 1; t <= ncap; ++t) mpfr_set_zero(&(*In)[t], 1);
    mpfr_set_ui(&(*In)[0], 1, MPFR_RNDN);
    for (std::size_t a = 0; a <= ideg && a + a + 1 <= ncap; ++a) {
      if (mpfr_zero_p(&(*Ip)[a])) continue;
      mpfr_div_2ui(tmp, &(*Ip)[a], 2, MPFR_RNDN);
      mpfr_fma(&(*In)[2 * a + 1], tmp, &(*Ip)[a], &(*In)[2 * a + 1],
               MPFR_RNDN);
      mpfr_mul_2ui(tmp, tmp, 1, MPFR_RNDN);
      const std::size_t bhi = std::min(ideg, ncap - a - 1);
      for (std::size_t b = a + 1; b <= bhi; ++b)
        mpfr_fma(&(*In)[a + b + 1], tmp, &(*Ip)[b], &(*In)[a + b + 1],
                 MPFR_RNDN);
    }
    std::swap(Ip, In);
    ideg = ncap;
  }

  // Catalan(n)/4^n via the ratio recurrence
  std::vector<Real> out;
  out.reserve(d);
  mpfr_t cat;
  mpfr_init2(cat, bits);
  mpfr_set_ui(cat, 1, MPFR_RNDN);  // Catalan(0)/4^0
  for (std::size_t n = 0; n < d; ++n) {
    // Catalan(n+1)/4^{n+1} = Catalan(n)/4^n * (2(2n+1)) / (4(n+2))
    mpfr_mul_ui(cat, cat, 2 * (2 * n + 1), MPFR_RNDN);
    mpfr_div_ui(cat, cat, 4 * (n + 2), MPFR_RNDN);
    Real r(bits);
    mpfr_div(r.raw(), &S[n + 1], cat, MPFR_RNDN);
    out.push_back(std::move(r));
  }

  mpfr_clear(cat);
  mpfr_clear(tmp);
  clear(Ia);
  clear(Ib);
  clear(Q);
  clear(Qn);
  clear(S);
  return out;
}

double extrapolate_ratio_limit(const std::vector<Real>& r, std::size_t n_lo) {
  // least squares for r_n = kappa + a/n over n in [n_lo, n_max]
  double s11 = 0, s1x = 0, sxx = 0, s1y = 0, sxy = 0;
  for (std::size_t i = n_lo - 1; i < r.size(); ++i) {
    const double x = 1.0 / static_cast<double>(i + 1);
    const double y = r[i].to_double();
    s11 += 1;
    s1x += x;
    sxx += x * x;
    s1y += y;
    sxy += x * y;
  }
  const double det = s11 * sxx - s1x * s1x;
  return (s1y * sxx - s1x * sxy) / det;
}

}  // namespace deepleaf
