#include "deepleaf/critical.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace deepleaf {

namespace {

std::set<long> checkpoint_set(long N) {
  std::set<long> ks;
  for (long p = 1; p <= N / 2; p *= 2) ks.insert(p);
  ks.insert(N / 2);
  ks.insert(N);
  return ks;
}

}  // namespace

CriticalState run_cascade(long N, unsigned M, unsigned precision_bits,
                          CascadeTrace* trace) {
  if (N < 1 || M < 1 || precision_bits < 64)
    throw std::invalid_argument("run_cascade: need N >= 1, M >= 1, bits >= 64");
  const unsigned bits = precision_bits;
  const std::set<long> cps = checkpoint_set(N);
  std::vector<bool> underflow(M, false);

  // raw mpfr state: delta_k(0) and q[m-1] = Q_k^[m](rho)
  mpfr_t delta, I, tmp, acc;
  mpfr_init2(delta, bits);
  mpfr_init2(I, bits);
  mpfr_init2(tmp, bits);
  mpfr_init2(acc, bits);
  std::vector<__mpfr_struct> q(M);
  for (auto& x : q) {
    mpfr_init2(&x, bits);
    mpfr_set_zero(&x, 1);
  }
  mpfr_set_ui(delta, 1, MPFR_RNDN);            // delta_1(0) = 1
  mpfr_set_ui_2exp(&q[0], 1, -2, MPFR_RNDN);   // Q_1^[1](rho) = 1/4

  // threshold below which a positive q[m] is rounding noise
  mpfr_t thresh;
  mpfr_init2(thresh, bits);
  mpfr_set_ui_2exp(thresh, 1, -static_cast<long>(bits / 2), MPFR_RNDN);

  if (trace) {
    trace->N = N;
    trace->M = M;
    trace->precision_bits = bits;
    trace->checkpoints.clear();
  }
  auto record = [&](long k) {
    if (!trace || !cps.count(k)) return;
    Checkpoint cp;
    cp.k = k;
    cp.g.reserve(M);
    for (unsigned m = 0; m < M; ++m) {
      Real g(bits);
      mpfr_mul_si(g.raw(), &q[m], k, MPFR_RNDN);
      mpfr_mul_si(g.raw(), g.raw(), k, MPFR_RNDN);
      cp.g.push_back(std::move(g));
      if (!mpfr_zero_p(&q[m]) && mpfr_cmp(&q[m], thresh) < 0)
        underflow[m] = true;
    }
    trace->checkpoints.push_back(std::move(cp));
  };

  record(1);
  for (long k = 1; k < N; ++k) {
    // I_{k-1}(rho) = 2 - delta_k(0)
    mpfr_ui_sub(I, 2, delta, MPFR_RNDN);
    // q'[m] = (1/2) I q[m] + (1/4) sum_{i=1}^{m-1} q[i] q[m-i]
    // (descending m: entries below m are still the step-k values)
    for (unsigned m = M; m >= 1; --m) {
      mpfr_mul(tmp, I, &q[m - 1], MPFR_RNDN);
      mpfr_div_2ui(tmp, tmp, 1, MPFR_RNDN);
      if (m >= 2) {
        mpfr_set_zero(acc, 1);
        for (unsigned i = 1; i < m; ++i)
          mpfr_fma(acc, &q[i - 1], &q[m - i - 1], acc, MPFR_RNDN);
        mpfr_div_2ui(acc, acc, 2, MPFR_RNDN);
        mpfr_add(tmp, tmp, acc, MPFR_RNDN);
      }
      mpfr_set(&q[m - 1], tmp, MPFR_RNDN);
    }
    // delta' = delta - delta^2/4
    mpfr_sqr(tmp, delta, MPFR_RNDN);
    mpfr_div_2ui(tmp, tmp, 2, MPFR_RNDN);
    mpfr_sub(delta, delta, tmp, MPFR_RNDN);
    record(k + 1);
  }

  CriticalState st;
  st.k = N;
  st.M = M;
  st.precision_bits = bits;
  st.delta0 = Real(bits);
  mpfr_set(st.delta0.raw(), delta, MPFR_RNDN);
  st.q.reserve(M);
  for (unsigned m = 0; m < M; ++m) {
    Real v(bits);
    mpfr_set(v.raw(), &q[m], MPFR_RNDN);
    st.q.push_back(std::move(v));
  }
  if (trace) trace->underflow = underflow;

  mpfr_clear(delta);
  mpfr_clear(I);
  mpfr_clear(tmp);
  mpfr_clear(acc);
  mpfr_clear(thresh);
  for (auto& x : q) mpfr_clear(&x);
  return st;
}

ExtrapolationEstimate extract_K(const CascadeTrace& trace, unsigned m,
                                bool tail_average) {
  if (m < 1 || m > trace.M)
    throw std::invalid_argument("extract_K: m out of range");
  const auto& cps = trace.checkpoints;
  auto find_k = [&](long k) -> const Checkpoint* {
    for (const auto& cp : cps)
      if (cp.k == k) return &cp;
    return nullptr;
  };
  const Checkpoint* cN = find_k(trace.N);
  const Checkpoint* cH = find_k(trace.N / 2);
  if (!cN || !cH) throw std::invalid_argument("extract_K: trace incomplete");

  ExtrapolationEstimate est;
  est.N = trace.N;
  est.raw = cN->g[m - 1].to_double();
  est.halved = cH->g[m - 1].to_double();
  est.richardson = 2 * est.raw - est.halved;
  est.underflow = trace.underflow.size() >= m && trace.underflow[m - 1];

  if (tail_average) {
    // average the accelerated estimate over the last three dyadic pairs
    std::vector<long> dyadic;
    for (const auto& cp : cps)
      if ((cp.k & (cp.k - 1)) == 0) dyadic.push_back(cp.k);
    double sum = 0;
    int cnt = 0;
    for (std::size_t i = dyadic.size(); i-- > 1 && cnt < 3;) {
      const Checkpoint* a = find_k(dyadic[i]);
      const Checkpoint* b = find_k(dyadic[i - 1]);
      sum += 2 * a->g[m - 1].to_double() - b->g[m - 1].to_double();
      ++cnt;
    }
    if (cnt > 0) est.richardson = sum / cnt;
  }
  est.uncertainty = std::abs(est.richardson - est.raw);
  return est;
}

DistributionTable distribution(long N, unsigned M, unsigned precision_bits,
                               bool tail_average) {
  CascadeTrace trace;
  run_cascade(N, M, precision_bits, &trace);
  DistributionTable t;
  t.M = M;
  t.N = N;
  t.precision_bits = precision_bits;
  for (unsigned m = 1; m <= M; ++m) {
    ExtrapolationEstimate est = extract_K(trace, m, tail_average);
    t.K.push_back(est.richardson);
    t.K_raw.push_back(est.raw);
    t.kappa.push_back(est.richardson / 4);
    t.uncertainty.push_back(est.uncertainty);
    t.underflow.push_back(est.underflow);
  }
  t.B = t.K[0] / 2;
  t.kappa_single = t.K[0] / 4;
  t.mean_L = 4 * t.kappa[0];
  t.var_L = 32 * t.kappa[1 < M ? 1 : 0] * (M > 1 ? 1 : 0) + 4 * t.kappa[0] -
            16 * t.kappa[0] * t.kappa[0];
  return t;
}

ExtrapolationEstimate K_of_y(const Real& y, long N, unsigned precision_bits) {
  const unsigned bits = precision_bits;
  if (y <= Real(-4L, bits) || y >= Real(4L, bits))
    throw std::domain_error("K_of_y: y outside the basin (-4, 4)");
  const std::set<long> cps = checkpoint_set(N);

  // joint iteration of delta(0) and delta(y) under x -> x - x^2/4
  mpfr_t d0, dy, tmp;
  mpfr_init2(d0, bits);
  mpfr_init2(dy, bits);
  mpfr_init2(tmp, bits);
  mpfr_set_ui(d0, 1, MPFR_RNDN);
  // delta_1(y) = 1 - y/4
  mpfr_div_2ui(tmp, y.raw(), 2, MPFR_RNDN);
  mpfr_ui_sub(dy, 1, tmp, MPFR_RNDN);

  double gN = 0, gH = 0;
  auto record = [&](long k) {
    if (!cps.count(k)) return;
    mpfr_sub(tmp, d0, dy, MPFR_RNDN);  // F_k(rho, y)
    double g = mpfr_get_d(tmp, MPFR_RNDN) * static_cast<double>(k) *
               static_cast<double>(k);
    if (k == N / 2) gH = g;
    if (k == N) gN = g;
  };
  record(1);
  for (long k = 1; k < N; ++k) {
    mpfr_sqr(tmp, d0, MPFR_RNDN);
    mpfr_div_2ui(tmp, tmp, 2, MPFR_RNDN);
    mpfr_sub(d0, d0, tmp, MPFR_RNDN);
    mpfr_sqr(tmp, dy, MPFR_RNDN);
    mpfr_div_2ui(tmp, tmp, 2, MPFR_RNDN);
    mpfr_sub(dy, dy, tmp, MPFR_RNDN);
    record(k + 1);
  }
  mpfr_clear(d0);
  mpfr_clear(dy);
  mpfr_clear(tmp);

  ExtrapolationEstimate est;
  est.N = N;
  est.raw = gN;
  est.halved = gH;
  est.richardson = 2 * gN - gH;
  est.uncertainty = std::abs(est.richardson - est.raw);
  est.analytic_extension = abs(y) > Real(1L, bits);
  return est;
}

ExtrapolationEstimate K_of_y(double y, long N, unsigned precision_bits) {
  return K_of_y(Real(y, precision_bits), N, precision_bits);
}

double functional_equation_residual(const std::vector<double>& y_grid, long N,
                                    unsigned precision_bits,
                                    std::vector<double>* per_point) {
  if (per_point) per_point->clear();
  double worst = 0;
  for (double y : y_grid) {
    const double y2 = (1 + y / 4) * (1 + y / 4);
    const double lhs = K_of_y(y2, N, precision_bits).richardson;
    const double rhs = K_of_y(y, N, precision_bits).richardson;
    const double res = std::abs(lhs - rhs - 4);
    if (per_point) per_point->push_back(res);
    worst = std::max(worst, res);
  }
  return worst;
}

namespace {

// z = (1 - tau^2)/4, C(z) = 2/(1+tau), r(z) = 1 - tau, e_0 = C - 1,
// all at the requested precision.
struct ScalingSetup {
  Real tau, z, C, r;
  ScalingSetup(double tau_in, unsigned bits)
      : tau(tau_in, bits),
        z((Real(1L, bits) - tau * tau) / 4L),
        C(Real(2L, bits) / (Real(1L, bits) + tau)),
        r(Real(1L, bits) - tau) {}
};

double phi_dev(const Real& e, const Real& tau, double u, unsigned bits) {
  // |e / (tau * 4/(e^u - 1)) - 1|
  const Real em1 = expm1(Real(u, bits));
  return std::abs((e * em1 / (tau * 4L) - Real(1L, bits)).to_double());
}

}  // namespace

double error_profile_check(double tau, const std::vector<double>& u_grid,
                           unsigned precision_bits,
                           std::vector<double>* per_u) {
  const unsigned bits = precision_bits;
  const ScalingSetup s(tau, bits);
  if (per_u) per_u->clear();
  double worst = 0;
  for (double u : u_grid) {
    const long k = std::lround(u / tau);
    Real e = s.C - Real(1L, bits);
    for (long j = 0; j < k; ++j) e = s.r * e - s.z * e * e;
    const double uk = static_cast<double>(k) * tau;
    const double dev = phi_dev(e, s.tau, uk, bits);
    if (per_u) per_u->push_back(dev);
    worst = std::max(worst, dev);
  }
  return worst;
}

double q_profile_check(double tau, const std::vector<double>& u_grid,
                       unsigned precision_bits, double K1,
                       std::vector<double>* per_u) {
  const unsigned bits = precision_bits;
  const ScalingSetup s(tau, bits);
  if (per_u) per_u->clear();
  double worst = 0;
  for (double u : u_grid) {
    const long k = std::lround(u / tau);
    // joint iteration: Q_{j+1} = 2 z I_{j-1} Q_j with I_{j-1} = C - e_{j-1}
    Real e = s.C - Real(1L, bits);
    Real Q = s.z;  // Q_1
    for (long j = 1; j < k; ++j) {
      Q = s.z * (s.C - e) * Q * 2L;
      e = s.r * e - s.z * e * e;
    }
    const double uk = static_cast<double>(k) * tau;
    // Psi(u) = K1 e^u/(e^u-1)^2
    const Real em1 = expm1(Real(uk, bits));
    const Real psi = Real(K1, bits) * exp(Real(uk, bits)) / (em1 * em1);
    const double dev =
        std::abs((Q / (s.tau * s.tau * psi) - Real(1L, bits)).to_double());
    if (per_u) per_u->push_back(dev);
    worst = std::max(worst, dev);
  }
  return worst;
}

std::vector<WPolynomial> w_polynomials(unsigned M,
                                       const std::vector<double>& K_values) {
  if (K_values.size() < M)
    throw std::invalid_argument("w_polynomials: need K^[1..M]");
  std::vector<WPolynomial> W;
  W.reserve(M);
  for (unsigned m = 1; m <= M; ++m) {
    WPolynomial w;
    w.m = m;
    if (m == 1) {
      w.coeffs = {K_values[0]};
    } else {
      // d/dv W^[m] = (1/4) sum_{i=1}^{m-1} W^[i] W^[m-i], degree m-2
      std::vector<double> deriv(m - 1, 0.0);
      for (unsigned i = 1; i < m; ++i) {
        const auto& a = W[i - 1].coeffs;
        const auto& b = W[m - i - 1].coeffs;
        for (std::size_t ia = 0; ia < a.size(); ++ia)
          for (std::size_t ib = 0; ib < b.size(); ++ib)
            deriv[ia + ib] += 0.25 * a[ia] * b[ib];
      }
      w.coeffs.assign(m, 0.0);
      w.coeffs[0] = K_values[m - 1];  // integration constant
      for (std::size_t j = 0; j < deriv.size(); ++j)
        w.coeffs[j + 1] = deriv[j] / static_cast<double>(j + 1);
    }
    if (w.coeffs.size() != m)
      throw std::logic_error("w_polynomials: degree invariant violated");
    W.push_back(std::move(w));
  }
  return W;
}

double psi_m_profile_check(unsigned m, double tau,
                           const std::vector<double>& u_grid,
                           unsigned precision_bits,
                           const std::vector<double>& K_values,
                           std::vector<double>* per_u) {
  if (m < 1) throw std::invalid_argument("psi_m_profile_check: m >= 1");
  const unsigned bits = precision_bits;
  const ScalingSetup s(tau, bits);
  const std::vector<WPolynomial> W = w_polynomials(m, K_values);
  if (per_u) per_u->clear();
  double worst = 0;
  for (double u : u_grid) {
    const long k = std::lround(u / tau);
    // full cascade at z: e plus q[i-1] = Q_j^[i](z)
    Real e = s.C - Real(1L, bits);
    std::vector<Real> q(m, Real(bits));
    q[0] = s.z;
    for (long j = 1; j < k; ++j) {
      const Real I = s.C - e;
      for (unsigned mm = m; mm >= 1; --mm) {
        Real next = s.z * I * q[mm - 1] * 2L;
        for (unsigned i = 1; i < mm; ++i)
          next += s.z * q[i - 1] * q[mm - i - 1];
        q[mm - 1] = std::move(next);
      }
      e = s.r * e - s.z * e * e;
    }
    const double uk = static_cast<double>(k) * tau;
    // Psi^[m](u) = W^[m](v) e^u/(e^u-1)^2 with v = -1/(e^u-1)
    const double v = -1.0 / std::expm1(uk);
    double wv = 0, pw = 1;
    for (double c : W[m - 1].coeffs) {
      wv += c * pw;
      pw *= v;
    }
    const double psi =
        wv * std::exp(uk) / (std::expm1(uk) * std::expm1(uk));
    const double scale = std::pow(tau, static_cast<double>(m) + 1) * psi;
    const double dev = std::abs(q[m - 1].to_double() / scale - 1);
    if (per_u) per_u->push_back(dev);
    worst = std::max(worst, dev);
  }
  return worst;
}

std::vector<double> tail_ratios(const DistributionTable& table) {
  std::vector<double> r;
  for (std::size_t m = 0; m + 1 < table.kappa.size(); ++m)
    r.push_back(table.kappa[m + 1] / table.kappa[m]);
  return r;
}

}  // namespace deepleaf
