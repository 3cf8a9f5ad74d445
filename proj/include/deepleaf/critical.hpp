#pragma once

#include <cstddef>
#include <vector>

#include "deepleaf/real.hpp"

namespace deepleaf {

// State of the coupled iteration at z = rho = 1/4 after k steps:
// delta0 = delta_k(0) = 2 - I_{k-1}(rho), q[m-1] = Q_k^[m](rho).
struct CriticalState {
  long k = 0;
  unsigned precision_bits = 0;
  unsigned M = 0;
  Real delta0;
  std::vector<Real> q;
};

struct Checkpoint {
  long k = 0;
  std::vector<Real> g;  // g[m-1] = k^2 * Q_k^[m](rho)
};

struct CascadeTrace {
  long N = 0;
  unsigned M = 0;
  unsigned precision_bits = 0;
  std::vector<Checkpoint> checkpoints;  // powers of two plus {N/2, N}
  // per-m: some Q_k^[m](rho) fell below 2^(-precision_bits/2), so the
  // extrapolated value cannot be trusted
  std::vector<bool> underflow;
};

struct ExtrapolationEstimate {
  double raw = 0;         // g_N = N^2 q_N
  double halved = 0;      // g_{N/2}
  double richardson = 0;  // 2 g_N - g_{N/2}
  double uncertainty = 0; // |richardson - raw|
  long N = 0;
  bool underflow = false;
  // result obtained outside the |y| <= 1 range the limit is stated for
  bool analytic_extension = false;
};

struct DistributionTable {
  unsigned M = 0;
  long N = 0;
  unsigned precision_bits = 0;
  std::vector<double> K;            // K^[m], m = 1..M
  std::vector<double> kappa;        // K^[m] / 4
  std::vector<double> K_raw;
  std::vector<double> uncertainty;
  std::vector<bool> underflow;
  double B = 0;             // K^[1] / 2
  double kappa_single = 0;  // K^[1] / 4
  double mean_L = 0;        // 4 kappa^[1]
  double var_L = 0;         // 32 kappa^[2] + 4 kappa^[1] - 16 (kappa^[1])^2
};

// W^[m](v): polynomial of degree m-1 in v, from W^[1] = K^[1] and
// d/dv W^[m] = (1/4) sum_{i=1}^{m-1} W^[i] W^[m-i], constant term K^[m].
struct WPolynomial {
  unsigned m = 0;
  std::vector<double> coeffs;  // coeffs[j] multiplies v^j
};

// Iterates the cascade k = 1..N at rho; optionally records the checkpoint
// trace. precision_bits >= 64, N >= 2, M >= 1.
CriticalState run_cascade(long N, unsigned M, unsigned precision_bits,
                          CascadeTrace* trace = nullptr);

// Two-point Richardson extrapolation of K^[m] from the g-values at N/2 and N.
// With tail_average, the accelerated value is averaged over the last three
// dyadic checkpoint pairs to damp log-oscillation.
ExtrapolationEstimate extract_K(const CascadeTrace& trace, unsigned m,
                                bool tail_average = false);

DistributionTable distribution(long N, unsigned M, unsigned precision_bits,
                               bool tail_average = false);

// K(y) = lim k^2 F_k(rho, y) with F_k = delta_k(0) - delta_k(y).
// Accepts y in (-4, 4); results with |y| > 1 are tagged analytic_extension.
ExtrapolationEstimate K_of_y(const Real& y, long N, unsigned precision_bits);
ExtrapolationEstimate K_of_y(double y, long N, unsigned precision_bits);

// max over the grid of |K((1+y/4)^2) - K(y) - 4|
double functional_equation_residual(const std::vector<double>& y_grid, long N,
                                    unsigned precision_bits,
                                    std::vector<double>* per_point = nullptr);

// sup over u_grid of |e_k(z) / (tau phi(u_k)) - 1| with z = (1-tau^2)/4,
// k = round(u/tau), u_k = k tau, phi(u) = 4/(e^u - 1).
double error_profile_check(double tau, const std::vector<double>& u_grid,
                           unsigned precision_bits,
                           std::vector<double>* per_u = nullptr);

// sup over u_grid of |Q_k(z) / (tau^2 Psi(u_k)) - 1|,
// Psi(u) = K1 e^u / (e^u - 1)^2.
double q_profile_check(double tau, const std::vector<double>& u_grid,
                       unsigned precision_bits, double K1,
                       std::vector<double>* per_u = nullptr);

std::vector<WPolynomial> w_polynomials(unsigned M,
                                       const std::vector<double>& K_values);

// sup over u_grid of |Q_k^[m](z) / (tau^{m+1} Psi^[m](u_k)) - 1| with
// Psi^[m](u) = W^[m](v(u)) e^u/(e^u-1)^2, v(u) = -1/(e^u - 1).
double psi_m_profile_check(unsigned m, double tau,
                           const std::vector<double>& u_grid,
                           unsigned precision_bits,
                           const std::vector<double>& K_values,
                           std::vector<double>* per_u = nullptr);

// kappa^[m+1] / kappa^[m] for m = 1..M-1
std::vector<double> tail_ratios(const DistributionTable& table);

}  // namespace deepleaf
