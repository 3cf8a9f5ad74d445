#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "deepleaf/critical.hpp"
#include "deepleaf/series.hpp"

using namespace deepleaf;

namespace {

constexpr double kTable1K[] = {2.8037088, 0.8902510, 0.2273992, 0.0588008,
                               0.0148223};

// Exact-rational cascade state at rho: returns (delta_k(0), Q_k^[m](rho)).
std::pair<BigRat, std::vector<BigRat>> exact_state(long k, unsigned M) {
  BigRat delta = 1;
  std::vector<BigRat> q(M, BigRat(0));
  q[0] = BigRat(1, 4);
  for (long j = 1; j < k; ++j) {
    const BigRat I = 2 - delta;
    for (unsigned m = M; m >= 1; --m) {
      BigRat s = 0;
      for (unsigned i = 1; i < m; ++i) s += q[i - 1] * q[m - i - 1];
      q[m - 1] = I * q[m - 1] / 2 + s / 4;
    }
    delta = delta - delta * delta / 4;
  }
  return {delta, q};
}

}  // namespace

TEST_CASE("cascade initial states are exact") {
  {
    const CriticalState st = run_cascade(1, 3, 192);
    CHECK(st.delta0 == Real(1L, 192));
    CHECK(st.q[0] == Real(BigRat(1, 4), 192));
    CHECK(st.q[1].is_zero());
    CHECK(st.q[2].is_zero());
  }
  {
    const CriticalState st = run_cascade(2, 2, 192);
    CHECK(st.delta0 == Real(BigRat(3, 4), 192));
    CHECK(st.q[0] == Real(BigRat(1, 8), 192));
    CHECK(st.q[1] == Real(BigRat(1, 64), 192));
  }
}

TEST_CASE("high-precision cascade matches the exact rationals") {
  const unsigned bits = 192;
  const Real tol = Real::pow2(-static_cast<long>(bits) + 10, bits);
  for (long k : {3L, 5L, 10L, 18L}) {
    const CriticalState st = run_cascade(k, 3, bits);
    const auto [delta, q] = exact_state(k, 3);
    CHECK(abs(st.delta0 - Real(delta, bits)) < tol);
    for (unsigned m = 0; m < 3; ++m)
      CHECK(abs(st.q[m] - Real(q[m], bits)) < tol);
  }
  // delta_k(0) = e_{k-1}(rho), checked against the series-side recurrence
  for (long k : {8L, 20L, 26L}) {
    const CriticalState st = run_cascade(k, 1, bits);
    const Real e(truncation_error_at(static_cast<unsigned>(k - 1), BigRat(1, 4)),
                 bits);
    CHECK(abs(st.delta0 - e) < tol);
  }
}

TEST_CASE("delta obeys the critical error law") {
  const long N = 100000;
  const CriticalState st = run_cascade(N, 1, 192);
  const double nd = (st.delta0 * N).to_double();
  CHECK(std::abs(nd - 4) <= 10 * std::log(double(N)) / double(N));
  CHECK(nd < 4.0);
  CHECK(nd > 3.9);
}

TEST_CASE("Richardson extrapolation reproduces the K constants") {
  CascadeTrace trace;
  run_cascade(200000, 3, 192, &trace);
  for (unsigned m = 1; m <= 3; ++m) {
    const ExtrapolationEstimate est = extract_K(trace, m);
    CHECK(est.richardson == doctest::Approx(kTable1K[m - 1]).epsilon(1e-3));
    // acceleration helps: the accelerated estimate sits closer to the limit
    CHECK(std::abs(est.richardson - kTable1K[m - 1]) <
          std::abs(est.raw - kTable1K[m - 1]));
    CHECK_FALSE(est.underflow);
  }
}

TEST_CASE("Richardson sanity: accelerated estimates move less than raw") {
  const DistributionTable a = distribution(100000, 3, 192);
  const DistributionTable b = distribution(200000, 3, 192);
  for (unsigned m = 0; m < 3; ++m) {
    CHECK(std::abs(a.K[m] - b.K[m]) < std::abs(a.K_raw[m] - b.K_raw[m]));
  }
}

TEST_CASE("precision is not the error floor") {
  const DistributionTable lo = distribution(100000, 3, 128);
  const DistributionTable hi = distribution(100000, 3, 256);
  for (unsigned m = 0; m < 3; ++m)
    CHECK(std::abs(lo.K[m] - hi.K[m]) < lo.uncertainty[m] + 1e-12);
}

TEST_CASE("tail-average variant stays consistent") {
  const DistributionTable plain = distribution(200000, 2, 192, false);
  const DistributionTable avg = distribution(200000, 2, 192, true);
  for (unsigned m = 0; m < 2; ++m)
    CHECK(plain.K[m] == doctest::Approx(avg.K[m]).epsilon(1e-3));
}

TEST_CASE("underflow is flagged, not silently used") {
  const DistributionTable t = distribution(10000, 12, 64);
  CHECK(t.underflow[11]);
  CHECK_FALSE(t.underflow[0]);
}

TEST_CASE("K(y) limit behaviour") {
  const long N = 100000;
  CHECK(K_of_y(0.0, N, 192).richardson == doctest::Approx(0.0));
  CHECK(K_of_y(1.0, N, 192).richardson == doctest::Approx(4.0).epsilon(2e-3));
  CHECK_FALSE(K_of_y(1.0, N, 192).analytic_extension);
  CHECK(K_of_y(1.5, N, 192).analytic_extension);
  CHECK_THROWS_AS(K_of_y(4.0, N, 192), std::domain_error);
  CHECK_THROWS_AS(K_of_y(-4.0, N, 192), std::domain_error);
}

TEST_CASE("functional equation residual on a small grid") {
  const double res = functional_equation_residual({-1.0, 0.0, 1.0}, 200000, 192);
  CHECK(res < 5e-3);
}

TEST_CASE("K(y) Taylor coefficients agree with the cascade constants") {
  // fit a degree-6 polynomial through K(y) at 7 points and compare the
  // coefficients of y, y^2, y^3 with K^[m]
  const long N = 1000000;
  const int P = 7;
  std::vector<double> ys, ks;
  for (int i = 0; i < P; ++i) {
    const double y = -0.75 + 0.25 * i;
    ys.push_back(y);
    ks.push_back(y == 0 ? 0.0 : K_of_y(y, N, 192).richardson);
  }
  // solve the Vandermonde system by Gaussian elimination
  std::vector<std::vector<double>> A(P, std::vector<double>(P + 1));
  for (int i = 0; i < P; ++i) {
    double pw = 1;
    for (int j = 0; j < P; ++j) {
      A[i][j] = pw;
      pw *= ys[i];
    }
    A[i][P] = ks[i];
  }
  for (int c = 0; c < P; ++c) {
    int piv = c;
    for (int r = c + 1; r < P; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    for (int r = 0; r < P; ++r) {
      if (r == c) continue;
      const double f = A[r][c] / A[c][c];
      for (int j = c; j <= P; ++j) A[r][j] -= f * A[c][j];
    }
  }
  const DistributionTable t = distribution(N, 3, 192);
  for (unsigned m = 1; m <= 3; ++m)
    CHECK(std::abs(A[m][P] / A[m][m] - t.K[m - 1]) < 1e-3);
}

TEST_CASE("W polynomials") {
  const std::vector<double> K{2.8037088, 0.8902510, 0.2273992};
  const auto W = w_polynomials(3, K);
  REQUIRE(W.size() == 3);
  CHECK(W[0].coeffs == std::vector<double>{K[0]});
  REQUIRE(W[1].coeffs.size() == 2);
  CHECK(W[1].coeffs[0] == doctest::Approx(K[1]));
  CHECK(W[1].coeffs[1] == doctest::Approx(K[0] * K[0] / 4));
  REQUIRE(W[2].coeffs.size() == 3);
  CHECK(W[2].coeffs[0] == doctest::Approx(K[2]));
  CHECK(W[2].coeffs[1] == doctest::Approx(K[0] * K[1] / 2));
  CHECK(W[2].coeffs[2] == doctest::Approx(K[0] * K[0] * K[0] / 16));
  // as u -> infinity, v -> 0 and W^[m](v) -> K^[m]
  for (unsigned m = 0; m < 3; ++m) {
    double wv = 0, pw = 1;
    for (double c : W[m].coeffs) {
      wv += c * pw;
      pw *= -1e-7;
    }
    CHECK(wv == doctest::Approx(K[m]).epsilon(1e-6));
  }
}

TEST_CASE("scaling profiles: documented behaviour") {
  const std::vector<double> grid{0.5, 1.0, 2.0, 3.0};
  const double e_fine = error_profile_check(1e-3, grid, 192);
  const double e_coarse = error_profile_check(1e-2, grid, 192);
  // the deviation shrinks with tau (O(tau log 1/tau) remainder) ...
  CHECK(e_coarse > e_fine);
  CHECK(e_fine < 0.03);
  // ... but the tau=1e-3 sup sits near 0.0225, above the 0.01 target the
  // acceptance gate asks for; asserted here so a regression in either
  // direction is caught
  CHECK(e_fine == doctest::Approx(0.0225).epsilon(0.05));

  const double q_fine = q_profile_check(1e-3, grid, 192, kTable1K[0]);
  const double q_coarse = q_profile_check(1e-2, grid, 192, kTable1K[0]);
  CHECK(q_fine <= 0.05);
  CHECK(q_coarse > q_fine);

  // m=1 reduces exactly to the plain Q profile
  const double p1 = psi_m_profile_check(1, 1e-3, grid, 192, {kTable1K[0]});
  CHECK(p1 == doctest::Approx(q_fine).epsilon(1e-9));
}

TEST_CASE("tail ratios approach 1/4") {
  const DistributionTable t = distribution(1000000, 6, 192);
  const std::vector<double> r = tail_ratios(t);
  REQUIRE(r.size() == 5);
  CHECK(r[0] == doctest::Approx(0.317).epsilon(0.01));
  for (double x : r) {
    CHECK(x > 0.2);
    CHECK(x < 0.35);
  }
}

TEST_CASE("distribution table bookkeeping") {
  const DistributionTable t = distribution(1000000, 5, 192);
  CHECK(t.B == doctest::Approx(t.K[0] / 2));
  CHECK(t.kappa_single == doctest::Approx(t.K[0] / 4));
  CHECK(t.mean_L == doctest::Approx(4 * t.kappa[0]));
  CHECK(t.var_L == doctest::Approx(32 * t.kappa[1] + 4 * t.kappa[0] -
                                   16 * t.kappa[0] * t.kappa[0]));
  for (unsigned m = 1; m < 5; ++m) CHECK(t.kappa[m] < t.kappa[m - 1]);
  double sum = 0;
  for (double k : t.kappa) sum += k;
  CHECK(sum > 0.99);
  CHECK(sum < 1.0);
}
