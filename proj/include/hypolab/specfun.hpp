#pragma once

#include <vector>

#include "hypolab/numerics.hpp"

namespace hypolab::specfun {

// Jacobi polynomial P_m^{(a,b)}(x), |x| <= 1, a,b > -1.
double jacobi_p(int m, double a, double b, double x);

// P_0..P_mmax at fixed (a,b,x) by the three-term recurrence.
std::vector<double> jacobi_all(int mmax, double a, double b, double x);

// L^2 norm ||P_m^{(a,b)}||^2 with weight (1-x)^a (1+x)^b on [-1,1].
double jacobi_norm(int m, double a, double b);

// Gegenbauer C_m^{nu}(x), |x| <= 1, nu > 0.
double gegenbauer_c(int m, double nu, double x);

// Wrapped Gaussian sum_k exp(-(delta-2 pi k)^2 / 4t) / sqrt(4 pi t)
// and its delta-derivatives (orders 1..3).  k_cutoff <= 0 picks the cutoff
// from t automatically.
double theta_v(double t, double delta, int k_cutoff = 0);
double theta_v_deriv(double t, double delta, int order, int k_cutoff = 0);

// Gegenbauer heat series on the (2n+1)-sphere evaluated at x = cos(angle),
// in scaled arithmetic so x > 1 (analytic continuation along
// cos r cosh y) is allowed: sum_m (m+n) C_m^n(x) e^{-m(m+2n) t} times
// Gamma(n) / (2 pi^{n+1}).  Throws AccuracyError if the series has not
// converged to rel. 1e-15 within max_terms.
struct SphereSeries {
  Scaled value;
  int terms_used = 0;
};
SphereSeries sphere_series_scaled(int n, double t, double x,
                                  int max_terms = 4000);

}  // namespace hypolab::specfun
