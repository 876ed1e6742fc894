#include "hypolab/specfun.hpp"

#include <cmath>

namespace hypolab::specfun {

namespace {

void check_jacobi_args(int m, double a, double b, double x) {
  if (m < 0) throw DomainError("jacobi_p: negative degree");
  if (a <= -1.0 || b <= -1.0) throw DomainError("jacobi_p: need a,b > -1");
  if (std::fabs(x) > 1.0 + 1e-12) throw DomainError("jacobi_p: |x| > 1");
}

}  // namespace

double jacobi_p(int m, double a, double b, double x) {
  check_jacobi_args(m, a, b, x);
  if (m == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  double apb = a + b;
  for (int q = 2; q <= m; ++q) {
    double c1 = 2.0 * q * (q + apb) * (2.0 * q + apb - 2.0);
    double c2 = (2.0 * q + apb - 1.0) *
                ((2.0 * q + apb) * (2.0 * q + apb - 2.0) * x + a * a - b * b);
    double c3 = 2.0 * (q + a - 1.0) * (q + b - 1.0) * (2.0 * q + apb);
    double pn = (c2 * p - c3 * pm1) / c1;
    pm1 = p;
    p = pn;
  }
  return p;
}

std::vector<double> jacobi_all(int mmax, double a, double b, double x) {
  check_jacobi_args(mmax, a, b, x);
  std::vector<double> out(mmax + 1);
  out[0] = 1.0;
  if (mmax == 0) return out;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  double apb = a + b;
  for (int q = 2; q <= mmax; ++q) {
    double c1 = 2.0 * q * (q + apb) * (2.0 * q + apb - 2.0);
    double c2 = (2.0 * q + apb - 1.0) *
                ((2.0 * q + apb) * (2.0 * q + apb - 2.0) * x + a * a - b * b);
    double c3 = 2.0 * (q + a - 1.0) * (q + b - 1.0) * (2.0 * q + apb);
    out[q] = (c2 * out[q - 1] - c3 * out[q - 2]) / c1;
  }
  return out;
}

double jacobi_norm(int m, double a, double b) {
  if (m < 0) throw DomainError("jacobi_norm: negative degree");
  if (a <= -1.0 || b <= -1.0) throw DomainError("jacobi_norm: need a,b > -1");
  double lg = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * m + a + b + 1.0) +
              std::lgamma(m + a + 1.0) + std::lgamma(m + b + 1.0) -
              std::lgamma(m + 1.0) - std::lgamma(m + a + b + 1.0);
  return std::exp(lg);
}

double gegenbauer_c(int m, double nu, double x) {
  if (m < 0) throw DomainError("gegenbauer_c: negative degree");
  if (nu <= 0.0) throw DomainError("gegenbauer_c: need nu > 0");
  if (std::fabs(x) > 1.0 + 1e-12) throw DomainError("gegenbauer_c: |x| > 1");
  if (m == 0) return 1.0;
  double cm1 = 1.0;
  double c = 2.0 * nu * x;
  for (int q = 2; q <= m; ++q) {
    double cn = (2.0 * x * (q + nu - 1.0) * c - (q + 2.0 * nu - 2.0) * cm1) / q;
    cm1 = c;
    c = cn;
  }
  return c;
}

namespace {

int theta_cutoff(double t, double delta) {
  // keep writing terms until the wrapped Gaussian is < e^-45 of the peak
  double reach = std::sqrt(180.0 * t) + std::fabs(delta);
  int k = static_cast<int>(std::ceil(reach / (2.0 * PI))) + 3;
  return std::max(8, k);
}

}  // namespace

double theta_v(double t, double delta, int k_cutoff) {
  if (t <= 0.0) throw DomainError("theta_v: t must be positive");
  int K = k_cutoff > 0 ? k_cutoff : theta_cutoff(t, delta);
  double s = 0.0, pref = 1.0 / std::sqrt(4.0 * PI * t);
  for (int k = -K; k <= K; ++k) {
    double u = delta - 2.0 * PI * k;
    s += std::exp(-u * u / (4.0 * t));
  }
  return pref * s;
}

double theta_v_deriv(double t, double delta, int order, int k_cutoff) {
  if (t <= 0.0) throw DomainError("theta_v_deriv: t must be positive");
  if (order < 1 || order > 3)
    throw UnsupportedError("theta_v_deriv: order must be 1..3");
  int K = k_cutoff > 0 ? k_cutoff : theta_cutoff(t, delta);
  double s = 0.0, pref = 1.0 / std::sqrt(4.0 * PI * t);
  for (int k = -K; k <= K; ++k) {
    double u = delta - 2.0 * PI * k;
    double g = std::exp(-u * u / (4.0 * t));
    double fac = 0.0;
    switch (order) {
      case 1: fac = -u / (2.0 * t); break;
      case 2: fac = u * u / (4.0 * t * t) - 1.0 / (2.0 * t); break;
      case 3: fac = -u * u * u / (8.0 * t * t * t) + 3.0 * u / (4.0 * t * t); break;
    }
    s += fac * g;
  }
  return pref * s;
}

SphereSeries sphere_series_scaled(int n, double t, double x, int max_terms) {
  if (n < 1) throw DomainError("sphere_series_scaled: n must be >= 1");
  if (t <= 0.0) throw DomainError("sphere_series_scaled: t must be positive");
  const double nu = static_cast<double>(n);
  const double pref =
      std::exp(std::lgamma(nu) - std::log(2.0) - (nu + 1.0) * std::log(PI));

  // Gegenbauer recurrence in mantissa/log-scale form; the accumulator keeps
  // its own reference exponent and is re-based when a term dwarfs it.
  double cm1 = 1.0;            // C_{m-1} mantissa (starts as C_0)
  double c = 2.0 * nu * x;     // C_m mantissa (starts as C_1)
  double cls = 0.0;            // shared log scale of cm1, c
  double acc = nu;             // m = 0 term: (0+n) * C_0 * e^0
  double acc_log = 0.0;
  int m = 1;
  for (; m < max_terms; ++m) {
    if (m >= 2) {
      double cn =
          (2.0 * x * (m + nu - 1.0) * c - (m + 2.0 * nu - 2.0) * cm1) / m;
      cm1 = c;
      c = cn;
      if (std::fabs(c) > 1e250) {
        c *= 1e-250;
        cm1 *= 1e-250;
        cls += 250.0 * std::log(10.0);
      }
    }
    double tlog = cls - static_cast<double>(m) * (m + 2.0 * nu) * t;
    double tm = (m + nu) * c;
    double delta = tlog - acc_log;
    if (delta > 200.0) {
      acc = acc * std::exp(-delta) + tm;
      acc_log = tlog;
    } else {
      tm *= std::exp(delta);
      acc += tm;
    }
    if (m > 5 && std::fabs(tm) < 1e-18 * std::max(1.0, std::fabs(acc))) break;
  }
  if (m >= max_terms)
    throw AccuracyError("sphere_series_scaled: series did not converge");
  return SphereSeries{Scaled{pref * acc, acc_log}, m + 1};
}

}  // namespace hypolab::specfun
