#include "hypolab/heat_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hypolab/specfun.hpp"

namespace hypolab {

namespace {

int auto_terms(double t) {
  int v = 20 + static_cast<int>(std::ceil(std::sqrt(50.0 / t)));
  return std::clamp(v, 60, 400);
}

double series_prefactor(int n) {
  // Gamma(n) / (2 pi^{n+1})
  return std::exp(std::lgamma(static_cast<double>(n)) - std::log(2.0) -
                  (n + 1.0) * std::log(PI));
}

void check_tr(double tail, double scale, const char* who) {
  if (tail > 1e-10 * std::max(scale, 1e-300))
    throw AccuracyError(std::string(who) + ": truncated series tail too large");
}

// Panelled Gauss-Legendre on [0, cutoff].
double panel_integrate(const std::function<double(double)>& f, double cutoff,
                       double panel, int nodes) {
  const Quadrature& gl = gauss_legendre(nodes);
  double total = 0.0;
  double a = 0.0;
  while (a < cutoff) {
    double b = std::min(a + panel, cutoff);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(c + h * gl.x[i]);
    total += h * s;
    a = b;
  }
  return total;
}

}  // namespace

double sphere_kernel(int n, double t, double delta, SphereForm form) {
  if (t <= 0.0) throw DomainError("sphere_kernel: t must be positive");
  if (delta < 0.0 || delta > PI)
    throw DomainError("sphere_kernel: delta must lie in [0, pi]");
  if (form == SphereForm::Gegenbauer)
    return specfun::sphere_series_scaled(n, t, std::cos(delta)).value.value();

  double sd = std::sin(delta);
  if (std::fabs(sd) < 1e-8)
    throw DomainError("sphere_kernel: theta form is singular at delta = 0, pi");
  if (n == 1) {
    double v1 = specfun::theta_v_deriv(t, delta, 1);
    return -std::exp(t) / (2.0 * PI * sd) * v1;
  }
  if (n == 2) {
    double v1 = specfun::theta_v_deriv(t, delta, 1);
    double v2 = specfun::theta_v_deriv(t, delta, 2);
    double cd = std::cos(delta);
    return std::exp(4.0 * t) / (4.0 * PI * PI) *
           (v2 / (sd * sd) - v1 * cd / (sd * sd * sd));
  }
  throw UnsupportedError("sphere_kernel: theta form implemented for n = 1, 2");
}

KernelValue hopf_kernel_series(int n, double t, double r, double theta,
                               SeriesTruncation tr) {
  if (n < 1) throw DomainError("hopf_kernel_series: n must be >= 1");
  if (t <= 0.0) throw DomainError("hopf_kernel_series: t must be positive");
  if (r < 0.0 || r >= PI / 2.0)
    throw DomainError("hopf_kernel_series: r must lie in [0, pi/2)");
  int M = tr.max_m > 0 ? tr.max_m : auto_terms(t);
  int K = tr.max_k > 0 ? tr.max_k : auto_terms(t);

  const double x = std::cos(2.0 * r);
  const double cr = std::cos(r);
  const double pref = series_prefactor(n);
  const double lgn = std::lgamma(static_cast<double>(n));

  double total = 0.0, row_tails = 0.0, max_block = 0.0, last_block = 0.0;
  int terms = 0;
  for (int k = 0; k <= K; ++k) {
    const double a = n - 1.0, b = k;
    double Pm2 = 0.0, Pm1 = 0.0;
    double sk = 0.0, last_term = 0.0;
    for (int m = 0; m <= M; ++m) {
      double P;
      if (m == 0)
        P = 1.0;
      else if (m == 1)
        P = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
      else {
        double apb = a + b;
        double c1 = 2.0 * m * (m + apb) * (2.0 * m + apb - 2.0);
        double c2 = (2.0 * m + apb - 1.0) *
                    ((2.0 * m + apb) * (2.0 * m + apb - 2.0) * x +
                     a * a - b * b);
        double c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + apb);
        P = (c2 * Pm1 - c3 * Pm2) / c1;
      }
      Pm2 = Pm1;
      Pm1 = P;
      double lam = 4.0 * m * (m + k + n) + 2.0 * k * n;
      double binom =
          std::exp(std::lgamma(m + k + n + 0.0) - lgn - std::lgamma(m + k + 1.0));
      double term = (2.0 * m + k + n) * binom * std::exp(-lam * t) * P;
      sk += term;
      last_term = std::fabs(term);
      ++terms;
      if (m > 3 && last_term < 1e-20 * (std::fabs(sk) + 1.0)) break;
    }
    row_tails += last_term;
    double fold = (k > 0 ? 2.0 : 1.0) * std::pow(cr, k);
    double block_mag = fold * std::fabs(sk);
    total += fold * std::cos(k * theta) * sk;
    max_block = std::max(max_block, block_mag);
    last_block = block_mag;
    if (k > 3 && block_mag < 1e-20 * (std::fabs(total) + 1.0)) break;
  }
  KernelValue out;
  out.value = pref * total;
  out.tail_estimate = pref * (row_tails + 2.0 * last_block);
  out.terms = terms;
  check_tr(out.tail_estimate, pref * max_block, "hopf_kernel_series");
  return out;
}

double hopf_kernel_integral(int n, double t, double r, double theta,
                            IntegralSpec q) {
  if (n < 1) throw DomainError("hopf_kernel_integral: n must be >= 1");
  if (t <= 0.0) throw DomainError("hopf_kernel_integral: t must be positive");
  if (r < 0.0 || r >= PI / 2.0)
    throw DomainError("hopf_kernel_integral: r must lie in [0, pi/2)");
  if (std::fabs(theta) > PI + 1e-12)
    throw DomainError("hopf_kernel_integral: |theta| must be <= pi");
  const double cr = std::cos(r);
  double rate = n + std::fabs(std::log(cr)) / (2.0 * t);
  double Y = q.cutoff > 0.0
                 ? q.cutoff
                 : std::min(45.0 * std::max(1.0, std::sqrt(t)) / rate + 5.0,
                            400.0);
  auto f = [&](double y) {
    auto s = specfun::sphere_series_scaled(n, t, cr * std::cosh(y));
    double ex = s.value.logs - (y * y - theta * theta) / (4.0 * t);
    return s.value.mant * std::exp(ex) * std::cos(y * theta / (2.0 * t));
  };
  double val = panel_integrate(f, Y, q.panel, q.nodes);
  return 2.0 / std::sqrt(4.0 * PI * t) * val;
}

KernelValue quaternionic_kernel_series(int n, double t, double r, double eta,
                                       SeriesTruncation tr) {
  if (n < 1) throw DomainError("quaternionic_kernel_series: n must be >= 1");
  if (t <= 0.0)
    throw DomainError("quaternionic_kernel_series: t must be positive");
  if (r < 0.0 || r >= PI / 2.0)
    throw DomainError("quaternionic_kernel_series: r must lie in [0, pi/2)");
  if (eta < 0.0 || eta > PI)
    throw DomainError("quaternionic_kernel_series: eta must lie in [0, pi]");
  int M = tr.max_m > 0 ? tr.max_m : auto_terms(t);
  int K = tr.max_k > 0 ? tr.max_k : auto_terms(t);

  const double x = std::cos(2.0 * r);
  const double cr = std::cos(r);
  const double ce = std::cos(eta);
  // Gamma(2n) / (2 pi^{2n+2})
  const double pref = std::exp(std::lgamma(2.0 * n) - std::log(2.0) -
                               (2.0 * n + 2.0) * std::log(PI));
  const double lg2n = std::lgamma(2.0 * n);

  double total = 0.0, row_tails = 0.0, max_block = 0.0, last_block = 0.0;
  double Um2 = 0.0, Um1 = 0.0;
  double crm = 1.0;
  int terms = 0;
  for (int m = 0; m <= M; ++m) {
    double U;  // Chebyshev U_m(cos eta)
    if (m == 0)
      U = 1.0;
    else if (m == 1)
      U = 2.0 * ce;
    else
      U = 2.0 * ce * Um1 - Um2;
    Um2 = Um1;
    Um1 = U;

    const double a = 2.0 * n - 1.0, b = m + 1.0;
    double Pk2 = 0.0, Pk1 = 0.0;
    double sm = 0.0, last_term = 0.0;
    for (int k = 0; k <= K; ++k) {
      double P;
      if (k == 0)
        P = 1.0;
      else if (k == 1)
        P = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
      else {
        double apb = a + b;
        double c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
        double c2 = (2.0 * k + apb - 1.0) *
                    ((2.0 * k + apb) * (2.0 * k + apb - 2.0) * x +
                     a * a - b * b);
        double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb);
        P = (c2 * Pk1 - c3 * Pk2) / c1;
      }
      Pk2 = Pk1;
      Pk1 = P;
      double lam = 4.0 * k * (k + 2.0 * n + m + 1.0) + 4.0 * n * m;
      double binom = std::exp(std::lgamma(k + m + 2.0 * n + 1.0) - lg2n -
                              std::lgamma(k + m + 2.0));
      double term =
          (2.0 * k + m + 2.0 * n + 1.0) * binom * std::exp(-lam * t) * P;
      sm += term;
      last_term = std::fabs(term);
      ++terms;
      if (k > 3 && last_term < 1e-20 * (std::fabs(sm) + 1.0)) break;
    }
    row_tails += last_term;
    double block_mag = (m + 1.0) * (std::fabs(U) + 1.0) * crm * std::fabs(sm);
    total += (m + 1.0) * U * crm * sm;
    max_block = std::max(max_block, block_mag);
    last_block = block_mag;
    crm *= cr;
    if (m > 3 && block_mag < 1e-20 * (std::fabs(total) + 1.0)) break;
  }
  KernelValue out;
  out.value = pref * total;
  out.tail_estimate = pref * (row_tails + 2.0 * last_block);
  out.terms = terms;
  check_tr(out.tail_estimate, pref * max_block, "quaternionic_kernel_series");
  return out;
}

double quaternionic_kernel_integral(int n, double t, double r, double eta,
                                    IntegralSpec q) {
  if (n < 1)
    throw DomainError("quaternionic_kernel_integral: n must be >= 1");
  if (t <= 0.0)
    throw DomainError("quaternionic_kernel_integral: t must be positive");
  if (r < 0.0 || r >= PI / 2.0)
    throw DomainError("quaternionic_kernel_integral: r must lie in [0, pi/2)");
  if (eta <= 0.0 || eta >= PI)
    throw DomainError("quaternionic_kernel_integral: eta must lie in (0, pi)");
  const double cr = std::cos(r);
  const double se = std::sin(eta);
  double rate = 2.0 * n + std::fabs(std::log(cr)) / (2.0 * t);
  double Y = q.cutoff > 0.0
                 ? q.cutoff
                 : std::min(45.0 * std::max(1.0, std::sqrt(t)) / rate + 5.0,
                            400.0);
  auto f = [&](double y) {
    // sphere parameter 2n+1: the fiber integral lands on S^{4n+3}
    auto s = specfun::sphere_series_scaled(2 * n + 1, t, cr * std::cosh(y));
    double ex = s.value.logs - (y * y - eta * eta) / (4.0 * t);
    double osc = std::sin(eta * y / (2.0 * t)) / se;
    if (y < 30.0) return std::sinh(y) * osc * s.value.mant * std::exp(ex);
    // fold sinh into the exponent to dodge overflow at large cutoffs
    return osc * s.value.mant * std::exp(ex + y - std::log(2.0)) *
           (1.0 - std::exp(-2.0 * y));
  };
  double val = panel_integrate(f, Y, q.panel, q.nodes);
  return std::exp(-t) / std::sqrt(PI * t) * val;
}

double heisenberg_kernel(int n, double t, double r, double z, IntegralSpec q) {
  if (n < 1) throw DomainError("heisenberg_kernel: n must be >= 1");
  if (t <= 0.0) throw DomainError("heisenberg_kernel: t must be positive");
  if (r < 0.0) throw DomainError("heisenberg_kernel: r must be >= 0");

  // log envelope of the integrand modulus for large lambda
  auto log_env = [&](double lam) {
    return n * std::log(2.0 * lam) - 2.0 * n * lam * t - lam * r * r / 2.0;
  };
  double lam_peak = n / (2.0 * n * t + r * r / 2.0);
  double target = log_env(lam_peak) + std::log(1e-18);
  double hi = 2.0 * lam_peak;
  for (int it = 0; it < 200 && log_env(hi) > target; ++it) hi *= 2.0;
  double lo = lam_peak;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    (log_env(mid) > target ? lo : hi) = mid;
  }
  double cutoff = q.cutoff > 0.0 ? q.cutoff : hi;
  // quarter-period panels track the cos(lambda z) oscillation
  double panel = std::min(0.25 * PI / std::max(std::fabs(z), 1e-3),
                          cutoff / 8.0);

  auto f = [&](double lam) {
    double xx = 2.0 * lam * t;
    double base, lcoth;
    if (xx < 1e-6) {
      base = 1.0 / (2.0 * t) / (1.0 + xx * xx / 6.0);
      lcoth = 1.0 / (2.0 * t) + 2.0 * lam * lam * t / 3.0;
    } else {
      base = lam / std::sinh(xx);
      lcoth = lam / std::tanh(xx);
    }
    return std::cos(lam * z) * std::pow(base, n) *
           std::exp(-(r * r / 2.0) * lcoth);
  };
  double val = panel_integrate(f, cutoff, panel, q.nodes);
  return 2.0 * val / std::pow(2.0 * PI, n + 1);
}

double hopf_quaternionic_relation_residual(int n, double t, double r,
                                           double theta) {
  double lhs = quaternionic_kernel_series(n, t, r, theta).value;
  // 6th-order centered first derivative in the fiber of the 2n-Hopf kernel
  const double h = 1e-3;
  static const double c[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                              3.0 / 4,   -3.0 / 20, 1.0 / 60};
  double d = 0.0;
  for (int i = -3; i <= 3; ++i)
    d += c[i + 3] * hopf_kernel_series(2 * n, t, r, theta + i * h).value;
  d /= h;
  double rhs = -std::exp(4.0 * n * t) /
               (2.0 * PI * std::sin(theta) * std::cos(r)) * d;
  return std::fabs(lhs - rhs) / std::fabs(lhs);
}

double sl2_heat_apply(const std::function<double(double)>& f, double t,
                      double eta, double cutoff) {
  if (t <= 0.0) throw DomainError("sl2_heat_apply: t must be positive");
  if (eta < 1e-8) throw DomainError("sl2_heat_apply: eta too close to 0");
  double pref = std::exp(-t) / std::sqrt(PI * t);
  double sh = std::sinh(eta);
  auto g = [&](double y) {
    double a = eta * y / (2.0 * t);
    double b = (y * y + eta * eta) / (4.0 * t);
    double ker = 0.5 * (std::exp(std::min(a - b, 700.0)) -
                        std::exp(std::min(-a - b, 700.0)));
    return std::sinh(y) / sh * ker * f(y);
  };
  return pref * panel_integrate(g, cutoff, 1.0, 32);
}

PdeCheck pde_residual(const ModelSpace& m, double t, double r, double fiber) {
  auto at = [&](double tt) {
    return [&, tt](double rr, double ff) {
      switch (m.kind) {
        case ModelKind::Heisenberg:
          return heisenberg_kernel(m.n, tt, rr, ff);
        case ModelKind::Hopf:
          return hopf_kernel_series(m.n, tt, rr, ff).value;
        case ModelKind::QuaternionicHopf:
          return quaternionic_kernel_series(m.n, tt, rr, ff).value;
      }
      throw DomainError("pde_residual: unknown model");
    };
  };
  double ht = 1e-3 * std::max(t, 0.25);
  double dpdt = (-at(t + 2 * ht)(r, fiber) + 8.0 * at(t + ht)(r, fiber) -
                 8.0 * at(t - ht)(r, fiber) + at(t - 2 * ht)(r, fiber)) /
                (12.0 * ht);
  double lap = apply_radial(radial_operator(m), at(t), r, fiber);
  double p0 = at(t)(r, fiber);
  PdeCheck out;
  out.residual = std::fabs(dpdt - lap);
  out.scale = std::fabs(dpdt) + std::fabs(lap) + std::fabs(p0);
  return out;
}

namespace {

double heisenberg_mass(int n, double t) {
  double R = 6.0 * std::sqrt(2.0 * t) + 4.0;
  double Z = std::max(40.0 * t, 8.0);
  const Quadrature& gl = gauss_legendre(70);
  ModelSpace m{ModelKind::Heisenberg, n};
  double total = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    double r = 0.5 * R * (gl.x[i] + 1.0);
    double wr = 0.5 * R * gl.w[i] * measure_density(m, r, 0.0);
    double sz = 0.0;
    for (size_t j = 0; j < gl.x.size(); ++j) {
      double z = 0.5 * Z * (gl.x[j] + 1.0);
      sz += 0.5 * Z * gl.w[j] * heisenberg_kernel(n, t, r, z);
    }
    total += wr * 2.0 * sz;  // kernel is even in z
  }
  return total;
}

// Per-radius Fourier blocks s_k(r) with p = sum_k s_k cos(k theta); the
// uniform theta grid then kills every k != 0 alias exactly.
std::vector<double> hopf_blocks(int n, double t, double r, int M, int K) {
  const double x = std::cos(2.0 * r);
  const double cr = std::cos(r);
  const double pref = series_prefactor(n);
  const double lgn = std::lgamma(static_cast<double>(n));
  std::vector<double> s(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    const double a = n - 1.0, b = k;
    double Pm2 = 0.0, Pm1 = 0.0, sk = 0.0;
    for (int m = 0; m <= M; ++m) {
      double P;
      if (m == 0)
        P = 1.0;
      else if (m == 1)
        P = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
      else {
        double apb = a + b;
        double c1 = 2.0 * m * (m + apb) * (2.0 * m + apb - 2.0);
        double c2 = (2.0 * m + apb - 1.0) *
                    ((2.0 * m + apb) * (2.0 * m + apb - 2.0) * x +
                     a * a - b * b);
        double c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + apb);
        P = (c2 * Pm1 - c3 * Pm2) / c1;
      }
      Pm2 = Pm1;
      Pm1 = P;
      double lam = 4.0 * m * (m + k + n) + 2.0 * k * n;
      double term = (2.0 * m + k + n) *
                    std::exp(std::lgamma(m + k + n + 0.0) - lgn -
                             std::lgamma(m + k + 1.0) - lam * t) *
                    P;
      sk += term;
      if (m > 3 && std::fabs(term) < 1e-20 * (std::fabs(sk) + 1.0)) break;
    }
    s[k] = pref * (k > 0 ? 2.0 : 1.0) * std::pow(cr, k) * sk;
  }
  return s;
}

double hopf_mass(int n, double t) {
  ModelSpace m{ModelKind::Hopf, n};
  int M = auto_terms(t), K = auto_terms(t);
  const int Ntheta = 256;
  const Quadrature& gl = gauss_legendre(160);  // in x = cos 2r
  double total = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    double r = 0.5 * std::acos(gl.x[i]);
    std::vector<double> s = hopf_blocks(n, t, r, M, K);
    double ti = 0.0;
    for (int j = 0; j < Ntheta; ++j) {
      double theta = -PI + 2.0 * PI * j / Ntheta;
      double p = 0.0;
      for (int k = 0; k <= K; ++k) p += s[k] * std::cos(k * theta);
      ti += p;
    }
    ti *= 2.0 * PI / Ntheta;
    // (sin r)^{2n-1} cos r dr = ((1-x)/2)^{n-1} dx / 4
    double wr = gl.w[i] * std::pow(0.5 * (1.0 - gl.x[i]), n - 1) / 4.0;
    total += wr * ti * 2.0 * std::pow(PI, n) /
             std::tgamma(static_cast<double>(n));
  }
  return total;
}

// Per-radius blocks T_m(r) with p = sum_m T_m U_m(cos eta).
std::vector<double> quat_blocks(int n, double t, double r, int M, int K) {
  const double x = std::cos(2.0 * r);
  const double cr = std::cos(r);
  const double pref = std::exp(std::lgamma(2.0 * n) - std::log(2.0) -
                               (2.0 * n + 2.0) * std::log(PI));
  const double lg2n = std::lgamma(2.0 * n);
  std::vector<double> out(M + 1, 0.0);
  double crm = 1.0;
  for (int m = 0; m <= M; ++m) {
    const double a = 2.0 * n - 1.0, b = m + 1.0;
    double Pk2 = 0.0, Pk1 = 0.0, sm = 0.0;
    for (int k = 0; k <= K; ++k) {
      double P;
      if (k == 0)
        P = 1.0;
      else if (k == 1)
        P = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
      else {
        double apb = a + b;
        double c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
        double c2 = (2.0 * k + apb - 1.0) *
                    ((2.0 * k + apb) * (2.0 * k + apb - 2.0) * x +
                     a * a - b * b);
        double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb);
        P = (c2 * Pk1 - c3 * Pk2) / c1;
      }
      Pk2 = Pk1;
      Pk1 = P;
      double lam = 4.0 * k * (k + 2.0 * n + m + 1.0) + 4.0 * n * m;
      double term = (2.0 * k + m + 2.0 * n + 1.0) *
                    std::exp(std::lgamma(k + m + 2.0 * n + 1.0) - lg2n -
                             std::lgamma(k + m + 2.0) - lam * t) *
                    P;
      sm += term;
      if (k > 3 && std::fabs(term) < 1e-20 * (std::fabs(sm) + 1.0)) break;
    }
    out[m] = pref * (m + 1.0) * crm * sm;
    crm *= cr;
  }
  return out;
}

double quaternionic_mass(int n, double t) {
  int M = auto_terms(t), K = auto_terms(t);
  Quadrature gc = gauss_chebyshev2(128);  // eta integral, weight sin^2
  const Quadrature& gl = gauss_legendre(128);  // x = cos 2r
  double amp = 8.0 * std::pow(PI, 2 * n + 1) / std::tgamma(2.0 * n);
  double total = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    double xi = gl.x[i];
    double r = 0.5 * std::acos(xi);
    std::vector<double> tm = quat_blocks(n, t, r, M, K);
    double si = 0.0;
    for (size_t j = 0; j < gc.x.size(); ++j) {
      // U_m at the Chebyshev node
      double c = gc.x[j];
      double Um2 = 0.0, Um1 = 0.0, p = 0.0;
      for (int m = 0; m <= M; ++m) {
        double U = m == 0 ? 1.0 : (m == 1 ? 2.0 * c : 2.0 * c * Um1 - Um2);
        Um2 = Um1;
        Um1 = U;
        p += tm[m] * U;
      }
      si += gc.w[j] * p;
    }
    // (sin r)^{4n-1} cos^3 r dr = ((1-x)/2)^{2n-1} ((1+x)/2) dx / 4
    double wr = gl.w[i] * std::pow(0.5 * (1.0 - xi), 2 * n - 1) *
                (0.5 * (1.0 + xi)) / 4.0;
    total += wr * si * amp;
  }
  return total;
}

}  // namespace

double kernel_mass(const ModelSpace& m, double t) {
  if (t <= 0.0) throw DomainError("kernel_mass: t must be positive");
  switch (m.kind) {
    case ModelKind::Heisenberg:
      return heisenberg_mass(m.n, t);
    case ModelKind::Hopf:
      return hopf_mass(m.n, t);
    case ModelKind::QuaternionicHopf:
      return quaternionic_mass(m.n, t);
  }
  throw DomainError("kernel_mass: unknown model");
}

}  // namespace hypolab
