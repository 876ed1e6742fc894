#include "hypolab/geometry_estimates.hpp"

#include <cmath>

#include "hypolab/heat_kernels.hpp"
#include "hypolab/numerics.hpp"

namespace hypolab {

double cd_slack(int n, const Poly& f, const std::vector<double>& pt,
                double eps) {
  if (eps <= 0.0) throw DomainError("cd_slack: eps must be positive");
  CurvatureConstants cc = curvature_constants(
      ModelSpace{ModelKind::Heisenberg, n}, Convention::CDQuarterTrace);
  double rho1 = cc.rho1.to_double(), kappa = cc.kappa.to_double(),
         rho2 = cc.rho2.to_double();
  Poly lf = heis_delta_h(n, f);
  Poly lhs = heis_gamma2(n, f) + eps * heis_gamma2_v(n, f);
  Poly rhs = (1.0 / cc.n_h) * (lf * lf) +
             (rho1 - kappa / eps) * heis_gamma(n, f, f) +
             rho2 * heis_gamma_v(n, f, f);
  return (lhs - rhs).eval(pt);
}

double d_alpha(int n_h, double kappa, double rho2, double alpha) {
  if (alpha <= 2.0) throw DomainError("d_alpha: alpha must exceed 2");
  if (rho2 <= 0.0) throw DomainError("d_alpha: rho2 must be positive");
  double A = 1.0 + alpha * kappa / ((alpha - 1.0) * rho2);
  return n_h * (alpha - 1.0) * (alpha - 1.0) * A / (4.0 * (alpha - 2.0));
}

double alpha_star(double kappa, double rho2) {
  if (rho2 <= 0.0 || kappa < 0.0) throw DomainError("alpha_star: bad constants");
  double c = kappa / rho2;
  return 2.0 + std::sqrt((1.0 + 2.0 * c) / (1.0 + c));
}

namespace {

// centered difference with one Richardson pass
double fd1(const std::function<double(double)>& f, double x0) {
  double h = 1e-3 * std::max(1.0, std::fabs(x0));
  double dh = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
  double dh2 = (f(x0 + h / 2) - f(x0 - h / 2)) / h;
  return (4.0 * dh2 - dh) / 3.0;
}

}  // namespace

double liyau_slack(int n, double alpha, double s, double t, double r,
                   double z) {
  if (alpha <= 2.0) throw DomainError("liyau_slack: alpha must exceed 2");
  if (s <= 0.0 || t <= 0.0) throw DomainError("liyau_slack: s,t must be > 0");
  CurvatureConstants cc = curvature_constants(
      ModelSpace{ModelKind::Heisenberg, n}, Convention::CDQuarterTrace);
  double kappa = cc.kappa.to_double(), rho2 = cc.rho2.to_double();
  int nh = cc.n_h;
  double A = 1.0 + alpha * kappa / ((alpha - 1.0) * rho2);

  double ts = s + t;
  auto ker = [&](double rr, double zz) {
    return heisenberg_kernel(n, ts, rr, zz);
  };
  double u = ker(r, z);
  double ur = fd1([&](double rr) { return ker(rr, z); }, r);
  double uz = fd1([&](double zz) { return ker(r, zz); }, z);
  double lap =
      apply_radial(radial_operator(ModelSpace{ModelKind::Heisenberg, n}), ker,
                   r, z);

  double gam = (ur / u) * (ur / u) + r * r * (uz / u) * (uz / u);
  double gam_v = (uz / u) * (uz / u);
  double lhs = gam + (2.0 * rho2 / alpha) * t * gam_v;
  double rhs = A * lap / u + nh * (alpha - 1.0) * (alpha - 1.0) * A * A /
                                 (8.0 * (alpha - 2.0) * t);
  return rhs - lhs;
}

double harnack_slack(int n, double alpha, double x, double y, double s,
                     double t) {
  if (!(s < t) || s <= 0.0)
    throw DomainError("harnack_slack: need 0 < s < t");
  CurvatureConstants cc = curvature_constants(
      ModelSpace{ModelKind::Heisenberg, n}, Convention::CDQuarterTrace);
  double D = d_alpha(cc.n_h, cc.kappa.to_double(), cc.rho2.to_double(), alpha);
  double us = heisenberg_kernel(n, s, std::fabs(x), 0.0);
  double ut = heisenberg_kernel(n, t, std::fabs(y), 0.0);
  double d2 = (x - y) * (x - y);
  double rhs = ut * std::pow(t / s, D / 2.0) *
               std::exp(D / cc.n_h * d2 / (4.0 * (t - s)));
  return rhs - us;
}

PhiDiameterResult phi_diameter(double alpha, double D) {
  if (alpha <= 0.0 || D <= 0.0)
    throw DomainError("phi_diameter: alpha, D must be positive");
  // -2 int sqrt(x) Phi''(x) dx with Phi''(x) = -2D / (x (2x + alpha D));
  // substitute x = u^2, then u = 1/v for the tail.
  double ad = alpha * D;
  double U = std::max(1.0, std::sqrt(ad));
  double closed = 2.0 * PI * std::sqrt(2.0 * D / alpha);
  double tol = 1e-11 * closed / (8.0 * D);
  double head = adaptive_simpson(
      [&](double u) { return 1.0 / (2.0 * u * u + ad); }, 0.0, U, tol);
  double tail = adaptive_simpson(
      [&](double v) { return 1.0 / (2.0 + ad * v * v); }, 0.0, 1.0 / U, tol);
  return {8.0 * D * (head + tail), closed};
}

double bonnet_myers_general(const DiameterInputs& in) {
  if (in.beta <= 2.0)
    throw DomainError("bonnet_myers_general: beta must exceed 2");
  if (in.rho1 <= 0.0 || in.rho2 <= 0.0 || in.kappa < 0.0 || in.n <= 0.0)
    throw DomainError("bonnet_myers_general: bad constants");
  double b = in.beta;
  return PI * (1.0 + in.kappa / in.rho2) * std::sqrt(in.n / in.rho1) *
         std::sqrt(b * (b - 1.0) / (b - 2.0) *
                   (b - in.rho2 / (in.rho2 + in.kappa)));
}

double bonnet_myers_beta3(const DiameterInputs& in) {
  if (in.rho1 <= 0.0 || in.rho2 <= 0.0 || in.kappa < 0.0 || in.n <= 0.0)
    throw DomainError("bonnet_myers_beta3: bad constants");
  return 2.0 * std::sqrt(3.0) * PI *
         std::sqrt((in.rho2 + in.kappa) / (in.rho1 * in.rho2) *
                   (1.0 + 3.0 * in.kappa / (2.0 * in.rho2)) * in.n);
}

}  // namespace hypolab
