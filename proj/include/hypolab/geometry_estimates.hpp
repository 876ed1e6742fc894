#pragma once

#include <vector>

#include "hypolab/model_spaces.hpp"
#include "hypolab/polynomial.hpp"

namespace hypolab {

// Slack of the curvature-dimension inequality on the Heisenberg group at a
// point: Gamma2(f) + eps Gamma2_V(f) - (Delta_H f)^2 / n_h
//        - (rho1 - kappa/eps) Gamma(f) - rho2 Gamma_V(f).
double cd_slack(int n, const Poly& f, const std::vector<double>& pt,
                double eps);

// Dimensional constant of the entropic gradient estimate with rho1 = 0:
// D_alpha = n_h (alpha-1)^2 A / (4 (alpha-2)),  A = 1 + alpha kappa /
// ((alpha-1) rho2).
double d_alpha(int n_h, double kappa, double rho2, double alpha);

// Minimizer of D_alpha over alpha > 2 at fixed kappa/rho2.
double alpha_star(double kappa, double rho2);

// Li-Yau-type slack for u = p_{s+t} on the Heisenberg group H^{2n+1}:
//   A Delta_H u / u + n_h (alpha-1)^2 A^2 / (8 (alpha-2) t)
//   - Gamma(ln u) - (2 rho2 / alpha) t Gamma_V(ln u)   (>= 0).
double liyau_slack(int n, double alpha, double s, double t, double r,
                   double z);

// Harnack slack for kernel points on the horizontal axis:
//   u(y,t) (t/s)^{D/2} exp(D (x-y)^2 / (4 n_h (t-s)))... see impl for the
//   exact exponent; returns RHS - LHS (>= 0).
double harnack_slack(int n, double alpha, double x, double y, double s,
                     double t);

// Diameter bound from the entropy-energy profile
// Phi(x) = D [(1 + 2x/(alpha D)) ln(1 + 2x/(alpha D)) - 2x/(alpha D)] ...
// evaluated as -2 integral sqrt(x) Phi''(x) dx, against 2 pi sqrt(2D/alpha).
struct PhiDiameterResult {
  double quadrature = 0.0;
  double closed_form = 0.0;
};
PhiDiameterResult phi_diameter(double alpha, double D);

struct DiameterInputs {
  double rho1 = 1.0, rho2 = 1.0, kappa = 0.0, n = 1.0;
  double beta = 3.0;
};
double bonnet_myers_general(const DiameterInputs& in);
double bonnet_myers_beta3(const DiameterInputs& in);

}  // namespace hypolab
