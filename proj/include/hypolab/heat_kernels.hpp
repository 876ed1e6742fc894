#pragma once

#include <functional>

#include "hypolab/model_spaces.hpp"
#include "hypolab/numerics.hpp"

namespace hypolab {

// max_m/max_k <= 0 means: choose from t (more terms for small t).
struct SeriesTruncation {
  int max_m = 0;
  int max_k = 0;
};

// cutoff <= 0 means: choose from the integrand decay rate.
struct IntegralSpec {
  double cutoff = 0.0;
  int nodes = 32;
  double panel = 1.0;
};

struct KernelValue {
  double value = 0.0;
  double tail_estimate = 0.0;
  int terms = 0;
};

// Heat kernel on the odd sphere S^{2n+1} at geodesic angle delta, mass
// normalized against the round volume.  The theta form (Millson-type
// derivative of the wrapped Gaussian) is available for n = 1, 2.
enum class SphereForm { Gegenbauer, Theta };
double sphere_kernel(int n, double t, double delta, SphereForm form);

// Radial kernel of the horizontal Laplacian, Hopf fibration
// U(1) -> S^{2n+1} -> CP^n: spectral double series and the shifted-contour
// integral transform of the sphere kernel.  theta is the fiber coordinate.
KernelValue hopf_kernel_series(int n, double t, double r, double theta,
                               SeriesTruncation tr = {});
double hopf_kernel_integral(int n, double t, double r, double theta,
                            IntegralSpec q = {});

// Same pair for the quaternionic fibration SU(2) -> S^{4n+3} -> HP^n;
// eta in [0, pi] is the radial coordinate on the SU(2) fiber.
KernelValue quaternionic_kernel_series(int n, double t, double r, double eta,
                                       SeriesTruncation tr = {});
double quaternionic_kernel_integral(int n, double t, double r, double eta,
                                    IntegralSpec q = {});

// Radial heat kernel on the Heisenberg group H^{2n+1} (oscillatory
// fiber-Fourier integral, envelope-truncated).
double heisenberg_kernel(int n, double t, double r, double z,
                         IntegralSpec q = {});

// | quaternionic(n) - (-e^{4nt} / (2 pi sin(theta) cos(r))) d/dtheta
//   hopf(2n) | / |quaternionic(n)|, the inter-fibration transmutation.
double hopf_quaternionic_relation_residual(int n, double t, double r,
                                           double theta);

// Radial hyperbolic SL(2) heat semigroup (the analytic continuation of the
// compact fiber evolution):
//   (e^{t L} f)(eta) = e^{-t}/sqrt(pi t) int_0^inf sinh(y)
//       sinh(eta y / 2t)/sinh(eta) e^{-(y^2+eta^2)/4t} f(y) dy.
double sl2_heat_apply(const std::function<double(double)>& f, double t,
                      double eta, double cutoff = 80.0);

// |d/dt p - L p| at one point, with a magnitude scale for relative checks.
struct PdeCheck {
  double residual = 0.0;
  double scale = 0.0;
};
PdeCheck pde_residual(const ModelSpace& m, double t, double r, double fiber);

// Total mass of the radial kernel against measure_density; 1 if the kernel
// and the measure share the normalization.
double kernel_mass(const ModelSpace& m, double t);

}  // namespace hypolab
