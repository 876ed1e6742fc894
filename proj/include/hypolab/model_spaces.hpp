#pragma once

#include <functional>
#include <vector>

#include "hypolab/numerics.hpp"
#include "hypolab/polynomial.hpp"

namespace hypolab {

enum class ModelKind { Heisenberg, Hopf, QuaternionicHopf };

struct ModelSpace {
  ModelKind kind = ModelKind::Heisenberg;
  int n = 1;  // Heisenberg H^{2n+1}; S^{2n+1} -> CP^n; S^{4n+3} -> HP^n

  int horizontal_dim() const {
    return kind == ModelKind::QuaternionicHopf ? 4 * n : 2 * n;
  }
  int vertical_dim() const {
    return kind == ModelKind::QuaternionicHopf ? 3 : 1;
  }
};

// Radial form of the horizontal Laplacian acting on functions of the
// sub-Riemannian radial coordinate r and one fiber coordinate:
//   L f = f_rr + a(r) f_r + b(r) (fiber operator) f.
enum class FiberOp { Dzz, Dthetatheta, DetaSphere };

struct RadialOperator {
  std::function<double(double)> a, b;
  FiberOp fiber = FiberOp::Dzz;
  double r_min = 0.0, r_max = 0.0;
};

RadialOperator radial_operator(const ModelSpace& m);

// Apply the radial operator to a smooth f(r, fiber) by centered 4th-order
// finite differences; steps scale with the coordinate magnitude.
double apply_radial(const RadialOperator& op,
                    const std::function<double(double, double)>& f, double r,
                    double fiber);

// Density of the invariant/reference measure in the (r, fiber) chart, with
// all angular volume absorbed, so integrating p_t * density over the chart
// gives total mass 1.
double measure_density(const ModelSpace& m, double r, double fiber);

// ---- Heisenberg group H^{2n+1}: polynomial calculus ---------------------
// Variable layout: x_1..x_n, y_1..y_n, z.  Frame: X_i = d/dx_i - y_i d/dz,
// Y_i = d/dy_i + x_i d/dz, Z = d/dz, so [X_i, Y_i] = 2Z.

Poly heis_x(int n, int i, const Poly& f);
Poly heis_y(int n, int i, const Poly& f);
Poly heis_z(int n, const Poly& f);
Poly heis_delta_h(int n, const Poly& f);
Poly heis_gamma(int n, const Poly& f, const Poly& g);
Poly heis_gamma_v(int n, const Poly& f, const Poly& g);
Poly heis_gamma2(int n, const Poly& f);
Poly heis_gamma2_v(int n, const Poly& f);

// Max |coefficient| of [Delta_H, Z] f; identically zero for the left
// invariant frame above.
double commutation_residual(int n, const Poly& f);

// max |coefficient| of Gamma(f, Gamma^V(f)) - Gamma^V(f, Gamma(f)); zero
// because the vertical field commutes with the horizontal frame.
double gamma_exchange_residual(int n, const Poly& f);

// ---- curvature-type constants -------------------------------------------
enum class Convention { CDQuarterTrace, LichnerowiczFullTrace };

struct CurvatureConstants {
  Rational rho1, kappa, rho2;
  int n_h = 0;  // horizontal dimension entering the CD inequality
  Convention convention = Convention::CDQuarterTrace;
};

// Heisenberg constants are computed from the frame: J is recovered entry by
// entry from vertical torsion brackets, J^2 = -kappa Id is verified, and
// rho2 = Tr(J*J)/4.  The fibration constants are the known closed forms.
CurvatureConstants curvature_constants(const ModelSpace& m, Convention conv);

}  // namespace hypolab
