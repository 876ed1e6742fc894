#pragma once

#include <functional>
#include <vector>

#include "hypolab/numerics.hpp"
#include "hypolab/polynomial.hpp"

namespace hypolab::kfp {

// Kinetic Fokker-Planck generator on R^2_{x,v}:
//   L f = f_vv - v f_v + V'(x) f_v - v f_x,
// symmetric part = OU in v, antisymmetric part = Hamiltonian transport for
// H = V(x) + v^2/2.  Invariant measure density: exp(-V(x) - v^2/2).
struct Potential {
  std::function<double(double)> V, Vp, Vpp;
  double hessian_bound = 1.0;  // sup |V''| over the working box
};
Potential quadratic_potential();  // V = x^2/2

// f(x,v) = p(x,v) exp(-s (x^2 + v^2)); closed under the calculus below, so
// derivatives and the generator evaluate without truncation error.
struct PolyGauss {
  Poly p{2};
  double s = 0.0;
};
PolyGauss pg(const Poly& p, double s);
PolyGauss pg_dx(const PolyGauss& f);
PolyGauss pg_dv(const PolyGauss& f);
PolyGauss pg_mul(const PolyGauss& a, const PolyGauss& b);
double pg_eval(const PolyGauss& f, double x, double v);

// L f at a point (exact in f, pointwise in V).
double kfp_apply(const Potential& pot, const PolyGauss& f, double x, double v);

// | integral of L f d mu | / mu(box), quadrature over [-box,box]^2.
double invariance_residual(const Potential& pot, const PolyGauss& f,
                           double box = 7.0, int nodes = 160);

// Twisted gradient: ||grad f||^2 = (2 f_x + f_v)^2 + f_v^2.
double grad_twist_sq(const PolyGauss& f, double x, double v);

// Second-order form of the twisted metric,
// T2(f) = (L Gamma(f) - 2 Gamma(f, Lf)) / 2, computed definitionally.
double t2_form(const Potential& pot, const PolyGauss& f, double x, double v);

// (Ric - nabla Y)-type lower bound candidate:
// (a+b)^2/2 - 2 a b V''(x), a = 2 f_x + f_v, b = f_v.
double bochner_rhs(const Potential& pot, const PolyGauss& f, double x,
                   double v);

// Smallest K with  T2(f) >= eta (2f_x+f_v)^2 - K f_v^2  for every f and
// every V'' in [-M, M]: bisection over the 2x2 matrix PSD test.
double k_eta(const Potential& pot, double eta);
double k_eta_closed(double hessian_bound, double eta);

// sup_x (|1/2 - V''(x)| - 1/2) over the box: the commutation-growth constant
// of the pointwise gradient bound.
double gradient_k(const Potential& pot, double box = 7.0);

// Convergence rates from (kappa, K, eta):
double hypo_rate(double kappa, double K, double eta);     // Poincare form
double logsob_rate(double kappa, double K, double eta);   // entropic form

// ---- grid solver ---------------------------------------------------------
struct PhaseGrid {
  int N = 128;
  double box = 7.0;
  double cfl = 0.35;   // transport Courant number
  double dt = 0.0;     // 0 = choose from the stability bound
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> f;  // row-major, f[i*N + j] at (x_i, v_j)
};

struct GridSolution {
  std::vector<double> xs, vs, w;
  std::vector<Snapshot> snaps;
  double dt = 0.0;
  double mass_drift = 0.0;  // max relative drift of integral f dmu
  double sup_ratio = 0.0;   // max_t sup|f_t| / sup|f_0|
};

// Splitting scheme: explicit conservative upwind transport (with exact
// constant preservation) + implicit OU step per column.  Throws on dt above
// the recorded stability bound and on norm growth (max principle violation).
GridSolution grid_solve(const Potential& pot,
                        const std::function<double(double, double)>& f0,
                        double T, const PhaseGrid& g, int nsnap = 60);

// F(t) = c int f^2 dmu + int ||grad f||^2 dmu on a snapshot.
double energy_functional(const GridSolution& sol, const std::vector<double>& f,
                         double c);

// Smallest eigenvalue of the twisted Dirichlet form on mean-zero functions:
// Q1 finite elements, lumped mass, deflated inverse iteration.
struct PoincareResult {
  double kappa = 0.0;
  double residual = 0.0;  // ||A q - kappa M q|| / ||M q||
};
PoincareResult poincare_constant(const Potential& pot, int N, double box = 7.0);

// Log-Sobolev constant of mu in the twisted metric (quadratic V only):
// 1-parameter Gaussian tilt family + grid certification of Ent <= (2/k) E.
struct LogSobEstimate {
  double kappa_ls = 0.0;
  double certification_margin = 0.0;
};
LogSobEstimate logsob_constant(const Potential& pot, int N = 96,
                               double box = 7.0);

enum class DecayMode { Poincare, LogSobolev };

struct DecayReport {
  std::vector<double> ts, Fs;
  double fitted_rate = 0.0;
  double predicted_rate = 0.0;
  double kappa = 0.0, K = 0.0, eta = 0.0;
  bool monotone = false;
};
DecayReport hypocoercive_decay(const Potential& pot, double eta, double T,
                               const PhaseGrid& g,
                               DecayMode mode = DecayMode::Poincare,
                               int nsnap = 60);

// Pointwise gradient bound ||grad P_t f||^2 <= e^{2Kt} P_t ||grad f||^2 on
// the grid, f = sin(x) e^{-v^2}; K may be shifted to probe tightness.
struct GradBoundReport {
  double K = 0.0;
  double min_interior_slack = 0.0;
  double scale = 0.0;  // max interior e^{2Kt} P_t ||grad f||^2
  int margin = 5;
};
GradBoundReport gradient_bound_check(const Potential& pot, double t,
                                     const PhaseGrid& g, double K_shift = 0.0);

// W = 1 + x^2 + v^2:  sup LW/W and sup ||grad W||/W over the grid box.
struct LyapunovReport {
  double c_drift = 0.0;
  double c_grad = 0.0;
};
LyapunovReport lyapunov_check(const Potential& pot, double box = 7.0,
                              int N = 401);

}  // namespace hypolab::kfp
