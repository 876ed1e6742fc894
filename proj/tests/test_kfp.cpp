#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "hypolab/kolmogorov_kfp.hpp"
#include "oracles.hpp"

using namespace hypolab;
using namespace hypolab::kfp;

namespace {

Poly px() { return Poly::var(2, 0); }
Poly pv() { return Poly::var(2, 1); }

PolyGauss random_pg(Rng& rng, double s) {
  Poly p(2);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      p = p + Poly::monomial(2, {a, b}, rng.uni(-1.0, 1.0));
  return pg(p, s);
}

double fd1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12 * h);
}
double fd2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
          f(x - 2 * h)) /
         (12 * h * h);
}

}  // namespace

TEST_CASE("generator on closed-form inputs") {
  Potential pot = quadratic_potential();
  PolyGauss fv = pg(pv(), 0.0);
  PolyGauss fv2 = pg(pv() * pv(), 0.0);
  PolyGauss fxv = pg(px() * pv(), 0.0);
  PolyGauss fx2 = pg(px() * px(), 0.0);
  for (double x : {-1.3, 0.2, 2.0})
    for (double v : {-0.7, 0.5, 1.8}) {
      CHECK(kfp_apply(pot, fv, x, v) ==
            doctest::Approx(x - v).epsilon(1e-13));
      CHECK(kfp_apply(pot, fv2, x, v) ==
            doctest::Approx(2.0 - 2.0 * v * v + 2.0 * x * v).epsilon(1e-13));
      CHECK(kfp_apply(pot, fxv, x, v) ==
            doctest::Approx(x * x - x * v - v * v).epsilon(1e-13));
      CHECK(kfp_apply(pot, fx2, x, v) ==
            doctest::Approx(-2.0 * x * v).epsilon(1e-13));
    }
}

TEST_CASE("generator matches finite differences on gaussian-weighted data") {
  Potential pot = quadratic_potential();
  Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    PolyGauss f = random_pg(rng, 0.25);
    for (double x : {-0.8, 0.6})
      for (double v : {-0.4, 1.1}) {
        auto fx = [&](double xx) { return pg_eval(f, xx, v); };
        auto fv = [&](double vv) { return pg_eval(f, x, vv); };
        double h = 1e-3;
        double lf = fd2(fv, v, h) - v * fd1(fv, v, h) +
                    pot.Vp(x) * fd1(fv, v, h) - v * fd1(fx, x, h);
        CHECK(kfp_apply(pot, f, x, v) ==
              doctest::Approx(lf).epsilon(1e-7));
        // twisted gradient from first partials
        double a = 2.0 * fd1(fx, x, h) + fd1(fv, v, h), b = fd1(fv, v, h);
        CHECK(grad_twist_sq(f, x, v) ==
              doctest::Approx(a * a + b * b).epsilon(1e-7));
      }
  }
}

TEST_CASE("generator annihilates total mass under the invariant measure") {
  Potential pot = quadratic_potential();
  Rng rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    PolyGauss f = random_pg(rng, 0.2 * (trial % 3));
    CHECK(invariance_residual(pot, f) < 1e-8);
  }
}

TEST_CASE("second-order form exceeds the curvature candidate by a square") {
  Potential pot = quadratic_potential();
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    PolyGauss f = random_pg(rng, trial % 2 ? 0.25 : 0.0);
    double x = rng.uni(-2.0, 2.0), v = rng.uni(-2.0, 2.0);
    double t2 = t2_form(pot, f, x, v);
    double rhs = bochner_rhs(pot, f, x, v);
    double fxv = pg_eval(pg_dv(pg_dx(f)), x, v);
    double fvv = pg_eval(pg_dv(pg_dv(f)), x, v);
    double square = (2.0 * fxv + fvv) * (2.0 * fxv + fvv) + fvv * fvv;
    CHECK(t2 - rhs ==
          doctest::Approx(square).epsilon(1e-9));
    CHECK(t2 - rhs >= -1e-9 * std::max(1.0, std::fabs(t2)));
  }
}

TEST_CASE("curvature correction constant K(eta)") {
  Potential pot = quadratic_potential();
  CHECK(k_eta(pot, 0.25) ==
        doctest::Approx(oracles::keta_quarter).epsilon(1e-10));
  for (double eta : {0.05, 0.1, 0.2, 0.3, 0.4, 0.45}) {
    double kc = k_eta_closed(pot.hessian_bound, eta);
    CHECK(k_eta(pot, eta) ==
          doctest::Approx(kc).epsilon(1e-9));
    CHECK(kc >= -0.5);
  }
  CHECK_THROWS_AS(k_eta(pot, 0.5), DomainError);
  CHECK_THROWS_AS(k_eta(pot, -0.6), DomainError);
}

TEST_CASE("rate formulas and the gradient-growth constant") {
  Potential pot = quadratic_potential();
  CHECK(gradient_k(pot) == 0.0);  // |1/2 - 1| - 1/2 vanishes identically
  CHECK(hypo_rate(1.0, 2.0, 0.5) ==
        doctest::Approx(oracles::hypo_rate_example).epsilon(1e-14));
  CHECK(logsob_rate(1.0, 2.0, 0.5) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  // logsob form is always the slower rate
  CHECK(logsob_rate(0.7, 3.0, 0.2) < hypo_rate(0.7, 3.0, 0.2));
}

TEST_CASE("grid solver: stability guards, mass conservation, snapshots") {
  Potential pot = quadratic_potential();
  // nonzero mean, so the relative mass drift is meaningful
  auto f0 = [](double x, double v) {
    return 1.0 + 0.5 * std::sin(x) * std::exp(-v * v);
  };
  PhaseGrid g;
  g.N = 64;
  GridSolution sol = grid_solve(pot, f0, 1.0, g, 6);
  REQUIRE(sol.snaps.size() == 6);
  CHECK(sol.snaps.front().t == 0.0);
  CHECK(sol.snaps.back().t == doctest::Approx(1.0).epsilon(1e-12));
  for (size_t k = 1; k < sol.snaps.size(); ++k)
    CHECK(sol.snaps[k].t > sol.snaps[k - 1].t);
  CHECK(sol.mass_drift < 1e-12);
  CHECK(sol.sup_ratio <= 1.0 + 1e-9);

  PhaseGrid bad = g;
  bad.dt = 0.5;  // far above the recorded stability bound
  CHECK_THROWS_AS(grid_solve(pot, f0, 1.0, bad, 2), DomainError);
  PhaseGrid tiny = g;
  tiny.N = 4;
  CHECK_THROWS_AS(grid_solve(pot, f0, 1.0, tiny, 2), DomainError);
  CHECK_THROWS_AS(grid_solve(pot, f0, 0.0, g, 2), DomainError);

  // one-sided edge differences make the energy of a constant exactly zero
  std::vector<double> ones(sol.xs.size() * sol.vs.size(), 1.0);
  CHECK(energy_functional(sol, ones, 0.0) == 0.0);
}

TEST_CASE("twisted poincare constant from finite elements") {
  Potential pot = quadratic_potential();
  PoincareResult p48 = poincare_constant(pot, 48);
  PoincareResult p64 = poincare_constant(pot, 64);
  PoincareResult p96 = poincare_constant(pot, 96);
  CHECK(p48.kappa == doctest::Approx(oracles::poincare_fem_48).epsilon(1e-9));
  CHECK(p64.kappa == doctest::Approx(oracles::poincare_fem_64).epsilon(1e-9));
  CHECK(p96.kappa == doctest::Approx(oracles::poincare_fem_96).epsilon(1e-9));
  CHECK(p48.residual < 1e-8);
  CHECK(p96.residual < 1e-8);
  // monotone approach from below to 3 - sqrt(5)
  CHECK(p48.kappa < p64.kappa);
  CHECK(p64.kappa < p96.kappa);
  CHECK(p96.kappa < oracles::logsob_kappa);
}

TEST_CASE("log-sobolev constant: closed form and certification") {
  Potential pot = quadratic_potential();
  LogSobEstimate ls = logsob_constant(pot, 96);
  CHECK(ls.kappa_ls ==
        doctest::Approx(oracles::logsob_kappa).epsilon(1e-12));
  CHECK(ls.certification_margin >= -1e-6);

  Potential quartic;
  quartic.V = [](double x) { return 0.25 * x * x * x * x; };
  quartic.Vp = [](double x) { return x * x * x; };
  quartic.Vpp = [](double x) { return 3.0 * x * x; };
  quartic.hessian_bound = 147.0;
  CHECK_THROWS_AS(logsob_constant(quartic, 48), UnsupportedError);
}

TEST_CASE("hypocoercive decay beats the predicted rate") {
  Potential pot = quadratic_potential();
  PhaseGrid g;
  g.N = 64;
  DecayReport rep = hypocoercive_decay(pot, 0.25, 6.0, g, DecayMode::Poincare,
                                       40);
  CHECK(rep.monotone);
  CHECK(rep.kappa == doctest::Approx(oracles::poincare_fem_64).epsilon(1e-9));
  CHECK(rep.predicted_rate ==
        doctest::Approx(hypo_rate(rep.kappa, rep.K, rep.eta)).epsilon(1e-14));
  CHECK(rep.fitted_rate >= 0.95 * rep.predicted_rate);
  REQUIRE(rep.ts.size() == rep.Fs.size());
  CHECK(rep.Fs.front() > rep.Fs.back());

  DecayReport ls = hypocoercive_decay(pot, 0.25, 4.0, g, DecayMode::LogSobolev,
                                      30);
  CHECK(ls.monotone);
  CHECK(ls.fitted_rate >= 0.95 * ls.predicted_rate);
}

TEST_CASE("pointwise gradient bound holds, and fails when K is lowered") {
  Potential pot = quadratic_potential();
  PhaseGrid g;
  g.N = 96;
  GradBoundReport ok = gradient_bound_check(pot, 1.0, g);
  CHECK(ok.K == 0.0);
  CHECK(ok.scale > 0.0);
  CHECK(ok.min_interior_slack >= -1e-4 * ok.scale);
  // e^{2Kt} with K shifted well below the true decay rate must fail
  GradBoundReport broken = gradient_bound_check(pot, 1.0, g, -1.0);
  CHECK(broken.min_interior_slack < -0.1);
}

TEST_CASE("lyapunov constants for W = 1 + x^2 + v^2") {
  Potential pot = quadratic_potential();
  LyapunovReport rep = lyapunov_check(pot);
  CHECK(rep.c_drift == doctest::Approx(oracles::lyap_drift).epsilon(1e-12));
  CHECK(rep.c_grad ==
        doctest::Approx(oracles::lyap_grad_grid401).epsilon(1e-12));
  CHECK(rep.c_grad <= oracles::lyap_grad_sup);
}
