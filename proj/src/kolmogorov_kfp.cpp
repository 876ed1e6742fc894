#include "hypolab/kolmogorov_kfp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace hypolab::kfp {

Potential quadratic_potential() {
  Potential p;
  p.V = [](double x) { return 0.5 * x * x; };
  p.Vp = [](double x) { return x; };
  p.Vpp = [](double) { return 1.0; };
  p.hessian_bound = 1.0;
  return p;
}

PolyGauss pg(const Poly& p, double s) {
  if (p.nvars() != 2) throw DomainError("pg: polynomial must be bivariate");
  if (s < 0.0) throw DomainError("pg: s must be >= 0");
  return PolyGauss{p, s};
}

PolyGauss pg_dx(const PolyGauss& f) {
  Poly x = Poly::var(2, 0);
  return PolyGauss{f.p.diff(0) - (2.0 * f.s) * (x * f.p), f.s};
}

PolyGauss pg_dv(const PolyGauss& f) {
  Poly v = Poly::var(2, 1);
  return PolyGauss{f.p.diff(1) - (2.0 * f.s) * (v * f.p), f.s};
}

PolyGauss pg_mul(const PolyGauss& a, const PolyGauss& b) {
  return PolyGauss{a.p * b.p, a.s + b.s};
}

double pg_eval(const PolyGauss& f, double x, double v) {
  return f.p.eval({x, v}) * std::exp(-f.s * (x * x + v * v));
}

double kfp_apply(const Potential& pot, const PolyGauss& f, double x,
                 double v) {
  PolyGauss fx = pg_dx(f), fv = pg_dv(f), fvv = pg_dv(fv);
  return pg_eval(fvv, x, v) - v * pg_eval(fv, x, v) +
         pot.Vp(x) * pg_eval(fv, x, v) - v * pg_eval(fx, x, v);
}

double invariance_residual(const Potential& pot, const PolyGauss& f,
                           double box, int nodes) {
  PolyGauss fx = pg_dx(f), fv = pg_dv(f), fvv = pg_dv(fv);
  const Quadrature& gl = gauss_legendre(nodes);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    double x = box * gl.x[i];
    double wx = box * gl.w[i];
    for (size_t j = 0; j < gl.x.size(); ++j) {
      double v = box * gl.x[j];
      double w = wx * box * gl.w[j] * std::exp(-pot.V(x) - 0.5 * v * v);
      double lf = pg_eval(fvv, x, v) - v * pg_eval(fv, x, v) +
                  pot.Vp(x) * pg_eval(fv, x, v) - v * pg_eval(fx, x, v);
      num += lf * w;
      den += w;
    }
  }
  return std::fabs(num) / den;
}

double grad_twist_sq(const PolyGauss& f, double x, double v) {
  double fx = pg_eval(pg_dx(f), x, v);
  double fv = pg_eval(pg_dv(f), x, v);
  double a = 2.0 * fx + fv;
  return a * a + fv * fv;
}

namespace {

struct FDerivs {
  double fx, fv, fxx, fxv, fvv, fxxv, fxvv, fvvv;
};

FDerivs partials(const PolyGauss& f, double x, double v) {
  PolyGauss fx = pg_dx(f), fv = pg_dv(f);
  PolyGauss fxx = pg_dx(fx), fxv = pg_dv(fx), fvv = pg_dv(fv);
  FDerivs d;
  d.fx = pg_eval(fx, x, v);
  d.fv = pg_eval(fv, x, v);
  d.fxx = pg_eval(fxx, x, v);
  d.fxv = pg_eval(fxv, x, v);
  d.fvv = pg_eval(fvv, x, v);
  d.fxxv = pg_eval(pg_dv(fxx), x, v);
  d.fxvv = pg_eval(pg_dv(fxv), x, v);
  d.fvvv = pg_eval(pg_dv(fvv), x, v);
  return d;
}

}  // namespace

double t2_form(const Potential& pot, const PolyGauss& f, double x, double v) {
  // g = Gamma(f) stays in the class, so L g is exact up to the pointwise
  // values of V', V''.
  PolyGauss fx = pg_dx(f), fv = pg_dv(f);
  Poly ap = 2.0 * fx.p + fv.p;
  PolyGauss a{ap, f.s};
  PolyGauss g{pg_mul(a, a).p + pg_mul(fv, fv).p, 2.0 * f.s};

  double gx = pg_eval(pg_dx(g), x, v);
  double gv = pg_eval(pg_dv(g), x, v);
  double gvv = pg_eval(pg_dv(pg_dv(g)), x, v);
  double lg = gvv - v * gv + pot.Vp(x) * gv - v * gx;

  FDerivs d = partials(f, x, v);
  double vp = pot.Vp(x), vpp = pot.Vpp(x);
  // first derivatives of Lf = f_vv - v f_v + V' f_v - v f_x
  double lf_x = d.fxvv - v * d.fxv + vpp * d.fv + vp * d.fxv - v * d.fxx;
  double lf_v = d.fvvv - d.fv - v * d.fvv + vp * d.fvv - d.fx - v * d.fxv;
  double av = 2.0 * d.fx + d.fv;
  double gamma_f_lf = (av) * (2.0 * lf_x + lf_v) + d.fv * lf_v;
  return 0.5 * (lg - 2.0 * gamma_f_lf);
}

double bochner_rhs(const Potential& pot, const PolyGauss& f, double x,
                   double v) {
  double fx = pg_eval(pg_dx(f), x, v);
  double fv = pg_eval(pg_dv(f), x, v);
  double a = 2.0 * fx + fv, b = fv;
  return 0.5 * (a + b) * (a + b) - 2.0 * a * b * pot.Vpp(x);
}

double k_eta(const Potential& pot, double eta) {
  if (eta >= 0.5) throw DomainError("k_eta: eta must be < 1/2");
  if (eta < -0.5) throw DomainError("k_eta: eta must be >= -1/2");
  double M = pot.hessian_bound;
  auto psd_for_all = [&](double K) {
    for (int i = 0; i <= 100; ++i) {
      double vpp = -M + 2.0 * M * i / 100.0;
      double off = 0.5 - vpp;
      double det = (0.5 - eta) * (0.5 + K) - off * off;
      if (0.5 - eta < 0.0 || 0.5 + K < 0.0 || det < -1e-15) return false;
    }
    return true;
  };
  if (!psd_for_all(100.0))
    throw DomainError("k_eta: no admissible K in [-1/2, 100]");
  if (psd_for_all(-0.5)) return -0.5;
  double lo = -0.5, hi = 100.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (psd_for_all(mid) ? hi : lo) = mid;
  }
  return hi;
}

double k_eta_closed(double hessian_bound, double eta) {
  if (eta >= 0.5) throw DomainError("k_eta_closed: eta must be < 1/2");
  double m = 0.5 + hessian_bound;
  return m * m / (0.5 - eta) - 0.5;
}

double gradient_k(const Potential& pot, double box) {
  double k = -0.5;
  const int N = 2001;
  for (int i = 0; i < N; ++i) {
    double x = -box + 2.0 * box * i / (N - 1.0);
    k = std::max(k, std::fabs(0.5 - pot.Vpp(x)) - 0.5);
  }
  return k;
}

double hypo_rate(double kappa, double K, double eta) {
  return 2.0 * eta * kappa / (kappa + K + eta);
}

double logsob_rate(double kappa, double K, double eta) {
  return 2.0 * eta * kappa / (kappa + 2.0 * (K + eta));
}

// ---- grid solver ----------------------------------------------------------

GridSolution grid_solve(const Potential& pot,
                        const std::function<double(double, double)>& f0,
                        double T, const PhaseGrid& g, int nsnap) {
  const int N = g.N;
  if (N < 8) throw DomainError("grid_solve: N too small");
  if (T <= 0.0) throw DomainError("grid_solve: T must be positive");
  nsnap = std::max(nsnap, 2);

  GridSolution sol;
  sol.xs.resize(N);
  sol.vs.resize(N);
  double dx = 2.0 * g.box / (N - 1);
  for (int i = 0; i < N; ++i) sol.xs[i] = -g.box + i * dx;
  sol.vs = sol.xs;
  const double dv = dx;

  sol.w.resize(N * N);
  double umax = 0.0;
  for (int i = 0; i < N; ++i) {
    umax = std::max({umax, std::fabs(sol.vs[i]), std::fabs(pot.Vp(sol.xs[i]))});
    for (int j = 0; j < N; ++j)
      sol.w[i * N + j] = std::exp(-pot.V(sol.xs[i]) - 0.5 * sol.vs[j] * sol.vs[j]);
  }

  double bound = std::min(0.5 * dx * dx, g.cfl * dx / umax);
  double dt = g.dt > 0.0 ? g.dt : bound;
  if (dt > bound * (1.0 + 1e-12))
    throw DomainError("grid_solve: dt exceeds the recorded stability bound");
  int nsteps = static_cast<int>(std::ceil(T / dt - 1e-12));
  dt = T / nsteps;
  sol.dt = dt;

  // implicit OU factor (I - dt * (1/m) d_v (m d_v .))
  std::vector<double> lo(N, 0.0), hi(N, 0.0);
  for (int j = 0; j < N; ++j) {
    double mj = std::exp(-0.5 * sol.vs[j] * sol.vs[j]);
    if (j + 1 < N) {
      double vm = 0.5 * (sol.vs[j] + sol.vs[j + 1]);
      hi[j] = std::exp(-0.5 * vm * vm) / (dv * dv * mj);
    }
    if (j > 0) {
      double vm = 0.5 * (sol.vs[j - 1] + sol.vs[j]);
      lo[j] = std::exp(-0.5 * vm * vm) / (dv * dv * mj);
    }
  }
  std::vector<double> sub(N - 1), diag(N), sup(N - 1);
  for (int j = 0; j < N; ++j) diag[j] = 1.0 + dt * (lo[j] + hi[j]);
  for (int j = 0; j < N - 1; ++j) {
    sup[j] = -dt * hi[j];
    sub[j] = -dt * lo[j + 1];
  }
  Tridiag ou;
  ou.factor(sub, diag, sup);

  // face weights of the conservative transport
  std::vector<double> wfx((N - 1) * N), wfv(N * (N - 1));
  for (int i = 0; i < N - 1; ++i) {
    double xm = 0.5 * (sol.xs[i] + sol.xs[i + 1]);
    for (int j = 0; j < N; ++j)
      wfx[i * N + j] = std::exp(-pot.V(xm) - 0.5 * sol.vs[j] * sol.vs[j]);
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N - 1; ++j) {
      double vm = 0.5 * (sol.vs[j] + sol.vs[j + 1]);
      wfv[i * (N - 1) + j] = std::exp(-pot.V(sol.xs[i]) - 0.5 * vm * vm);
    }

  auto transport = [&](const std::vector<double>& f, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < N - 1; ++i)
      for (int j = 0; j < N; ++j) {
        double sp = sol.vs[j];
        double up = sp > 0.0 ? f[i * N + j] : f[(i + 1) * N + j];
        double F = wfx[i * N + j] * sp * up;
        out[i * N + j] -= F / (dx * sol.w[i * N + j]);
        out[(i + 1) * N + j] += F / (dx * sol.w[(i + 1) * N + j]);
      }
    for (int i = 0; i < N; ++i) {
      double sp = -pot.Vp(sol.xs[i]);
      for (int j = 0; j < N - 1; ++j) {
        double up = sp > 0.0 ? f[i * N + j] : f[i * N + j + 1];
        double G = wfv[i * (N - 1) + j] * sp * up;
        out[i * N + j] -= G / (dv * sol.w[i * N + j]);
        out[i * N + j + 1] += G / (dv * sol.w[i * N + j + 1]);
      }
    }
  };

  // truncation of the rotating field leaves nonzero row sums at the open
  // boundary; subtracting f * (T 1) restores exact constant preservation and
  // with it the discrete maximum principle.
  std::vector<double> eps(N * N), ones(N * N, 1.0);
  transport(ones, eps);

  std::vector<double> f(N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) f[i * N + j] = f0(sol.xs[i], sol.vs[j]);

  double sup0 = 0.0;
  for (double x : f) sup0 = std::max(sup0, std::fabs(x));
  if (sup0 == 0.0) sup0 = 1.0;

  auto mass = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (int idx = 0; idx < N * N; ++idx) s += a[idx] * sol.w[idx];
    return s * dx * dv;
  };
  double m0 = mass(f);

  std::vector<int> snap_at(nsnap);
  for (int k = 0; k < nsnap; ++k)
    snap_at[k] = static_cast<int>(std::llround(
        static_cast<double>(k) * nsteps / (nsnap - 1)));
  int next = 0;
  auto record = [&](int step) {
    while (next < nsnap && snap_at[next] == step) {
      sol.snaps.push_back({step * dt, f});
      double m = mass(f);
      sol.mass_drift = std::max(
          sol.mass_drift, std::fabs(m - m0) / std::max(std::fabs(m0), 1e-300));
      double sup = 0.0;
      for (double x : f) sup = std::max(sup, std::fabs(x));
      sol.sup_ratio = std::max(sol.sup_ratio, sup / sup0);
      ++next;
    }
  };
  record(0);

  std::vector<double> tmp(N * N);
  for (int step = 1; step <= nsteps; ++step) {
    transport(f, tmp);
    for (int idx = 0; idx < N * N; ++idx)
      f[idx] += dt * (tmp[idx] - f[idx] * eps[idx]);
    for (int i = 0; i < N; ++i) ou.solve(&f[i * N]);
    if (step % 64 == 0) {
      double sup = 0.0;
      for (double x : f) sup = std::max(sup, std::fabs(x));
      if (sup > 3.0 * sup0)
        throw AccuracyError("grid_solve: instability detected (norm growth)");
    }
    record(step);
  }
  return sol;
}

double energy_functional(const GridSolution& sol, const std::vector<double>& f,
                         double c) {
  int N = static_cast<int>(sol.xs.size());
  double dx = sol.xs[1] - sol.xs[0], dv = dx;
  double total = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double fx, fv;
      if (i == 0)
        fx = (f[N + j] - f[j]) / dx;
      else if (i == N - 1)
        fx = (f[i * N + j] - f[(i - 1) * N + j]) / dx;
      else
        fx = (f[(i + 1) * N + j] - f[(i - 1) * N + j]) / (2.0 * dx);
      if (j == 0)
        fv = (f[i * N + 1] - f[i * N]) / dv;
      else if (j == N - 1)
        fv = (f[i * N + j] - f[i * N + j - 1]) / dv;
      else
        fv = (f[i * N + j + 1] - f[i * N + j - 1]) / (2.0 * dv);
      double a = 2.0 * fx + fv;
      double val = f[i * N + j];
      total += (c * val * val + a * a + fv * fv) * sol.w[i * N + j];
    }
  return total * dx * dv;
}

PoincareResult poincare_constant(const Potential& pot, int N, double box) {
  if (N < 8) throw DomainError("poincare_constant: N too small");
  const int dof = N * N;
  double dx = 2.0 * box / (N - 1), dv = dx;
  std::vector<double> xs(N);
  for (int i = 0; i < N; ++i) xs[i] = -box + i * dx;

  const double gp = 1.0 / std::sqrt(3.0);
  const double gauss[4][2] = {{-gp, -gp}, {gp, -gp}, {-gp, gp}, {gp, gp}};
  const double B[2][2] = {{4.0, 2.0}, {2.0, 2.0}};

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(16 * (N - 1) * (N - 1));
  Eigen::VectorXd md = Eigen::VectorXd::Zero(dof);

  for (int i = 0; i < N - 1; ++i)
    for (int j = 0; j < N - 1; ++j) {
      int nd[4] = {i * N + j, (i + 1) * N + j, i * N + j + 1,
                   (i + 1) * N + j + 1};
      double Ke[4][4] = {};
      double MeL[4] = {};
      for (const auto& q : gauss) {
        double p = q[0], r = q[1];
        double xg = xs[i] + 0.5 * (p + 1.0) * dx;
        double vg = xs[j] + 0.5 * (r + 1.0) * dv;
        double wq = std::exp(-pot.V(xg) - 0.5 * vg * vg) * dx * dv / 4.0;
        double sh[4] = {(1 - p) * (1 - r) / 4.0, (1 + p) * (1 - r) / 4.0,
                        (1 - p) * (1 + r) / 4.0, (1 + p) * (1 + r) / 4.0};
        double dpx[4] = {-(1 - r), (1 - r), -(1 + r), (1 + r)};
        double dqv[4] = {-(1 - p), -(1 + p), (1 - p), (1 + p)};
        for (int a = 0; a < 4; ++a) {
          dpx[a] *= 0.25 * 2.0 / dx;
          dqv[a] *= 0.25 * 2.0 / dv;
        }
        for (int a = 0; a < 4; ++a) {
          MeL[a] += wq * sh[a];
          for (int b = 0; b < 4; ++b) {
            double gx = B[0][0] * dpx[b] + B[0][1] * dqv[b];
            double gv = B[1][0] * dpx[b] + B[1][1] * dqv[b];
            Ke[a][b] += wq * (dpx[a] * gx + dqv[a] * gv);
          }
        }
      }
      for (int a = 0; a < 4; ++a) {
        md[nd[a]] += MeL[a];
        for (int b = 0; b < 4; ++b)
          trip.emplace_back(nd[a], nd[b], Ke[a][b]);
      }
    }

  Eigen::SparseMatrix<double> A(dof, dof);
  A.setFromTriplets(trip.begin(), trip.end());

  Eigen::SparseMatrix<double> S = A;
  for (int k = 0; k < dof; ++k) S.coeffRef(k, k) += 1e-12 * md[k];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(S);
  if (chol.info() != Eigen::Success)
    throw AccuracyError("poincare_constant: factorization failed");

  double total_mass = md.sum();
  Eigen::VectorXd q(dof);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) q[i * N + j] = std::sin(xs[i]);
  q -= Eigen::VectorXd::Constant(dof, q.dot(md) / total_mass);
  q /= std::sqrt(q.cwiseProduct(q).dot(md));

  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd y = chol.solve(md.cwiseProduct(q));
    y -= Eigen::VectorXd::Constant(dof, y.dot(md) / total_mass);
    y /= std::sqrt(y.cwiseProduct(y).dot(md));
    q = y;
  }
  Eigen::VectorXd Aq = A * q;
  double kappa = q.dot(Aq);  // q is M-normalized
  Eigen::VectorXd resid = Aq - kappa * md.cwiseProduct(q);
  PoincareResult out;
  out.kappa = kappa;
  out.residual = resid.norm() / md.cwiseProduct(q).norm();
  return out;
}

LogSobEstimate logsob_constant(const Potential& pot, int N, double box) {
  double c0 = pot.Vpp(0.0);
  for (double x : {-3.0, -1.0, 0.7, 2.5})
    if (std::fabs(pot.Vpp(x) - c0) > 1e-10)
      throw UnsupportedError(
          "logsob_constant: implemented for quadratic potentials only");
  if (c0 <= 0.0) throw DomainError("logsob_constant: V'' must be positive");

  // Gaussian tilt family f = exp(a <u, (x,v)> / 2): the entropy-to-energy
  // ratio is independent of a, so the constant is the minimum over the
  // direction u of (u' B u)/(u' Sigma u), Sigma = Cov(mu).
  const double B[2][2] = {{4.0, 2.0}, {2.0, 2.0}};
  double sxx = 1.0 / c0, svv = 1.0;
  auto ratio = [&](double phi) {
    double u0 = std::cos(phi), u1 = std::sin(phi);
    double num = B[0][0] * u0 * u0 + 2.0 * B[0][1] * u0 * u1 + B[1][1] * u1 * u1;
    double den = sxx * u0 * u0 + svv * u1 * u1;
    return num / den;
  };
  double phi_min = golden_min(ratio, 0.0, PI, 1e-12);
  double kls = ratio(phi_min);

  // grid certification: Ent_mu(f^2) <= (2/kls) int Gamma(f) dmu for a test
  // battery with analytic gradients
  double dx = 2.0 * box / (N - 1);
  std::vector<double> xs(N);
  for (int i = 0; i < N; ++i) xs[i] = -box + i * dx;

  struct TestFn {
    std::function<double(double, double)> f, fx, fv;
  };
  std::vector<TestFn> battery;
  for (double a : {0.5, 1.0})
    for (double phi : {0.0, PI / 4.0, PI / 2.0, phi_min}) {
      double u0 = std::cos(phi), u1 = std::sin(phi);
      battery.push_back(
          {[=](double x, double v) { return std::exp(0.5 * a * (u0 * x + u1 * v)); },
           [=](double x, double v) {
             return 0.5 * a * u0 * std::exp(0.5 * a * (u0 * x + u1 * v));
           },
           [=](double x, double v) {
             return 0.5 * a * u1 * std::exp(0.5 * a * (u0 * x + u1 * v));
           }});
    }
  battery.push_back({[](double x, double) { return 1.0 + 0.3 * std::sin(x); },
                     [](double x, double) { return 0.3 * std::cos(x); },
                     [](double, double) { return 0.0; }});
  battery.push_back(
      {[](double x, double v) { return 1.0 + 0.2 * x * std::exp(-v * v); },
       [](double, double v) { return 0.2 * std::exp(-v * v); },
       [](double x, double v) { return -0.4 * x * v * std::exp(-v * v); }});

  double margin = std::numeric_limits<double>::infinity();
  for (const auto& tf : battery) {
    double Z = 0.0, m2 = 0.0, ent = 0.0, en = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double x = xs[i], v = xs[j];
        double w = std::exp(-pot.V(x) - 0.5 * v * v) * dx * dx;
        double fv = tf.f(x, v), gx = tf.fx(x, v), gv = tf.fv(x, v);
        double a2 = 2.0 * gx + gv;
        Z += w;
        m2 += fv * fv * w;
        ent += fv * fv * std::log(fv * fv) * w;
        en += (a2 * a2 + gv * gv) * w;
      }
    m2 /= Z;
    ent = ent / Z - m2 * std::log(m2);
    en /= Z;
    margin = std::min(margin, (2.0 / kls) * en - ent);
  }
  return {kls, margin};
}

DecayReport hypocoercive_decay(const Potential& pot, double eta, double T,
                               const PhaseGrid& g, DecayMode mode,
                               int nsnap) {
  DecayReport rep;
  rep.eta = eta;
  rep.K = k_eta(pot, eta);

  if (mode == DecayMode::Poincare) {
    PoincareResult pc = poincare_constant(pot, g.N, g.box);
    rep.kappa = pc.kappa;
    rep.predicted_rate = hypo_rate(pc.kappa, rep.K, eta);
  } else {
    LogSobEstimate ls = logsob_constant(pot, std::min(g.N, 96), g.box);
    rep.kappa = ls.kappa_ls;
    rep.predicted_rate = logsob_rate(ls.kappa_ls, rep.K, eta);
  }

  auto f0 = [mode](double x, double v) {
    double base = std::sin(x) * std::exp(-v * v);
    return mode == DecayMode::Poincare ? base : 1.0 + 0.5 * base;
  };
  GridSolution sol = grid_solve(pot, f0, T, g, nsnap);

  double c = rep.K + eta;
  int N = g.N;
  double dx = sol.xs[1] - sol.xs[0];
  double Zw = 0.0;
  for (double w : sol.w) Zw += w;
  Zw *= dx * dx;

  for (const auto& sn : sol.snaps) {
    double F;
    if (mode == DecayMode::Poincare) {
      F = energy_functional(sol, sn.f, c);
    } else {
      // normalize to a density against mu, then entropy + twisted Fisher
      double m = 0.0;
      for (int idx = 0; idx < N * N; ++idx) m += sn.f[idx] * sol.w[idx];
      m = m * dx * dx / Zw;
      double ent = 0.0, fisher = 0.0;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double h = sn.f[i * N + j] / m;
          if (h < 1e-300) continue;
          double hx, hv;
          if (i == 0)
            hx = (sn.f[N + j] - sn.f[j]) / dx;
          else if (i == N - 1)
            hx = (sn.f[i * N + j] - sn.f[(i - 1) * N + j]) / dx;
          else
            hx = (sn.f[(i + 1) * N + j] - sn.f[(i - 1) * N + j]) / (2.0 * dx);
          if (j == 0)
            hv = (sn.f[i * N + 1] - sn.f[i * N]) / dx;
          else if (j == N - 1)
            hv = (sn.f[i * N + j] - sn.f[i * N + j - 1]) / dx;
          else
            hv = (sn.f[i * N + j + 1] - sn.f[i * N + j - 1]) / (2.0 * dx);
          hx /= m;
          hv /= m;
          double a = 2.0 * hx + hv;
          double w = sol.w[i * N + j] * dx * dx / Zw;
          ent += h * std::log(h) * w;
          fisher += (a * a + hv * hv) / h * w;
        }
      F = 2.0 * c * ent + fisher;
    }
    rep.ts.push_back(sn.t);
    rep.Fs.push_back(F);
  }

  rep.monotone = true;
  for (size_t k = 1; k < rep.Fs.size(); ++k)
    if (rep.Fs[k] > rep.Fs[k - 1] * (1.0 + 1e-12)) rep.monotone = false;

  std::vector<double> lt, lf;
  for (size_t k = 0; k < rep.Fs.size(); ++k)
    if (rep.Fs[k] > 1e-280) {
      lt.push_back(rep.ts[k]);
      lf.push_back(std::log(rep.Fs[k]));
    }
  rep.fitted_rate = -fit_line(lt, lf).first;
  return rep;
}

GradBoundReport gradient_bound_check(const Potential& pot, double t,
                                     const PhaseGrid& g, double K_shift) {
  GradBoundReport rep;
  rep.K = gradient_k(pot, g.box) + K_shift;
  auto f0 = [](double x, double v) { return std::sin(x) * std::exp(-v * v); };
  auto h0 = [](double x, double v) {
    double e = std::exp(-v * v);
    double fx = std::cos(x) * e;
    double fv = -2.0 * v * std::sin(x) * e;
    double a = 2.0 * fx + fv;
    return a * a + fv * fv;
  };
  GridSolution fs = grid_solve(pot, f0, t, g, 2);
  GridSolution hs = grid_solve(pot, h0, t, g, 2);
  const std::vector<double>& fT = fs.snaps.back().f;
  const std::vector<double>& hT = hs.snaps.back().f;
  int N = g.N, mg = rep.margin;
  double dx = fs.xs[1] - fs.xs[0];
  double amp = std::exp(2.0 * rep.K * t);
  rep.min_interior_slack = std::numeric_limits<double>::infinity();
  for (int i = mg; i < N - mg; ++i)
    for (int j = mg; j < N - mg; ++j) {
      double fx = (fT[(i + 1) * N + j] - fT[(i - 1) * N + j]) / (2.0 * dx);
      double fv = (fT[i * N + j + 1] - fT[i * N + j - 1]) / (2.0 * dx);
      double a = 2.0 * fx + fv;
      double rhs = amp * hT[i * N + j];
      rep.scale = std::max(rep.scale, rhs);
      rep.min_interior_slack =
          std::min(rep.min_interior_slack, rhs - (a * a + fv * fv));
    }
  return rep;
}

LyapunovReport lyapunov_check(const Potential& pot, double box, int N) {
  LyapunovReport rep;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double x = -box + 2.0 * box * i / (N - 1.0);
      double v = -box + 2.0 * box * j / (N - 1.0);
      double W = 1.0 + x * x + v * v;
      double lw = 2.0 - 2.0 * v * v + 2.0 * v * pot.Vp(x) - 2.0 * x * v;
      double a = 4.0 * x + 2.0 * v;
      double gw = std::sqrt(a * a + 4.0 * v * v);
      rep.c_drift = std::max(rep.c_drift, lw / W);
      rep.c_grad = std::max(rep.c_grad, gw / W);
    }
  return rep;
}

}  // namespace hypolab::kfp
