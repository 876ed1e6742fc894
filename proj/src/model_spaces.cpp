#include "hypolab/model_spaces.hpp"

#include <cmath>
#include <limits>

namespace hypolab {

RadialOperator radial_operator(const ModelSpace& m) {
  RadialOperator op;
  int n = m.n;
  if (n < 1) throw DomainError("radial_operator: n must be >= 1");
  switch (m.kind) {
    case ModelKind::Heisenberg:
      op.a = [n](double r) { return (2.0 * n - 1.0) / r; };
      op.b = [](double r) { return r * r; };
      op.fiber = FiberOp::Dzz;
      op.r_min = 0.0;
      op.r_max = std::numeric_limits<double>::infinity();
      break;
    case ModelKind::Hopf:
      op.a = [n](double r) { return (2.0 * n - 1.0) / std::tan(r) - std::tan(r); };
      op.b = [](double r) { return std::tan(r) * std::tan(r); };
      op.fiber = FiberOp::Dthetatheta;
      op.r_min = 0.0;
      op.r_max = PI / 2.0;
      break;
    case ModelKind::QuaternionicHopf:
      op.a = [n](double r) { return (4.0 * n - 1.0) / std::tan(r) - 3.0 * std::tan(r); };
      op.b = [](double r) { return std::tan(r) * std::tan(r); };
      op.fiber = FiberOp::DetaSphere;
      op.r_min = 0.0;
      op.r_max = PI / 2.0;
      break;
  }
  return op;
}

double apply_radial(const RadialOperator& op,
                    const std::function<double(double, double)>& f, double r,
                    double fiber) {
  double hr = std::max(1e-4, 1e-3 * std::fabs(r));
  double hf = std::max(1e-4, 1e-3 * std::fabs(fiber));
  if (r - 2.0 * hr <= op.r_min || r + 2.0 * hr >= op.r_max)
    throw DomainError("apply_radial: r too close to the chart boundary");

  auto d1 = [](double fm2, double fm1, double fp1, double fp2, double h) {
    return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  };
  auto d2 = [](double fm2, double fm1, double f0, double fp1, double fp2,
               double h) {
    return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
  };

  double f0 = f(r, fiber);
  double frm2 = f(r - 2 * hr, fiber), frm1 = f(r - hr, fiber);
  double frp1 = f(r + hr, fiber), frp2 = f(r + 2 * hr, fiber);
  double fr = d1(frm2, frm1, frp1, frp2, hr);
  double frr = d2(frm2, frm1, f0, frp1, frp2, hr);

  double ffm2 = f(r, fiber - 2 * hf), ffm1 = f(r, fiber - hf);
  double ffp1 = f(r, fiber + hf), ffp2 = f(r, fiber + 2 * hf);
  double d2f = d2(ffm2, ffm1, f0, ffp1, ffp2, hf);

  double fib = 0.0;
  switch (op.fiber) {
    case FiberOp::Dzz:
    case FiberOp::Dthetatheta:
      fib = d2f;
      break;
    case FiberOp::DetaSphere: {
      double d1f = d1(ffm2, ffm1, ffp1, ffp2, hf);
      fib = d2f + 2.0 / std::tan(fiber) * d1f;
      break;
    }
  }
  return frr + op.a(r) * fr + op.b(r) * fib;
}

double measure_density(const ModelSpace& m, double r, double fiber) {
  int n = m.n;
  switch (m.kind) {
    case ModelKind::Heisenberg:
      // cylindrical measure r^{2n-1} dr dz with the sphere factor included
      return 2.0 * std::pow(PI, n) / std::tgamma(static_cast<double>(n)) *
             std::pow(r, 2 * n - 1);
    case ModelKind::Hopf:
      // r in (0, pi/2), theta in (-pi, pi); total mass = vol(S^{2n+1})
      return 2.0 * std::pow(PI, n) / std::tgamma(static_cast<double>(n)) *
             std::pow(std::sin(r), 2 * n - 1) * std::cos(r);
    case ModelKind::QuaternionicHopf:
      // r in (0, pi/2), eta in (0, pi); total mass = vol(S^{4n+3})
      return 8.0 * std::pow(PI, 2 * n + 1) /
             std::tgamma(2.0 * static_cast<double>(n)) *
             std::pow(std::sin(r), 4 * n - 1) * std::pow(std::cos(r), 3) *
             std::sin(fiber) * std::sin(fiber);
  }
  throw DomainError("measure_density: unknown model");
}

namespace {

int heis_nvars(int n) { return 2 * n + 1; }

void check_heis(int n, const Poly& f) {
  if (n < 1) throw DomainError("heisenberg calculus: n must be >= 1");
  if (f.nvars() != heis_nvars(n))
    throw DomainError("heisenberg calculus: polynomial has wrong arity");
}

}  // namespace

Poly heis_x(int n, int i, const Poly& f) {
  check_heis(n, f);
  Poly yi = Poly::var(f.nvars(), n + i);
  return f.diff(i) - yi * f.diff(2 * n);
}

Poly heis_y(int n, int i, const Poly& f) {
  check_heis(n, f);
  Poly xi = Poly::var(f.nvars(), i);
  return f.diff(n + i) + xi * f.diff(2 * n);
}

Poly heis_z(int n, const Poly& f) {
  check_heis(n, f);
  return f.diff(2 * n);
}

Poly heis_delta_h(int n, const Poly& f) {
  check_heis(n, f);
  Poly s(f.nvars());
  for (int i = 0; i < n; ++i)
    s = s + heis_x(n, i, heis_x(n, i, f)) + heis_y(n, i, heis_y(n, i, f));
  return s;
}

Poly heis_gamma(int n, const Poly& f, const Poly& g) {
  check_heis(n, f);
  check_heis(n, g);
  Poly s(f.nvars());
  for (int i = 0; i < n; ++i)
    s = s + heis_x(n, i, f) * heis_x(n, i, g) +
        heis_y(n, i, f) * heis_y(n, i, g);
  return s;
}

Poly heis_gamma_v(int n, const Poly& f, const Poly& g) {
  check_heis(n, f);
  check_heis(n, g);
  return heis_z(n, f) * heis_z(n, g);
}

Poly heis_gamma2(int n, const Poly& f) {
  Poly lf = heis_delta_h(n, f);
  return (heis_delta_h(n, heis_gamma(n, f, f)) - 2.0 * heis_gamma(n, f, lf)) *
         0.5;
}

Poly heis_gamma2_v(int n, const Poly& f) {
  Poly lf = heis_delta_h(n, f);
  return (heis_delta_h(n, heis_gamma_v(n, f, f)) -
          2.0 * heis_gamma_v(n, f, lf)) *
         0.5;
}

double commutation_residual(int n, const Poly& f) {
  Poly res = heis_delta_h(n, heis_z(n, f)) - heis_z(n, heis_delta_h(n, f));
  return res.max_abs_coeff();
}

double gamma_exchange_residual(int n, const Poly& f) {
  Poly res = heis_gamma(n, f, heis_gamma_v(n, f, f)) -
             heis_gamma_v(n, f, heis_gamma(n, f, f));
  return res.max_abs_coeff();
}

namespace {

// Horizontal frame as an index: a < n -> X_a, else Y_{a-n}.
Poly heis_frame(int n, int a, const Poly& f) {
  return a < n ? heis_x(n, a, f) : heis_y(n, a - n, f);
}

CurvatureConstants heisenberg_constants(int n) {
  // <J_Z e_a, e_b> = g_V(Z, -[e_a,e_b]_V); brackets are read off by letting
  // the commutator act on the coordinate z.
  int nh = 2 * n;
  Poly zc = Poly::var(heis_nvars(n), 2 * n);
  std::vector<std::vector<long long>> J(nh, std::vector<long long>(nh, 0));
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) {
      Poly br = heis_frame(n, a, heis_frame(n, b, zc)) -
                heis_frame(n, b, heis_frame(n, a, zc));
      if (!br.is_zero()) {
        double v = br.eval(std::vector<double>(heis_nvars(n), 0.0));
        J[b][a] = -static_cast<long long>(std::llround(v));
      }
    }
  // verify skewness and J^2 = -kappa Id
  long long kappa = 0;
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) {
      if (J[a][b] != -J[b][a])
        throw ConventionError("heisenberg_constants: J not skew-symmetric");
      long long s = 0;
      for (int c = 0; c < nh; ++c) s += J[a][c] * J[c][b];
      if (a == b) {
        if (kappa == 0) kappa = -s;
        if (-s != kappa)
          throw ConventionError("heisenberg_constants: J^2 not scalar");
      } else if (s != 0) {
        throw ConventionError("heisenberg_constants: J^2 not scalar");
      }
    }
  long long frob = 0;
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) frob += J[a][b] * J[a][b];
  CurvatureConstants cc;
  cc.rho1 = Rational(0);  // flat horizontal Ricci on the Heisenberg group
  cc.kappa = Rational(kappa);
  cc.rho2 = Rational(frob, 4);
  cc.n_h = nh;
  cc.convention = Convention::CDQuarterTrace;
  return cc;
}

}  // namespace

CurvatureConstants curvature_constants(const ModelSpace& m, Convention conv) {
  if (m.kind == ModelKind::Heisenberg) {
    if (conv != Convention::CDQuarterTrace)
      throw ConventionError(
          "curvature_constants: Heisenberg is tabulated in the quarter-trace "
          "convention only");
    return heisenberg_constants(m.n);
  }
  if (conv != Convention::LichnerowiczFullTrace)
    throw ConventionError(
        "curvature_constants: fibrations are tabulated in the full-trace "
        "convention only");
  long long d = m.n;
  CurvatureConstants cc;
  cc.convention = conv;
  if (m.kind == ModelKind::Hopf) {
    cc.rho1 = Rational(2 * (d + 1));
    cc.kappa = Rational(1);
    cc.rho2 = Rational(2 * d);
    cc.n_h = static_cast<int>(2 * d);
  } else {
    cc.rho1 = Rational(d + 2);
    cc.kappa = Rational(3);
    cc.rho2 = Rational(4 * d);
    cc.n_h = static_cast<int>(4 * d);
  }
  return cc;
}

}  // namespace hypolab
