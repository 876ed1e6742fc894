#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "hypolab/model_spaces.hpp"
#include "hypolab/specfun.hpp"
#include "hypolab/spectral_bounds.hpp"

using namespace hypolab;

namespace {

long long hopf_lambda(int n, int m, int k) {
  return 4LL * m * (m + k + n) + 2LL * k * n;
}
long long quat_lambda(int n, int k, int m) {
  return 4LL * k * (k + 2 * n + m + 1) + 4LL * n * m;
}

std::vector<long long> brute_levels(const ModelSpace& ms, int count) {
  std::set<long long> vals;
  for (int a = 0; a <= 80; ++a)
    for (int b = 0; b <= 80; ++b)
      vals.insert(ms.kind == ModelKind::Hopf ? hopf_lambda(ms.n, a, b)
                                             : quat_lambda(ms.n, a, b));
  std::vector<long long> out(vals.begin(), vals.end());
  out.resize(count);
  return out;
}

// Chebyshev U_m(cos eta) without trig division (stable at eta = 0, pi).
double cheb_u(int m, double x) {
  double a = 1.0, b = 2.0 * x;
  if (m == 0) return a;
  for (int j = 2; j <= m; ++j) {
    double c = 2.0 * x * b - a;
    a = b;
    b = c;
  }
  return b;
}

}  // namespace

TEST_CASE("spectrum enumeration matches brute force with valid witnesses") {
  for (int n : {1, 2}) {
    ModelSpace ms{ModelKind::Hopf, n};
    auto spec = enumerate_spectrum(ms, 20);
    auto brute = brute_levels(ms, 20);
    REQUIRE(spec.size() == 20);
    for (int i = 0; i < 20; ++i) {
      CHECK(spec[i].eigenvalue == brute[i]);
      CHECK(hopf_lambda(n, spec[i].m, spec[i].k) == spec[i].eigenvalue);
    }
    CHECK(spec[0].eigenvalue == 0);
    CHECK(spec[1].eigenvalue == first_eigenvalue(ms));
  }
  ModelSpace qs{ModelKind::QuaternionicHopf, 1};
  auto spec = enumerate_spectrum(qs, 20);
  auto brute = brute_levels(qs, 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(spec[i].eigenvalue == brute[i]);
    CHECK(quat_lambda(1, spec[i].k, spec[i].m) == spec[i].eigenvalue);
  }
  CHECK_THROWS_AS(enumerate_spectrum(ModelSpace{ModelKind::Heisenberg, 1}, 5),
                  UnsupportedError);
  CHECK_THROWS_AS(first_eigenvalue(ModelSpace{ModelKind::Heisenberg, 1}),
                  UnsupportedError);
}

TEST_CASE("first eigenvalues") {
  for (int n : {1, 2, 3}) {
    CHECK(first_eigenvalue(ModelSpace{ModelKind::Hopf, n}) == 2 * n);
    CHECK(first_eigenvalue(ModelSpace{ModelKind::QuaternionicHopf, n}) ==
          4 * n);
  }
}

TEST_CASE("hopf eigenfunctions under the radial operator") {
  const int n = 1;
  ModelSpace ms{ModelKind::Hopf, n};
  RadialOperator op = radial_operator(ms);
  for (int m = 0; m <= 5; ++m)
    for (int k = 0; k <= 5; ++k) {
      auto phi = [&](double r, double th) {
        return std::pow(std::cos(r), k) * specfun::jacobi_p(m, n - 1, k, std::cos(2 * r)) *
               std::cos(k * th);
      };
      double lam = static_cast<double>(hopf_lambda(n, m, k));
      for (double r : {0.45, 0.9})
        for (double th : {0.3, 1.1}) {
          double lhs = apply_radial(op, phi, r, th);
          double rhs = -lam * phi(r, th);
          CHECK(std::fabs(lhs - rhs) < 1e-7 * std::max(1.0, std::fabs(rhs)));
        }
    }
}

TEST_CASE("quaternionic eigenfunctions under the radial operator") {
  const int n = 1;
  ModelSpace ms{ModelKind::QuaternionicHopf, n};
  RadialOperator op = radial_operator(ms);
  for (int k = 0; k <= 3; ++k)
    for (int m = 0; m <= 3; ++m) {
      auto phi = [&](double r, double eta) {
        return std::pow(std::cos(r), m) *
               specfun::jacobi_p(k, 2 * n - 1, m + 1, std::cos(2 * r)) *
               cheb_u(m, std::cos(eta));
      };
      double lam = static_cast<double>(quat_lambda(n, k, m));
      for (double r : {0.5, 0.8})
        for (double eta : {0.7, 1.9}) {
          double lhs = apply_radial(op, phi, r, eta);
          double rhs = -lam * phi(r, eta);
          CHECK(std::fabs(lhs - rhs) < 1e-7 * std::max(1.0, std::fabs(rhs)));
        }
    }
  CHECK(quat_lambda(1, 0, 1) == 4);
  CHECK(quat_lambda(1, 1, 1) == 24);
}

TEST_CASE("lichnerowicz bound in exact arithmetic") {
  for (int d = 1; d <= 6; ++d) {
    CurvatureConstants hopf =
        curvature_constants(ModelSpace{ModelKind::Hopf, d},
                            Convention::LichnerowiczFullTrace);
    CHECK(lichnerowicz_bound(hopf) == Rational(2 * d, 1));
    CurvatureConstants quat =
        curvature_constants(ModelSpace{ModelKind::QuaternionicHopf, d},
                            Convention::LichnerowiczFullTrace);
    CHECK(lichnerowicz_bound(quat) == Rational(d, 1));
  }
}

TEST_CASE("sharpness table: complex fibration sharp, quaternionic not") {
  auto hopf = sharpness_table(ModelKind::Hopf, 1, 5);
  REQUIRE(hopf.size() == 5);
  for (const auto& row : hopf) {
    CHECK(row.bound == Rational(2 * row.d, 1));
    CHECK(row.lambda1 == 2 * row.d);
    CHECK(row.sharp);
  }
  auto quat = sharpness_table(ModelKind::QuaternionicHopf, 1, 5);
  REQUIRE(quat.size() == 5);
  for (const auto& row : quat) {
    CHECK(row.bound == Rational(row.d, 1));
    CHECK(row.lambda1 == 4 * row.d);
    CHECK_FALSE(row.sharp);  // the bound underestimates the true gap 4d
  }
}

TEST_CASE("spectral gap recovered from the kernel's long-time decay") {
  double g = hopf_gap_logderiv(1, 5.0, 0.5, 0.8);
  CHECK(g == doctest::Approx(2.0).epsilon(0.01));
  double g2 = hopf_gap_logderiv(2, 4.0, 0.4, 0.6);
  CHECK(g2 == doctest::Approx(4.0).epsilon(0.01));
}
