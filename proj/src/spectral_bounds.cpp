#include "hypolab/spectral_bounds.hpp"

#include <cmath>
#include <map>

#include "hypolab/heat_kernels.hpp"

namespace hypolab {

std::vector<SpectrumEntry> enumerate_spectrum(const ModelSpace& ms, int count) {
  if (count < 1) throw DomainError("enumerate_spectrum: count must be >= 1");
  if (ms.kind == ModelKind::Heisenberg)
    throw UnsupportedError(
        "enumerate_spectrum: the Heisenberg horizontal Laplacian has "
        "continuous spectrum");
  long long n = ms.n;
  int cap = 4 * (count + static_cast<int>(n) + 4);
  std::map<long long, std::pair<int, int>> found;
  for (int m = 0; m <= cap; ++m)
    for (int k = 0; k <= cap; ++k) {
      long long lam;
      if (ms.kind == ModelKind::Hopf)
        lam = 4LL * m * (m + k + n) + 2LL * k * n;
      else
        lam = 4LL * k * (k + 2 * n + m + 1) + 4LL * n * m;
      found.emplace(lam, std::make_pair(m, k));
    }
  std::vector<SpectrumEntry> out;
  for (const auto& [lam, wit] : found) {
    out.push_back({lam, wit.first, wit.second});
    if (static_cast<int>(out.size()) == count) break;
  }
  return out;
}

long long first_eigenvalue(const ModelSpace& ms) {
  return enumerate_spectrum(ms, 2)[1].eigenvalue;
}

Rational lichnerowicz_bound(const CurvatureConstants& cc) {
  if (cc.n_h < 2) throw DomainError("lichnerowicz_bound: n_h must be >= 2");
  Rational denom = Rational(1) - Rational(1, cc.n_h) +
                   Rational(3) * cc.kappa / cc.rho2;
  return cc.rho1 / denom;
}

std::vector<SharpnessRow> sharpness_table(ModelKind kind, int dmin, int dmax) {
  if (kind == ModelKind::Heisenberg)
    throw UnsupportedError("sharpness_table: fibration models only");
  if (dmin < 1 || dmax < dmin)
    throw DomainError("sharpness_table: bad d range");
  std::vector<SharpnessRow> rows;
  for (int d = dmin; d <= dmax; ++d) {
    ModelSpace ms{kind, d};
    SharpnessRow row;
    row.d = d;
    row.bound = lichnerowicz_bound(
        curvature_constants(ms, Convention::LichnerowiczFullTrace));
    row.lambda1 = first_eigenvalue(ms);
    row.sharp = row.bound == Rational(row.lambda1);
    rows.push_back(row);
  }
  return rows;
}

double hopf_gap_logderiv(int n, double t, double r, double theta) {
  double vol = 2.0 * std::pow(PI, n + 1) / std::tgamma(n + 1.0);
  auto g = [&](double tt) {
    return std::log(hopf_kernel_series(n, tt, r, theta).value - 1.0 / vol);
  };
  double h = 0.02 * t;
  double d = (-g(t + 2 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2 * h)) /
             (12.0 * h);
  return -d;
}

}  // namespace hypolab
