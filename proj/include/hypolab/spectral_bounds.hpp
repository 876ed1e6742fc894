#pragma once

#include <vector>

#include "hypolab/model_spaces.hpp"
#include "hypolab/numerics.hpp"

namespace hypolab {

struct SpectrumEntry {
  long long eigenvalue = 0;
  int m = 0, k = 0;  // witness indices in the two-parameter family
};

// First `count` distinct eigenvalues (including 0) of minus the horizontal
// Laplacian, ascending, with a witness index pair each.  The Heisenberg
// group has continuous spectrum and is rejected.
std::vector<SpectrumEntry> enumerate_spectrum(const ModelSpace& m, int count);

long long first_eigenvalue(const ModelSpace& m);

// rho1 / (1 - 1/n_h + 3 kappa / rho2), exact.
Rational lichnerowicz_bound(const CurvatureConstants& cc);

struct SharpnessRow {
  int d = 0;
  Rational bound;
  long long lambda1 = 0;
  bool sharp = false;
};
std::vector<SharpnessRow> sharpness_table(ModelKind kind, int dmin, int dmax);

// -d/dt log(p_t(r,theta) - 1/vol) at large t estimates the spectral gap
// from the kernel itself.
double hopf_gap_logderiv(int n, double t, double r, double theta);

}  // namespace hypolab
