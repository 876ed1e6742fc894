#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypolab {

inline constexpr double PI = 3.14159265358979323846;

// Error taxonomy.  Everything numerical that can go wrong maps onto one of
// these four, so callers can distinguish "you asked for something outside the
// chart" from "the scheme could not reach the requested accuracy".
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConventionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// value = mant * exp(logs).  Used wherever a recurrence or a series would
// overflow double range long before it loses accuracy.
struct Scaled {
  double mant = 0.0;
  double logs = 0.0;
  double value() const { return mant == 0.0 ? 0.0 : mant * std::exp(logs); }
  double log_abs() const;
};

struct Quadrature {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
// Cached per n, thread-safe.
const Quadrature& gauss_legendre(int n);

// Gauss-Chebyshev (second kind): integrates f(x) sqrt(1-x^2) dx on [-1,1]
// exactly for polynomials f of degree <= 2n-1.
Quadrature gauss_chebyshev2(int n);

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

// Prefactored tridiagonal LU (Thomas, no pivoting — callers supply
// diagonally dominant systems).
class Tridiag {
 public:
  // lo has n-1 entries (subdiagonal), di n entries, hi n-1 entries.
  void factor(const std::vector<double>& lo, const std::vector<double>& di,
              const std::vector<double>& hi);
  void solve(double* rhs) const;  // in place, length n
  int size() const { return static_cast<int>(d_.size()); }

 private:
  std::vector<double> l_, d_, u_;
};

// least squares line fit, returns {slope, intercept}
std::pair<double, double> fit_line(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-10);

// bisection for the largest x in [lo,hi] with pred(x) true, assuming pred is
// monotone (true then false).  Throws DomainError if pred(lo) is false.
double bisect_sup(const std::function<bool(double)>& pred, double lo,
                  double hi, double tol = 1e-12);

// Exact rational arithmetic on int64 with gcd normalization; overflow on the
// intended inputs (small curvature constants) is not reachable.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

// Deterministic uniforms: mt19937_64 (sequence pinned by the standard) with
// a fixed 53-bit mantissa mapping, so seeded batteries reproduce bit-for-bit
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uni(double a, double b) {
    return a + (b - a) * ((g_() >> 11) * 0x1.0p-53);
  }
  int below(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 g_;
};

// Number of worker threads: HYPOLAB_THREADS if set, else hardware count.
int worker_threads();

// Deterministic parallel map: fn(i) for i in [0,n).  Results must be written
// to per-index slots by the caller; the schedule never affects values.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hypolab
