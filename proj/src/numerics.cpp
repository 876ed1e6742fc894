#include "hypolab/numerics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace hypolab {

double Scaled::log_abs() const {
  if (mant == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mant)) + logs;
}

namespace {

Quadrature compute_gl(int n) {
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-ish initial guess, then Newton on P_n.
    double x = std::cos(PI * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    q.x[n - 1 - i] = x;
    q.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

}  // namespace

const Quadrature& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

Quadrature gauss_chebyshev2(int n) {
  if (n < 1) throw DomainError("gauss_chebyshev2: n must be positive");
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  for (int j = 1; j <= n; ++j) {
    double th = j * PI / (n + 1);
    q.x[j - 1] = std::cos(th);
    q.w[j - 1] = PI / (n + 1) * std::sin(th) * std::sin(th);
  }
  return q;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0) throw AccuracyError("adaptive_simpson: max depth reached");
  if (std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

void Tridiag::factor(const std::vector<double>& lo,
                     const std::vector<double>& di,
                     const std::vector<double>& hi) {
  int n = static_cast<int>(di.size());
  if (static_cast<int>(lo.size()) != n - 1 || static_cast<int>(hi.size()) != n - 1)
    throw DomainError("Tridiag: band sizes inconsistent");
  l_.assign(n, 0.0);
  d_ = di;
  u_ = hi;
  for (int i = 1; i < n; ++i) {
    if (d_[i - 1] == 0.0) throw AccuracyError("Tridiag: zero pivot");
    l_[i] = lo[i - 1] / d_[i - 1];
    d_[i] -= l_[i] * u_[i - 1];
  }
}

void Tridiag::solve(double* rhs) const {
  int n = size();
  for (int i = 1; i < n; ++i) rhs[i] -= l_[i] * rhs[i - 1];
  rhs[n - 1] /= d_[n - 1];
  for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - u_[i] * rhs[i + 1]) / d_[i];
}

std::pair<double, double> fit_line(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DomainError("fit_line: need >= 2 points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double icpt = (sy - slope * sx) / n;
  return {slope, icpt};
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double bisect_sup(const std::function<bool(double)>& pred, double lo,
                  double hi, double tol) {
  if (!pred(lo)) throw DomainError("bisect_sup: predicate false at lower end");
  if (pred(hi)) return hi;
  while (hi - lo > tol) {
    double m = 0.5 * (lo + hi);
    if (pred(m))
      lo = m;
    else
      hi = m;
  }
  return lo;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw DomainError("Rational: division by zero");
  return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}
std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

int worker_threads() {
  if (const char* s = std::getenv("HYPOLAB_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int nw = std::min(worker_threads(), n);
  if (nw <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::mutex mu;
  std::exception_ptr err;
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += nw) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace hypolab
