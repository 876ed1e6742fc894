#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "hypolab/numerics.hpp"

namespace hypolab {

// Sparse multivariate polynomial with double coefficients, exact under
// ring operations when coefficients stay at small integers (the use case:
// symbolic curvature identities on monomial test functions).
class Poly {
 public:
  explicit Poly(int nvars) : nv_(nvars) {}

  static Poly constant(int nvars, double c) {
    Poly p(nvars);
    if (c != 0.0) p.c_[std::vector<int>(nvars, 0)] = c;
    return p;
  }
  static Poly var(int nvars, int i) {
    Poly p(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    p.c_[e] = 1.0;
    return p;
  }
  static Poly monomial(int nvars, const std::vector<int>& expo, double c) {
    Poly p(nvars);
    if (c != 0.0) p.c_[expo] = c;
    return p;
  }

  int nvars() const { return nv_; }
  const std::map<std::vector<int>, double>& terms() const { return c_; }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, v] : o.c_) r.c_[e] += v;
    r.trim();
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, v] : o.c_) r.c_[e] -= v;
    r.trim();
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r(nv_);
    for (const auto& [ea, va] : c_)
      for (const auto& [eb, vb] : o.c_) {
        std::vector<int> e(nv_);
        for (int i = 0; i < nv_; ++i) e[i] = ea[i] + eb[i];
        r.c_[e] += va * vb;
      }
    r.trim();
    return r;
  }
  Poly operator*(double s) const {
    Poly r = *this;
    for (auto& [e, v] : r.c_) v *= s;
    r.trim();
    return r;
  }

  Poly diff(int i) const {
    Poly r(nv_);
    for (const auto& [e, v] : c_) {
      if (e[i] == 0) continue;
      std::vector<int> d = e;
      d[i] -= 1;
      r.c_[d] += v * e[i];
    }
    return r;
  }

  double eval(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [e, v] : c_) {
      double t = v;
      for (int i = 0; i < nv_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      s += t;
    }
    return s;
  }

  bool is_zero() const { return c_.empty(); }
  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, v] : c_) m = std::max(m, std::fabs(v));
    return m;
  }

 private:
  int nv_;
  std::map<std::vector<int>, double> c_;
  void trim() {
    for (auto it = c_.begin(); it != c_.end();) {
      if (it->second == 0.0)
        it = c_.erase(it);
      else
        ++it;
    }
  }
};

inline Poly operator*(double s, const Poly& p) { return p * s; }

}  // namespace hypolab
