#pragma once

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace testing {

inline bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

inline std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

/// Adaptive Gauss-Kronrod over [lo, hi] split at the given interior points.
template <class F>
double integrate(F&& f, std::vector<double> breaks, double tol = 1e-11) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, breaks[i], breaks[i + 1], 10, tol);
  return total;
}

/// Integral over a log-spaced partition of [lo, hi], for densities spanning
/// many scales. Each piece is mapped to ln x and integrated with a fixed
/// 30-point Gauss-Legendre rule, so the cost is predictable even when the
/// integrand carries evaluation noise.
template <class F>
double integrate_log(F&& f, double lo, double hi, int pieces = 60) {
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / pieces;
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double t0 = a + i * step;
    total += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double t) {
          const double x = std::exp(t);
          return f(x) * x;
        },
        t0, t0 + step);
  }
  return total;
}

}  // namespace testing
