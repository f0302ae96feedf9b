// Mellin-Barnes evaluation: left-pole residue series with derivative
// residues at repeated poles, and trapezoid quadrature along a vertical
// line placed at the real-axis saddle of the integrand.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "slipt/errors.hpp"
#include "slipt/specfun.hpp"

namespace slipt::specfun {
namespace {

using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kCoincidence = 1e-9;

bool is_numerator(const GammaFactor& f) { return f.position == FactorPosition::numerator; }

bool pole_index(const GammaFactor& f, double s, int* k) {
  const double z = f.coefficient + f.slope * s;
  if (z > 0.5) return false;
  const double r = std::nearbyint(z);
  if (std::abs(z - r) > std::abs(f.slope) * kCoincidence * std::max(1.0, std::abs(s))) return false;
  *k = static_cast<int>(-r);
  return true;
}

struct SeriesOutcome {
  std::optional<EvalResult> result;
  double achieved_error = kInf;
};

// Residue of prod Gamma^(+-1) * exp(-L s) at a pole of the given order,
// returned as sign * exp(log_mag).
struct LogTerm {
  double log_mag = -kInf;
  int sign = 0;
};

LogTerm pole_residue(std::span<const GammaFactor> factors, double L, const Pole& pole) {
  const int m = pole.order;
  const double s0 = pole.location;
  double l0 = -L * s0;
  int sign = 1;
  // derivs[j] = j-th derivative of the log of the regular part at s0
  std::vector<double> derivs(static_cast<std::size_t>(m), 0.0);
  if (m > 1) derivs[1] -= L;

  for (const auto& f : factors) {
    const double w = is_numerator(f) ? 1.0 : -1.0;
    const double a = f.slope;
    int k = 0;
    if (pole_index(f, s0, &k)) {
      // Gamma(c + A s) = g(s) / (s - s0),  g(s0) = 1 / (A * prod_{i<k} (i - k))
      l0 += w * (-std::log(std::abs(a)) - std::lgamma(k + 1.0));
      if (a < 0.0) sign = -sign;
      if (k % 2 == 1) sign = -sign;
      double apow = 1.0;
      double fact = 1.0;  // (j-1)!
      for (int j = 1; j < m; ++j) {
        apow *= a;
        if (j > 1) fact *= (j - 1);
        double tail = 0.0;
        const double alt = ((j - 1) % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < k; ++i) tail += alt * fact / std::pow(static_cast<double>(i - k), j);
        derivs[static_cast<std::size_t>(j)] += w * apow * (polygamma(j - 1, 1.0) - tail);
      }
    } else {
      const double z = f.coefficient + a * s0;
      int sg = 1;
      l0 += w * log_abs_gamma(z, &sg);
      if (sg < 0) sign = -sign;
      double apow = 1.0;
      for (int j = 1; j < m; ++j) {
        apow *= a;
        derivs[static_cast<std::size_t>(j)] += w * apow * polygamma(j - 1, z);
      }
    }
  }

  // Taylor coefficient of exp(sum_j derivs[j] eps^j / j!) at order m - 1.
  std::vector<double> coeff(static_cast<std::size_t>(m), 0.0);
  std::vector<double> a_j(static_cast<std::size_t>(m), 0.0);
  double jfact = 1.0;
  for (int j = 1; j < m; ++j) {
    jfact *= j;
    a_j[static_cast<std::size_t>(j)] = derivs[static_cast<std::size_t>(j)] / jfact;
  }
  coeff[0] = 1.0;
  for (int n = 1; n < m; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j)
      acc += j * a_j[static_cast<std::size_t>(j)] * coeff[static_cast<std::size_t>(n - j)];
    coeff[static_cast<std::size_t>(n)] = acc / n;
  }
  const double c = coeff[static_cast<std::size_t>(m - 1)];
  if (c == 0.0) return {};
  if (c < 0.0) sign = -sign;
  return {l0 + std::log(std::abs(c)), sign};
}

SeriesOutcome residue_series(const MellinIntegrand& f, double L, const EvalOptions& opts) {
  SeriesOutcome out;
  if (!std::isfinite(f.left_bound())) return out;
  const double delta = f.series_exponent();
  if (delta < -1e-12) return out;
  if (delta <= 1e-12 && L >= 0.0) return out;

  double max_slope = 0.0;
  for (const auto& g : f.factors())
    if (is_numerator(g) && g.slope > 0.0) max_slope = std::max(max_slope, g.slope);
  const double depth = opts.max_residue_terms / max_slope;
  const auto poles = f.left_poles(f.left_bound() - depth);

  const double tol = opts.relative_tolerance;
  double sum = 0.0;
  double comp = 0.0;  // Neumaier compensation
  double max_abs = 0.0;
  double first_log = -kInf;
  int small_run = 0;
  double recent = 0.0;
  double previous = 0.0;
  int evaluations = 0;

  for (const auto& pole : poles) {
    LogTerm lt;
    try {
      lt = pole_residue(f.factors(), L, pole);
    } catch (const DomainError&) {
      return out;
    }
    ++evaluations;
    if (lt.sign == 0) continue;
    if (!std::isfinite(first_log)) first_log = lt.log_mag;
    // more than ~15 digits of cancellation, or overflow
    if (lt.log_mag > first_log + 34.0 || lt.log_mag > 700.0) return out;
    const double term = lt.sign * std::exp(lt.log_mag);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    max_abs = std::max(max_abs, std::abs(term));

    const double total = std::abs(sum + comp);
    double ratio = 1.0;
    if (previous > 0.0)
      ratio = std::abs(term) / previous;
    else if (term == 0.0 && evaluations > 1)
      ratio = 0.0;  // both underflowed
    previous = std::abs(term);
    if (std::abs(term) <= 0.01 * tol * total) {
      ++small_run;
      recent += std::abs(term);
      // geometric tail estimate from the last ratio
      const double tail = ratio < 0.99 ? std::abs(term) * ratio / (1.0 - ratio) : kInf;
      if (small_run >= 3 && tail <= 0.1 * tol * total) {
        const double value = (sum + comp);
        const double err = tail + recent + 8.0 * kEps * max_abs * std::sqrt(double(evaluations));
        out.achieved_error = err / std::max(total, std::numeric_limits<double>::min());
        if (err > tol * total) return out;
        out.result = EvalResult{value * f.prefactor(), err * std::abs(f.prefactor()),
                                Strategy::residue_series, evaluations};
        return out;
      }
    } else {
      small_run = 0;
      recent = 0.0;
    }
  }
  return out;
}

// d/dsigma log|Phi(sigma)| - L on the real axis.
double log_slope(std::span<const GammaFactor> factors, double sigma, double L) {
  double acc = -L;
  for (const auto& f : factors) {
    const double z = f.coefficient + f.slope * sigma;
    const double d = f.slope * polygamma(0, z);
    acc += is_numerator(f) ? d : -d;
  }
  return acc;
}

double log_curvature(std::span<const GammaFactor> factors, double sigma) {
  double acc = 0.0;
  for (const auto& f : factors) {
    const double z = f.coefficient + f.slope * sigma;
    const double d = f.slope * f.slope * polygamma(1, z);
    acc += is_numerator(f) ? d : -d;
  }
  return acc;
}

double safe_slope(std::span<const GammaFactor> factors, double sigma, double L) {
  try {
    return log_slope(factors, sigma, L);
  } catch (const DomainError&) {
    return log_slope(factors, sigma + 1e-7 * std::max(1.0, std::abs(sigma)), L);
  }
}

double choose_abscissa(const MellinIntegrand& f, double L) {
  const double lo = f.left_bound();
  const double hi = f.right_bound();
  const auto factors = f.factors();
  if (!std::isfinite(lo) && !std::isfinite(hi)) return 0.0;

  // On an open side, stop where a denominator Gamma would reach negative
  // arguments: there 1/Gamma oscillates and the line integral cancels.
  double soft_lo = -kInf;
  double soft_hi = kInf;
  for (const auto& g : factors) {
    if (is_numerator(g)) continue;
    const double edge = (0.5 - g.coefficient) / g.slope;
    if (g.slope > 0.0)
      soft_lo = std::max(soft_lo, edge);
    else
      soft_hi = std::min(soft_hi, edge);
  }

  constexpr double kMaxShift = 1e6;
  double a = 0.0;
  double b = 0.0;
  if (std::isfinite(lo) && std::isfinite(hi)) {
    const double w = hi - lo;
    a = lo + 1e-6 * w;
    b = hi - 1e-6 * w;
  } else if (std::isfinite(lo)) {
    a = lo + 1e-6;
    double step = 1.0;
    b = lo + step;
    while (safe_slope(factors, b, L) < 0.0 && step < kMaxShift) {
      step *= 2.0;
      b = lo + step;
    }
  } else {
    b = hi - 1e-6;
    double step = 1.0;
    a = hi - step;
    while (safe_slope(factors, a, L) > 0.0 && step < kMaxShift) {
      step *= 2.0;
      a = hi - step;
    }
  }

  double fa = safe_slope(factors, a, L);
  double fb = safe_slope(factors, b, L);
  double sigma = 0.5 * (a + b);
  if (fa < 0.0 && fb > 0.0) {
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = safe_slope(factors, mid, L);
      if (fm < 0.0)
        a = mid;
      else
        b = mid;
    }
    sigma = 0.5 * (a + b);
  } else if (fa >= 0.0) {
    sigma = a;
  } else {
    sigma = b;
  }

  if (!std::isfinite(lo) && std::isfinite(hi) && soft_lo < hi) sigma = std::max(sigma, soft_lo);
  if (!std::isfinite(hi) && std::isfinite(lo) && soft_hi > lo) sigma = std::min(sigma, soft_hi);

  // keep clear of the nearest poles
  double margin = 0.1;
  if (std::isfinite(lo) && std::isfinite(hi)) margin = std::min(0.1, 0.25 * (hi - lo));
  if (std::isfinite(lo)) sigma = std::max(sigma, lo + margin);
  if (std::isfinite(hi)) sigma = std::min(sigma, hi - margin);
  return sigma;
}

struct QuadOutcome {
  std::optional<EvalResult> result;
  double achieved_error = kInf;
};

QuadOutcome line_quadrature(const MellinIntegrand& f, double L, const EvalOptions& opts) {
  QuadOutcome out;
  const double lo = f.left_bound();
  const double hi = f.right_bound();
  const double rate = f.decay_rate();
  if (!(rate > 0.0)) return out;
  const double kappa = 0.5 * kPi * rate;

  double sigma = 0.0;
  if (opts.contour_abscissa) {
    sigma = *opts.contour_abscissa;
    if (!(sigma > lo && sigma < hi))
      throw DomainError("mellin_eval: contour abscissa " + std::to_string(sigma) +
                        " is outside the pole-free strip");
  } else {
    sigma = choose_abscissa(f, L);
  }

  const double clearance = std::min(sigma - lo, hi - sigma);
  const cplx log_center = f.log_kernel(cplx(sigma, 0.0)) - L * sigma;
  const double base = log_center.real();

  // Far below the smallest subnormal: the integral is zero in double precision.
  if (base + std::log(std::abs(f.prefactor())) < -760.0) {
    out.result = EvalResult{0.0, 0.0, Strategy::quadrature, 1};
    out.achieved_error = 0.0;
    return out;
  }

  auto integrand = [&](double tau) {
    const cplx s(sigma, tau);
    const cplx lg = f.log_kernel(s) - L * s - base;
    return std::exp(lg);
  };

  double h = 0.5;
  if (std::isfinite(clearance)) h = std::min(h, 0.5 * clearance);
  try {
    const double curv = log_curvature(f.factors(), sigma);
    if (curv > 0.0) h = std::min(h, 1.0 / std::sqrt(curv));
    const double slope = std::abs(log_slope(f.factors(), sigma, L));
    if (slope > 0.0) h = std::min(h, 1.0 / slope);
  } catch (const DomainError&) {
  }

  const double tol = opts.relative_tolerance;
  const double cap = opts.truncation_height;
  int evaluations = 0;

  // Level 0: walk up the line until the tail is negligible.
  std::vector<double> taus;
  double sum = 0.5 * integrand(0.0).real();
  double abs_sum = std::abs(sum);
  ++evaluations;
  double tail = kInf;
  int quiet = 0;
  double height = 0.0;
  const double min_height = h * opts.quadrature_nodes;
  for (int j = 1;; ++j) {
    const double tau = j * h;
    if (tau > cap) break;
    const cplx v = integrand(tau);
    ++evaluations;
    sum += v.real();
    abs_sum += std::abs(v);
    height = tau;
    const double mag = std::abs(v);
    tail = mag / kappa;
    const double scale = std::max(std::abs(sum) * h, kEps * abs_sum * h);
    if (tau >= min_height && tail < 1e-3 * tol * scale) {
      if (++quiet >= 4) break;
    } else {
      quiet = 0;
    }
    if (evaluations > 4'000'000) break;
  }
  double estimate = sum * h;
  double abs_integral = abs_sum * h;

  // Refinement: halve the step until successive sums agree.
  double diff = kInf;
  for (int level = 1; level <= 16; ++level) {
    const double hn = 0.5 * h;
    double add = 0.0;
    for (double tau = hn; tau <= height; tau += h) {
      const cplx v = integrand(tau);
      ++evaluations;
      add += v.real();
      abs_integral += std::abs(v) * hn;
    }
    const double refined = 0.5 * estimate + hn * add;
    diff = std::abs(refined - estimate);
    estimate = refined;
    abs_integral *= 0.5 * 1.0;
    h = hn;
    if (diff <= tol * std::abs(estimate)) break;
    if (evaluations > 8'000'000) break;
  }

  const double err_rel_terms = diff + tail + 16.0 * kEps * abs_integral;
  const double value_scaled = estimate / kPi;
  const double err_scaled = err_rel_terms / kPi;
  out.achieved_error = err_scaled / std::max(std::abs(value_scaled), std::numeric_limits<double>::min());

  // back to absolute scale: multiply by exp(base) * prefactor
  const double pref = f.prefactor();
  double value = 0.0;
  double error = 0.0;
  if (value_scaled != 0.0) {
    const double lv = base + std::log(std::abs(value_scaled)) + std::log(std::abs(pref));
    value = (value_scaled < 0 ? -1.0 : 1.0) * (pref < 0 ? -1.0 : 1.0) * std::exp(lv);
  }
  if (err_scaled > 0.0 && pref != 0.0)
    error = std::exp(base + std::log(err_scaled) + std::log(std::abs(pref)));

  // Results far below the double range are reported as zero with their bound.
  const bool underflow = base < -740.0;
  if (underflow || out.achieved_error <= tol) {
    out.result = EvalResult{value, error, Strategy::quadrature, evaluations};
  }
  return out;
}

}  // namespace

EvalResult mellin_evaluate_log(const MellinIntegrand& f, double log_x, const EvalOptions& opts) {
  if (!(opts.relative_tolerance > 0.0)) throw DomainError("EvalOptions: relative_tolerance must be > 0");
  if (!(opts.truncation_height > 0.0)) throw DomainError("EvalOptions: truncation_height must be > 0");
  if (opts.quadrature_nodes < 32) throw DomainError("EvalOptions: quadrature_nodes must be >= 32");
  if (opts.max_residue_terms < 1) throw DomainError("EvalOptions: max_residue_terms must be >= 1");
  if (!std::isfinite(log_x)) throw DomainError("mellin_eval: argument must be positive and finite");

  const double L = f.argument_exponent() * log_x;
  if (f.prefactor() == 0.0) return EvalResult{0.0, 0.0, opts.strategy, 0};

  double best_error = kInf;
  if (opts.strategy != Strategy::quadrature) {
    auto series = residue_series(f, L, opts);
    if (series.result) return *series.result;
    best_error = std::min(best_error, series.achieved_error);
    if (opts.strategy == Strategy::residue_series)
      throw ConvergenceError("mellin_eval: residue series did not converge (relative error " +
                                 std::to_string(best_error) + ")",
                             best_error);
  }
  auto quad = line_quadrature(f, L, opts);
  if (quad.result) return *quad.result;
  best_error = std::min(best_error, quad.achieved_error);
  throw ConvergenceError(
      "mellin_eval: no strategy reached the requested tolerance (best relative error " +
          std::to_string(best_error) + ")",
      best_error);
}

EvalResult mellin_evaluate(const MellinIntegrand& f, double x, const EvalOptions& opts) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mellin_eval: argument must be positive and finite");
  return mellin_evaluate_log(f, std::log(x), opts);
}

double mellin_eval(const MellinIntegrand& f, double x, const EvalOptions& opts) {
  return mellin_evaluate(f, x, opts).value;
}

}  // namespace slipt::specfun
