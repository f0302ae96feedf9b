#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "slipt/errors.hpp"
#include "slipt/specfun.hpp"

namespace slipt::specfun {
namespace {

using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Poles closer than this (relative to max(1, |s|)) are treated as one.
constexpr double kCoincidence = 1e-9;
// How far past the first pole the bound searches look for cancellations.
constexpr double kBoundSearchDepth = 64.0;

bool is_numerator(const GammaFactor& f) { return f.position == FactorPosition::numerator; }

// True when Gamma(c + A s) has a pole at s; writes the pole index k with
// c + A s = -k.
bool pole_index(const GammaFactor& f, double s, int* k) {
  const double z = f.coefficient + f.slope * s;
  if (z > 0.5) return false;
  const double r = std::nearbyint(z);
  if (std::abs(z - r) > std::abs(f.slope) * kCoincidence * std::max(1.0, std::abs(s))) return false;
  if (k) *k = static_cast<int>(-r);
  return true;
}

int pole_order_at(std::span<const GammaFactor> factors, double s) {
  int order = 0;
  for (const auto& f : factors) {
    if (pole_index(f, s, nullptr)) order += is_numerator(f) ? 1 : -1;
  }
  return order;
}

// Poles of the given side (left: numerator factors with A > 0) whose
// location lies between `from` and `to` along the direction of the side.
std::vector<Pole> collect_poles(std::span<const GammaFactor> factors, bool left, double horizon) {
  std::vector<double> candidates;
  for (const auto& f : factors) {
    if (!is_numerator(f)) continue;
    if (left != (f.slope > 0.0)) continue;
    const double a = std::abs(f.slope);
    for (int k = 0;; ++k) {
      // left: s = -(c + k) / A ; right: s = (c + k) / |A|
      const double s = left ? -(f.coefficient + k) / a : (f.coefficient + k) / a;
      if (left ? s < horizon : s > horizon) break;
      candidates.push_back(s);
    }
  }
  if (left)
    std::sort(candidates.begin(), candidates.end(), std::greater<>());
  else
    std::sort(candidates.begin(), candidates.end());

  std::vector<Pole> poles;
  std::size_t i = 0;
  while (i < candidates.size()) {
    const double s0 = candidates[i];
    std::size_t j = i + 1;
    while (j < candidates.size() &&
           std::abs(candidates[j] - s0) <= kCoincidence * std::max(1.0, std::abs(s0)))
      ++j;
    const int order = pole_order_at(factors, s0);
    if (order > 0) poles.push_back({s0, order});
    i = j;
  }
  return poles;
}

double first_pole(std::span<const GammaFactor> factors, bool left) {
  double best = left ? -kInf : kInf;
  for (const auto& f : factors) {
    if (!is_numerator(f) || left != (f.slope > 0.0)) continue;
    const double s = left ? -f.coefficient / f.slope : f.coefficient / -f.slope;
    best = left ? std::max(best, s) : std::min(best, s);
  }
  return best;
}

double effective_bound(std::span<const GammaFactor> factors, bool left) {
  const double start = first_pole(factors, left);
  if (!std::isfinite(start)) return left ? -kInf : kInf;
  const double horizon = left ? start - kBoundSearchDepth : start + kBoundSearchDepth;
  const auto poles = collect_poles(factors, left, horizon);
  if (poles.empty()) return left ? -kInf : kInf;
  return poles.front().location;
}

std::string describe(double s) { return std::to_string(s); }

}  // namespace

MellinIntegrand::MellinIntegrand(std::vector<GammaFactor> factors, double argument_exponent,
                                 double prefactor)
    : argument_exponent_(argument_exponent), prefactor_(prefactor) {
  if (factors.empty()) throw ShapeError("MellinIntegrand: empty factor list");
  if (!std::isfinite(argument_exponent) || argument_exponent == 0.0)
    throw ShapeError("MellinIntegrand: argument exponent must be finite and nonzero");
  if (!std::isfinite(prefactor)) throw ShapeError("MellinIntegrand: prefactor must be finite");

  for (const auto& f : factors) {
    if (!std::isfinite(f.coefficient) || !std::isfinite(f.slope))
      throw ShapeError("MellinIntegrand: non-finite factor parameter");
    if (f.slope == 0.0) {
      // constant factor: fold it into the prefactor
      int sign = 1;
      const double lg = log_abs_gamma(f.coefficient, &sign);
      prefactor_ *= sign * std::exp(is_numerator(f) ? lg : -lg);
      continue;
    }
    factors_.push_back(f);
  }
  if (factors_.empty()) throw ShapeError("MellinIntegrand: no s-dependent factor");

  left_bound_ = effective_bound(factors_, true);
  right_bound_ = effective_bound(factors_, false);
  if (std::isfinite(left_bound_) && std::isfinite(right_bound_)) {
    const double gap = right_bound_ - left_bound_;
    if (std::abs(gap) <= kCoincidence * std::max(1.0, std::abs(left_bound_)))
      throw PoleCoincidenceError("MellinIntegrand: left pole coincides with right pole at s = " +
                                 describe(left_bound_));
    if (gap < 0.0)
      throw PoleCoincidenceError("MellinIntegrand: left poles (up to " + describe(left_bound_) +
                                 ") and right poles (from " + describe(right_bound_) +
                                 ") are not separable by a vertical contour");
  }
}

double MellinIntegrand::series_exponent() const {
  // left factors grow the series denominators, right and A > 0 denominator
  // factors grow the numerators: sum of signed slopes, num minus den.
  double delta = 0.0;
  for (const auto& f : factors_) delta += is_numerator(f) ? f.slope : -f.slope;
  return delta;
}

double MellinIntegrand::decay_rate() const {
  double rate = 0.0;
  for (const auto& f : factors_) rate += is_numerator(f) ? std::abs(f.slope) : -std::abs(f.slope);
  return rate;
}

cplx MellinIntegrand::log_kernel(cplx s) const {
  cplx acc = 0.0;
  for (const auto& f : factors_) {
    const cplx lg = log_gamma_complex(f.coefficient + f.slope * s);
    acc += is_numerator(f) ? lg : -lg;
  }
  return acc;
}

std::vector<Pole> MellinIntegrand::left_poles(double horizon) const {
  return collect_poles(factors_, true, horizon);
}

MellinIntegrand MellinIntegrand::rescaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("MellinIntegrand::rescaled: lambda must be positive");
  std::vector<GammaFactor> out = factors_;
  for (auto& f : out) f.slope *= lambda;
  return MellinIntegrand(std::move(out), argument_exponent_ * lambda, prefactor_ * lambda);
}

MellinIntegrand MellinIntegrand::scaled(double factor) const {
  return MellinIntegrand(factors_, argument_exponent_, prefactor_ * factor);
}

MellinIntegrand meijer_g_integrand(int m, int n, int p, int q, std::span<const double> a,
                                   std::span<const double> b) {
  if (m < 0 || n < 0 || m > q || n > p)
    throw ShapeError("meijer_g: require 0 <= m <= q and 0 <= n <= p");
  if (a.size() != static_cast<std::size_t>(p) || b.size() != static_cast<std::size_t>(q))
    throw ShapeError("meijer_g: parameter list lengths must equal p and q");
  std::vector<GammaFactor> factors;
  for (int j = 0; j < q; ++j) {
    if (j < m)
      factors.push_back({b[j], 1.0, FactorPosition::numerator});
    else
      factors.push_back({1.0 - b[j], -1.0, FactorPosition::denominator});
  }
  for (int i = 0; i < p; ++i) {
    if (i < n)
      factors.push_back({1.0 - a[i], -1.0, FactorPosition::numerator});
    else
      factors.push_back({a[i], 1.0, FactorPosition::denominator});
  }
  return MellinIntegrand(std::move(factors));
}

double meijer_g(int m, int n, int p, int q, std::span<const double> a, std::span<const double> b,
                double x, const EvalOptions& opts) {
  return mellin_eval(meijer_g_integrand(m, n, p, q, a, b), x, opts);
}

MellinIntegrand fox_h_integrand(int m, int n, int p, int q, std::span<const HParam> a,
                                std::span<const HParam> b) {
  if (m < 0 || n < 0 || m > q || n > p)
    throw ShapeError("fox_h: require 0 <= m <= q and 0 <= n <= p");
  if (a.size() != static_cast<std::size_t>(p) || b.size() != static_cast<std::size_t>(q))
    throw ShapeError("fox_h: parameter list lengths must equal p and q");
  std::vector<GammaFactor> factors;
  for (int j = 0; j < q; ++j) {
    if (!(b[j].slope > 0.0)) throw ShapeError("fox_h: slopes must be positive");
    if (j < m)
      factors.push_back({b[j].coefficient, b[j].slope, FactorPosition::numerator});
    else
      factors.push_back({1.0 - b[j].coefficient, -b[j].slope, FactorPosition::denominator});
  }
  for (int i = 0; i < p; ++i) {
    if (!(a[i].slope > 0.0)) throw ShapeError("fox_h: slopes must be positive");
    if (i < n)
      factors.push_back({1.0 - a[i].coefficient, -a[i].slope, FactorPosition::numerator});
    else
      factors.push_back({a[i].coefficient, a[i].slope, FactorPosition::denominator});
  }
  return MellinIntegrand(std::move(factors));
}

double fox_h(int m, int n, int p, int q, std::span<const HParam> a, std::span<const HParam> b,
             double x, const EvalOptions& opts) {
  return mellin_eval(fox_h_integrand(m, n, p, q, a, b), x, opts);
}

}  // namespace slipt::specfun
