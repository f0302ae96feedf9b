#include <array>
#include <cmath>
#include <numbers>

#include "slipt/errors.hpp"
#include "slipt/specfun.hpp"

namespace slipt::specfun {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kLogPi = 1.1447298858494001741434273513531;

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(double x) {
  if (x > 0.5) return false;
  return std::abs(x - std::nearbyint(x)) <= 1e-14 * std::max(1.0, std::abs(x));
}

cplx lanczos_log_gamma(cplx z) {
  // Re z >= 0.5
  const cplx zm1 = z - 1.0;
  cplx sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (zm1 + static_cast<double>(i));
  const cplx t = zm1 + kLanczosG + 0.5;
  return kHalfLog2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(sum);
}

// log sin(pi z) for Im z >= 0, continuous in the closed upper half plane
// minus the real-axis zeros.
cplx log_sin_pi_upper(cplx z) {
  const cplx i(0.0, 1.0);
  const cplx w = std::exp(2.0 * kPi * i * z);
  return -i * kPi * z + std::log(1.0 - w) + cplx(-std::numbers::ln2, kPi / 2);
}

double lanczos_log_gamma_real(double x) {
  // x >= 0.5
  const double xm1 = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (xm1 + static_cast<double>(i));
  const double t = xm1 + kLanczosG + 0.5;
  return kHalfLog2Pi + (xm1 + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

cplx log_gamma_complex(cplx z) {
  if (z.imag() == 0.0 && near_nonpositive_integer(z.real()))
    throw PoleError("log_gamma_complex: pole at nonpositive integer " + std::to_string(z.real()));
  if (z.real() >= 0.5) return lanczos_log_gamma(z);

  // Reflection, evaluated in the upper half plane and conjugated back.
  const bool lower = z.imag() < 0.0;
  const cplx zu = lower ? std::conj(z) : z;
  const cplx result = kLogPi - log_sin_pi_upper(zu) - lanczos_log_gamma(1.0 - zu);
  return lower ? std::conj(result) : result;
}

double log_abs_gamma(double x, int* sign) {
  if (near_nonpositive_integer(x))
    throw PoleError("log_abs_gamma: pole at nonpositive integer " + std::to_string(x));
  if (x >= 0.5) {
    if (sign) *sign = 1;
    return lanczos_log_gamma_real(x);
  }
  const double s = std::sin(kPi * x);
  if (sign) *sign = s < 0.0 ? -1 : 1;
  return kLogPi - std::log(std::abs(s)) - lanczos_log_gamma_real(1.0 - x);
}

double polygamma(int n, double x) {
  if (n < 0) throw DomainError("polygamma: negative order");
  if (near_nonpositive_integer(x)) throw PoleError("polygamma: pole at " + std::to_string(x));

  // (-1)^(n+1) n! factor for the recurrence psi^(n)(x) = psi^(n)(x+1) - (-1)^n n! / x^(n+1)
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;

  double acc = 0.0;
  const double threshold = 20.0 + n;
  while (x < threshold) {
    acc -= sign_n * factorial / std::pow(x, n + 1);
    x += 1.0;
  }

  // B_2k for k = 1..10
  static constexpr std::array<double, 10> kBernoulli = {
      1.0 / 6.0,       -1.0 / 30.0,   1.0 / 42.0,        -1.0 / 30.0,   5.0 / 66.0,
      -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0,   43867.0 / 798.0, -174611.0 / 330.0};

  if (n == 0) {
    double series = std::log(x) - 0.5 / x;
    const double inv2 = 1.0 / (x * x);
    double pw = inv2;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
      series -= kBernoulli[k] / (2.0 * static_cast<double>(k + 1)) * pw;
      pw *= inv2;
    }
    return acc + series;
  }

  // (-1)^(n+1) [ (n-1)!/x^n + n!/(2 x^(n+1)) + sum B_2k (2k+n-1)! / ((2k)! x^(2k+n)) ]
  const double fact_nm1 = factorial / n;
  double series = fact_nm1 / std::pow(x, n) + factorial / (2.0 * std::pow(x, n + 1));
  // ratio (2k+n-1)!/(2k)! built incrementally
  double ratio = 1.0;  // (n+1)!/2! at k = 1 computed below
  for (int j = 3; j <= n + 1; ++j) ratio *= j;  // (n+1)!/2
  double pw = 1.0 / std::pow(x, n + 2);
  const double inv2 = 1.0 / (x * x);
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    series += kBernoulli[k - 1] * ratio * pw;
    const double kk = static_cast<double>(k);
    // advance (2k+n-1)!/(2k)! -> (2k+n+1)!/(2k+2)!
    ratio *= (2.0 * kk + n) * (2.0 * kk + n + 1.0) / ((2.0 * kk + 1.0) * (2.0 * kk + 2.0));
    pw *= inv2;
  }
  return acc + ((n + 1) % 2 == 0 ? 1.0 : -1.0) * series;
}

}  // namespace slipt::specfun
