#pragma once

// Special functions used by the channel statistics: complex log-gamma,
// real polygamma, and a Mellin-Barnes evaluator that backs every Meijer-G
// and Fox-H instance in the library.

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace slipt::specfun {

/// Principal branch of log Gamma(z) (analytic except on the negative real
/// axis, satisfies log_gamma(z + 1) = log(z) + log_gamma(z)). Throws
/// PoleError at nonpositive integers. On the negative real axis the value
/// is the limit from the upper half plane.
std::complex<double> log_gamma_complex(std::complex<double> z);

/// log|Gamma(x)| for real x; writes the sign of Gamma(x) to *sign when given.
double log_abs_gamma(double x, int* sign = nullptr);

/// n-th derivative of the digamma function for real x (n = 0 is digamma).
double polygamma(int n, double x);

enum class FactorPosition { numerator, denominator };

/// One Gamma(coefficient + slope * s) factor of a Mellin-Barnes integrand.
struct GammaFactor {
  double coefficient = 0.0;
  double slope = 1.0;
  FactorPosition position = FactorPosition::numerator;
};

/// A pole of the integrand: location on the real axis and its order after
/// cancellation against denominator zeros.
struct Pole {
  double location = 0.0;
  int order = 0;
};

/// prefactor * (1 / 2 pi i) * integral of  prod Gamma(c + A s)^(+-1) * x^(-k s) ds
/// along an upward vertical line that separates the left pole families
/// (numerator factors with A > 0) from the right ones (A < 0).
class MellinIntegrand {
 public:
  explicit MellinIntegrand(std::vector<GammaFactor> factors, double argument_exponent = 1.0,
                           double prefactor = 1.0);

  std::span<const GammaFactor> factors() const { return factors_; }
  double argument_exponent() const { return argument_exponent_; }
  double prefactor() const { return prefactor_; }

  /// Rightmost left pole (-inf if there is none).
  double left_bound() const { return left_bound_; }
  /// Leftmost right pole (+inf if there is none).
  double right_bound() const { return right_bound_; }

  /// Growth rate of log|integrand| along the negative real axis in units of
  /// |s| log|s|. Positive means the left residue series converges for all x.
  double series_exponent() const;

  /// Net slope mass (sum over numerator |A| minus denominator |A|); the
  /// integrand decays like exp(-pi/2 * this * |Im s|) on vertical lines.
  double decay_rate() const;

  /// log of the Gamma product at complex s (the x^(-k s) factor excluded).
  std::complex<double> log_kernel(std::complex<double> s) const;

  /// Left poles with real part >= horizon, in decreasing order. Poles that
  /// coincide within 1e-9 are merged and their order summed.
  std::vector<Pole> left_poles(double horizon) const;

  /// Same integrand in the variable u with s = lambda * u (lambda > 0).
  MellinIntegrand rescaled(double lambda) const;

  /// Same integrand multiplied by a constant.
  MellinIntegrand scaled(double factor) const;

 private:
  std::vector<GammaFactor> factors_;
  double argument_exponent_;
  double prefactor_;
  double left_bound_;
  double right_bound_;
};

enum class Strategy { automatic, residue_series, quadrature };

struct EvalOptions {
  double relative_tolerance = 1e-8;
  /// Vertical contour position; chosen automatically inside the strip when empty.
  std::optional<double> contour_abscissa;
  /// Hard cap on the imaginary-axis truncation of the line integral.
  double truncation_height = 1e4;
  /// Poles enumerated per left family by the residue series.
  int max_residue_terms = 600;
  /// Minimum number of nodes on the first trapezoid level.
  int quadrature_nodes = 64;
  Strategy strategy = Strategy::automatic;
};

struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  Strategy strategy = Strategy::automatic;
  int evaluations = 0;
};

/// Evaluates the integrand at argument x > 0.
EvalResult mellin_evaluate(const MellinIntegrand& integrand, double x, const EvalOptions& opts = {});

/// Same, with the argument given as log(x); avoids under/overflow of x^k.
EvalResult mellin_evaluate_log(const MellinIntegrand& integrand, double log_x,
                               const EvalOptions& opts = {});

double mellin_eval(const MellinIntegrand& integrand, double x, const EvalOptions& opts = {});

/// Canonical integrand of G^{m,n}_{p,q}[x | a; b].
MellinIntegrand meijer_g_integrand(int m, int n, int p, int q, std::span<const double> a,
                                   std::span<const double> b);

double meijer_g(int m, int n, int p, int q, std::span<const double> a, std::span<const double> b,
                double x, const EvalOptions& opts = {});

/// (coefficient, slope) pair of a Fox-H parameter list.
struct HParam {
  double coefficient = 0.0;
  double slope = 1.0;
};

MellinIntegrand fox_h_integrand(int m, int n, int p, int q, std::span<const HParam> a,
                                std::span<const HParam> b);

double fox_h(int m, int n, int p, int q, std::span<const HParam> a, std::span<const HParam> b,
             double x, const EvalOptions& opts = {});

}  // namespace slipt::specfun
