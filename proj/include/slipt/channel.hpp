#pragma once

// Composite channel statistics of a two-hop underwater optical link:
// Beer-Lambert attenuation, mixture exponential / generalized-Gamma
// turbulence, and Gaussian-jitter pointing loss.

#include <cmath>
#include <span>
#include <vector>

#include "slipt/specfun.hpp"

namespace slipt {

/// Absorption and scattering coefficients of the water column (1/m).
struct WaterOptics {
  double absorption = 0.0;
  double scattering = 0.0;
  double wavelength_nm = 450.0;

  double extinction() const { return absorption + scattering; }
  void validate() const;
};

/// Mixture of an exponential (weight alpha, mean beta) and a generalized
/// Gamma law with shape a, scale b and power c.
struct EggParams {
  double mix_alpha = 0.0;
  double exp_beta = 1.0;
  double gg_a = 1.0;
  double gg_b = 1.0;
  double gg_c = 1.0;

  /// E[h_t] = alpha beta + (1 - alpha) b Gamma(a + 1/c) / Gamma(a)
  double mean() const;
  void validate() const;
};

/// Aperture and beam geometry with Rayleigh-distributed radial jitter.
/// The coupling constants are derived once at construction.
class PointingGeometry {
 public:
  /// Above this exponent the jitter is treated as absent and h_p = A0.
  static constexpr double kDegenerateMuSq = 1e4;

  PointingGeometry(double aperture_radius_m, double beam_waist_m, double jitter_sigma_m);

  double aperture_radius() const { return aperture_radius_; }
  double beam_waist() const { return beam_waist_; }
  double jitter_sigma() const { return jitter_sigma_; }

  double v() const { return v_; }
  double a0() const { return a0_; }
  double omega_e() const { return omega_e_; }
  /// (omega_e / (2 sigma_s))^2; +inf without jitter.
  double mu_s_sq() const { return mu_s_sq_; }
  bool degenerate() const { return !(mu_s_sq_ <= kDegenerateMuSq); }

  /// Same geometry with sigma_s = multiple * r_a.
  PointingGeometry with_jitter_multiple(double multiple) const;

 private:
  double aperture_radius_;
  double beam_waist_;
  double jitter_sigma_;
  double v_;
  double a0_;
  double omega_e_;
  double mu_s_sq_;
};

struct LinkConfig {
  double distance_m = 30.0;
  double tx_power_w = 100.0;
  double split_rho = 0.8;
  double eff_pv = 0.2;
  double eff_tx = 0.8;
  double eff_rx_sub = 0.9;
  double noise_var_fwd = 2.88e-3;
  double noise_var_ret = 2.88e-3;
  double snr_threshold = std::pow(10.0, 0.2);  // 2 dB
  WaterOptics water{0.014, 0.003, 450.0};
  EggParams turbulence{0.2130, 0.3291, 1.4299, 1.1817, 17.1984};
  PointingGeometry pointing{0.05, 0.1, 0.025};

  /// (1 - rho) eta_t eta_r eta_s P_t / sigma_2^2
  double mean_snr() const;
  /// Gain applied to h1 in the harvested power: (1 - rho) eta_r P_t.
  double harvest_gain() const;
  void validate() const;
};

double attenuation_gain(const WaterOptics& water, double distance_m);

double egg_pdf(const EggParams& params, double ht);
double egg_cdf(const EggParams& params, double ht);

/// Zero outside (0, A0]. Throws DomainError for degenerate geometry.
double pointing_pdf(const PointingGeometry& geom, double hp);
double pointing_cdf(const PointingGeometry& geom, double hp);

/// Law of a positive variable X through its Mellin moments
///   E[X^t] = sum_i weight_i * scale_i^t * prod Gamma(c + A t)^(+-1),
/// which turns densities, CDFs and expectations of Mellin-representable
/// functions into sums of Mellin-Barnes integrals.
class MomentMixture {
 public:
  struct Term {
    std::vector<specfun::GammaFactor> factors;
    double weight = 1.0;
    double scale = 1.0;
  };

  explicit MomentMixture(std::vector<Term> terms);

  std::span<const Term> terms() const { return terms_; }

  /// E[X^t] exists for t > left_bound().
  double left_bound() const { return left_bound_; }

  /// Throws DivergenceError for t <= left_bound().
  double moment(double t) const;

  /// Law of X * Y for independent X ~ *this and Y ~ other.
  MomentMixture product(const MomentMixture& other) const;

  double density(double x, const specfun::EvalOptions& opts = {}) const;
  double cdf(double x, const specfun::EvalOptions& opts = {}) const;

  /// sum_i weight_i * prefactor / (2 pi i) * integral of
  ///   Phi_i(t) * kernel(t) * (y / scale_i)^(-t) dt
  /// with y = exp(log_y), along the strip shared by every term.
  double transform(std::span<const specfun::GammaFactor> kernel, double prefactor, double log_y,
                   const specfun::EvalOptions& opts = {}) const;

 private:
  std::vector<Term> terms_;
  double left_bound_;
};

/// Mellin moments of h1 = h_a h_t h_p.
MomentMixture h1_law(const LinkConfig& cfg);
/// Mellin moments of h = h1 h2 for i.i.d. hops.
MomentMixture h_law(const LinkConfig& cfg);

double h1_pdf(const LinkConfig& cfg, double h);
double h1_cdf(const LinkConfig& cfg, double h);
double h_pdf(const LinkConfig& cfg, double h);
double h_cdf(const LinkConfig& cfg, double h);

/// Return-link SNR gamma_u = mean_snr * h; the two-argument forms use cfg.mean_snr().
double snr_pdf(const LinkConfig& cfg, double gamma);
double snr_cdf(const LinkConfig& cfg, double gamma);
double snr_pdf(const LinkConfig& cfg, double gamma, double mean_snr);
double snr_cdf(const LinkConfig& cfg, double gamma, double mean_snr);

}  // namespace slipt
