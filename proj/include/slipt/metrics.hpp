#pragma once

// Closed-form performance metrics of the return link, each evaluated as a
// sum of Mellin-Barnes integrals over the composite channel law.

#include <string>
#include <string_view>
#include <vector>

#include "slipt/channel.hpp"

namespace slipt {

enum class Scheme { ook, mpsk, mqam };

/// Unified BER parameters: P_e = delta * sum_k E[Gamma(p, q_k gamma)] / (2 Gamma(p)).
class ModulationSpec {
 public:
  /// `order` is ignored for OOK; MPSK needs a power of two >= 2, MQAM a
  /// square power of two >= 4.
  ModulationSpec(Scheme scheme, int order = 2);

  /// Parses "ook", "bpsk", "16-psk", "64psk", "256-qam", "qam64", ...
  static ModulationSpec parse(std::string_view text);

  Scheme scheme() const { return scheme_; }
  int order() const { return order_; }
  double delta_b() const { return delta_b_; }
  double p_b() const { return p_b_; }
  const std::vector<double>& q_list() const { return q_list_; }
  std::string name() const;

 private:
  Scheme scheme_;
  int order_;
  double delta_b_;
  double p_b_;
  std::vector<double> q_list_;
};

/// P(gamma_u < gamma_th) at the given mean SNR (linear).
double outage_probability(const LinkConfig& cfg, double mean_snr);

/// min{1, mu_s^2, a c}: high-SNR slope of the outage curve.
double diversity_order(const LinkConfig& cfg);

/// E[gamma_u^s]; exists for s > -diversity_order(cfg), DivergenceError otherwise.
double snr_moment(const LinkConfig& cfg, double mean_snr, double s);

/// I(p, q) = E[Gamma(p, q gamma_u)] / (2 Gamma(p)).
double ber_integral(const LinkConfig& cfg, double mean_snr, double p, double q);

double average_ber(const LinkConfig& cfg, double mean_snr, const ModulationSpec& mod);

/// E[ln(1 + gamma_u)] in nats per channel use.
double ergodic_capacity(const LinkConfig& cfg, double mean_snr);

/// Density of P_s = (1 - rho) eta_r P_t h1; DomainError when rho = 1.
double harvested_power_pdf(const LinkConfig& cfg, double p_w);
/// E[P_s] in watts; zero when rho = 1.
double harvested_power_mean(const LinkConfig& cfg);

}  // namespace slipt
