#include "slipt/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "slipt/errors.hpp"

namespace slipt {

using specfun::FactorPosition;
using specfun::GammaFactor;

namespace {

bool power_of_two(int m) { return m > 0 && std::has_single_bit(static_cast<unsigned>(m)); }

std::string lower(std::string_view text) {
  std::string out;
  for (char ch : text)
    if (ch != '-' && ch != '_' && ch != ' ') out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

void require_mean_snr(double mean_snr) {
  if (!(mean_snr > 0.0) || !std::isfinite(mean_snr))
    throw DomainError("mean SNR must be positive and finite");
}

}  // namespace

ModulationSpec::ModulationSpec(Scheme scheme, int order) : scheme_(scheme), order_(order), p_b_(0.5) {
  switch (scheme) {
    case Scheme::ook:
      order_ = 2;
      delta_b_ = 1.0;
      q_list_ = {0.5};
      break;
    case Scheme::mpsk: {
      if (order < 2 || !power_of_two(order)) throw DomainError("MPSK order must be a power of two >= 2");
      const double bits = std::log2(static_cast<double>(order));
      delta_b_ = 2.0 / std::max(bits, 2.0);
      const int n = std::max(order / 4, 1);
      for (int k = 1; k <= n; ++k) {
        const double s = std::sin((2.0 * k - 1.0) * std::numbers::pi / order);
        q_list_.push_back(s * s * bits);
      }
      break;
    }
    case Scheme::mqam: {
      const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
      if (order < 4 || !power_of_two(order) || root * root != order)
        throw DomainError("MQAM order must be a square power of two >= 4");
      const double bits = std::log2(static_cast<double>(order));
      delta_b_ = 4.0 / bits * (1.0 - 1.0 / root);
      for (int k = 1; k <= root / 2; ++k) {
        const double odd = 2.0 * k - 1.0;
        q_list_.push_back(3.0 * odd * odd / (2.0 * (order - 1.0)) * bits);
      }
      break;
    }
  }
}

ModulationSpec ModulationSpec::parse(std::string_view text) {
  const std::string s = lower(text);
  if (s == "ook") return ModulationSpec(Scheme::ook);
  if (s == "bpsk") return ModulationSpec(Scheme::mpsk, 2);
  if (s == "qpsk") return ModulationSpec(Scheme::mpsk, 4);
  for (auto [tag, scheme] : {std::pair{"psk", Scheme::mpsk}, std::pair{"qam", Scheme::mqam}}) {
    const std::string t = tag;
    std::string digits;
    if (s.size() > t.size() && s.ends_with(t))
      digits = s.substr(0, s.size() - t.size());
    else if (s.size() > t.size() && s.starts_with(t))
      digits = s.substr(t.size());
    else
      continue;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 6)
      break;
    return ModulationSpec(scheme, std::stoi(digits));
  }
  throw DomainError("unknown modulation '" + std::string(text) +
                    "' (expected ook, <M>-psk or <M>-qam)");
}

std::string ModulationSpec::name() const {
  switch (scheme_) {
    case Scheme::ook:
      return "ook";
    case Scheme::mpsk:
      return std::to_string(order_) + "-psk";
    case Scheme::mqam:
      return std::to_string(order_) + "-qam";
  }
  return "?";
}

double outage_probability(const LinkConfig& cfg, double mean_snr) {
  require_mean_snr(mean_snr);
  return snr_cdf(cfg, cfg.snr_threshold, mean_snr);
}

double diversity_order(const LinkConfig& cfg) {
  double g = std::min(1.0, cfg.turbulence.gg_a * cfg.turbulence.gg_c);
  if (cfg.turbulence.mix_alpha == 1.0) g = 1.0;
  if (cfg.turbulence.mix_alpha == 0.0) g = cfg.turbulence.gg_a * cfg.turbulence.gg_c;
  if (!cfg.pointing.degenerate()) g = std::min(g, cfg.pointing.mu_s_sq());
  return g;
}

double snr_moment(const LinkConfig& cfg, double mean_snr, double s) {
  require_mean_snr(mean_snr);
  if (!std::isfinite(s)) throw DomainError("snr_moment: order must be finite");
  if (s == 0.0) return 1.0;
  return std::pow(mean_snr, s) * h_law(cfg).moment(s);
}

double ber_integral(const LinkConfig& cfg, double mean_snr, double p, double q) {
  require_mean_snr(mean_snr);
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("ber_integral: p and q must be positive");
  // Gamma(p, x) / Gamma(p) has Mellin kernel Gamma(p - t) Gamma(-t) / Gamma(1 - t) in x^t.
  const GammaFactor kernel[] = {{0.0, -1.0, FactorPosition::numerator},
                                {p, -1.0, FactorPosition::numerator},
                                {1.0, -1.0, FactorPosition::denominator}};
  const double prefactor = 0.5 * std::exp(-std::lgamma(p));
  const double value = h_law(cfg).transform(kernel, prefactor, -std::log(q * mean_snr));
  return std::clamp(value, 0.0, 0.5);
}

double average_ber(const LinkConfig& cfg, double mean_snr, const ModulationSpec& mod) {
  double sum = 0.0;
  for (double q : mod.q_list()) {
    const double term = ber_integral(cfg, mean_snr, mod.p_b(), q);
    sum += term;
    if (term < 1e-4 * sum) break;
  }
  return mod.delta_b() * sum;
}

double ergodic_capacity(const LinkConfig& cfg, double mean_snr) {
  require_mean_snr(mean_snr);
  // ln(1 + x) has Mellin kernel Gamma(t)^2 Gamma(1 - t) / Gamma(1 + t) in x^t, 0 < Re t < 1.
  const GammaFactor kernel[] = {{0.0, 1.0, FactorPosition::numerator},
                                {0.0, 1.0, FactorPosition::numerator},
                                {1.0, -1.0, FactorPosition::numerator},
                                {1.0, 1.0, FactorPosition::denominator}};
  return std::max(0.0, h_law(cfg).transform(kernel, 1.0, -std::log(mean_snr)));
}

double harvested_power_pdf(const LinkConfig& cfg, double p_w) {
  const double g = cfg.harvest_gain();
  if (!(g > 0.0)) throw DomainError("harvested_power_pdf: degenerate split (no harvested power)");
  if (!(p_w > 0.0)) return 0.0;
  return h1_law(cfg).density(p_w / g) / g;
}

double harvested_power_mean(const LinkConfig& cfg) {
  const double g = cfg.harvest_gain();
  if (g == 0.0) return 0.0;
  const auto& geom = cfg.pointing;
  const double mu = geom.mu_s_sq();
  const double pointing = geom.degenerate() ? 1.0 : mu / (1.0 + mu);
  return geom.a0() * attenuation_gain(cfg.water, cfg.distance_m) * g * pointing * cfg.turbulence.mean();
}

}  // namespace slipt
