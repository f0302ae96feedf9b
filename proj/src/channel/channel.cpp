#include "slipt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include <boost/math/special_functions/gamma.hpp>

#include "slipt/errors.hpp"

namespace slipt {

using specfun::FactorPosition;
using specfun::GammaFactor;

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

void WaterOptics::validate() const {
  require(std::isfinite(absorption) && absorption >= 0.0, "water.absorption must be >= 0");
  require(std::isfinite(scattering) && scattering >= 0.0, "water.scattering must be >= 0");
  require(absorption + scattering > 0.0, "water: absorption and scattering cannot both be zero");
}

double EggParams::mean() const {
  return mix_alpha * exp_beta +
         (1.0 - mix_alpha) * gg_b * std::exp(std::lgamma(gg_a + 1.0 / gg_c) - std::lgamma(gg_a));
}

void EggParams::validate() const {
  require(mix_alpha >= 0.0 && mix_alpha <= 1.0, "turbulence.mix_alpha must lie in [0, 1]");
  require(std::isfinite(exp_beta) && exp_beta > 0.0, "turbulence.exp_beta must be > 0");
  require(std::isfinite(gg_a) && gg_a > 0.0, "turbulence.gg_a must be > 0");
  require(std::isfinite(gg_b) && gg_b > 0.0, "turbulence.gg_b must be > 0");
  require(std::isfinite(gg_c) && gg_c > 0.0, "turbulence.gg_c must be > 0");
}

PointingGeometry::PointingGeometry(double aperture_radius_m, double beam_waist_m, double jitter_sigma_m)
    : aperture_radius_(aperture_radius_m), beam_waist_(beam_waist_m), jitter_sigma_(jitter_sigma_m) {
  require(std::isfinite(aperture_radius_m) && aperture_radius_m > 0.0,
          "pointing.aperture_radius_m must be > 0");
  require(std::isfinite(beam_waist_m) && beam_waist_m > 0.0, "pointing.beam_waist_m must be > 0");
  require(std::isfinite(jitter_sigma_m) && jitter_sigma_m >= 0.0, "pointing.jitter_sigma_m must be >= 0");

  v_ = aperture_radius_ * std::sqrt(std::numbers::pi / 2.0) / beam_waist_;
  const double e = std::erf(v_);
  a0_ = e * e;
  omega_e_ = beam_waist_ *
             std::sqrt(std::sqrt(std::numbers::pi) * e / (2.0 * v_ * std::exp(-v_ * v_)));
  if (jitter_sigma_ == 0.0) {
    mu_s_sq_ = std::numeric_limits<double>::infinity();
  } else {
    const double ratio = omega_e_ / (2.0 * jitter_sigma_);
    mu_s_sq_ = ratio * ratio;
  }
}

PointingGeometry PointingGeometry::with_jitter_multiple(double multiple) const {
  return PointingGeometry(aperture_radius_, beam_waist_, multiple * aperture_radius_);
}

double LinkConfig::mean_snr() const {
  return (1.0 - split_rho) * eff_tx * eff_pv * eff_rx_sub * tx_power_w / noise_var_ret;
}

double LinkConfig::harvest_gain() const { return (1.0 - split_rho) * eff_pv * tx_power_w; }

void LinkConfig::validate() const {
  require(std::isfinite(distance_m) && distance_m >= 0.0, "link.distance_m must be >= 0");
  require(std::isfinite(tx_power_w) && tx_power_w >= 0.0, "link.tx_power must be >= 0");
  require(split_rho >= 0.0 && split_rho <= 1.0, "link.split_rho must lie in [0, 1]");
  require(in_open_unit(eff_pv), "link.eff_pv must lie in (0, 1)");
  require(in_open_unit(eff_tx), "link.eff_tx must lie in (0, 1)");
  require(in_open_unit(eff_rx_sub), "link.eff_rx_sub must lie in (0, 1)");
  require(std::isfinite(noise_var_fwd) && noise_var_fwd > 0.0, "link.noise_var_fwd must be > 0");
  require(std::isfinite(noise_var_ret) && noise_var_ret > 0.0, "link.noise_var_ret must be > 0");
  require(std::isfinite(snr_threshold) && snr_threshold > 0.0, "link.gamma_th must be > 0");
  water.validate();
  turbulence.validate();
}

double attenuation_gain(const WaterOptics& water, double distance_m) {
  require(distance_m >= 0.0, "attenuation_gain: distance must be >= 0");
  return std::exp(-water.extinction() * distance_m);
}

double egg_pdf(const EggParams& p, double ht) {
  require(ht > 0.0, "egg_pdf: h_t must be > 0");
  double out = 0.0;
  if (p.mix_alpha > 0.0) out += p.mix_alpha / p.exp_beta * std::exp(-ht / p.exp_beta);
  if (p.mix_alpha < 1.0) {
    const double z = ht / p.gg_b;
    const double log_gg = std::log(p.gg_c) + (p.gg_a * p.gg_c - 1.0) * std::log(ht) -
                          p.gg_a * p.gg_c * std::log(p.gg_b) - std::lgamma(p.gg_a) -
                          std::pow(z, p.gg_c);
    out += (1.0 - p.mix_alpha) * std::exp(log_gg);
  }
  return out;
}

double egg_cdf(const EggParams& p, double ht) {
  if (ht <= 0.0) return 0.0;
  double out = 0.0;
  if (p.mix_alpha > 0.0) out += p.mix_alpha * -std::expm1(-ht / p.exp_beta);
  if (p.mix_alpha < 1.0)
    out += (1.0 - p.mix_alpha) * boost::math::gamma_p(p.gg_a, std::pow(ht / p.gg_b, p.gg_c));
  return out;
}

double pointing_pdf(const PointingGeometry& g, double hp) {
  if (g.degenerate()) throw DomainError("pointing_pdf: no density without jitter (h_p = A0 a.s.)");
  if (!(hp > 0.0) || hp > g.a0()) return 0.0;
  const double mu = g.mu_s_sq();
  return mu / g.a0() * std::pow(hp / g.a0(), mu - 1.0);
}

double pointing_cdf(const PointingGeometry& g, double hp) {
  if (hp <= 0.0) return 0.0;
  if (hp >= g.a0()) return 1.0;
  if (g.degenerate()) return 0.0;
  return std::pow(hp / g.a0(), g.mu_s_sq());
}

// ---------------------------------------------------------------------------

namespace {

auto factor_key(const GammaFactor& f) {
  return std::make_tuple(static_cast<int>(f.position), f.slope, f.coefficient);
}

void canonicalize(std::vector<GammaFactor>& factors) {
  std::sort(factors.begin(), factors.end(),
            [](const GammaFactor& x, const GammaFactor& y) { return factor_key(x) < factor_key(y); });
}

bool same_integrand(const MomentMixture::Term& x, const MomentMixture::Term& y) {
  if (x.factors.size() != y.factors.size()) return false;
  if (std::abs(x.scale - y.scale) > 1e-14 * std::abs(x.scale)) return false;
  for (std::size_t i = 0; i < x.factors.size(); ++i)
    if (factor_key(x.factors[i]) != factor_key(y.factors[i])) return false;
  return true;
}

}  // namespace

MomentMixture::MomentMixture(std::vector<Term> terms) {
  left_bound_ = -std::numeric_limits<double>::infinity();
  for (auto& t : terms) {
    if (t.weight == 0.0) continue;
    if (!(t.scale > 0.0) || !std::isfinite(t.scale))
      throw DomainError("MomentMixture: term scale must be positive and finite");
    canonicalize(t.factors);
    const specfun::MellinIntegrand probe(t.factors);
    left_bound_ = std::max(left_bound_, probe.left_bound());
    auto same = std::find_if(terms_.begin(), terms_.end(),
                             [&](const Term& u) { return same_integrand(u, t); });
    if (same != terms_.end())
      same->weight += t.weight;
    else
      terms_.push_back(std::move(t));
  }
  if (terms_.empty()) throw DomainError("MomentMixture: no term with nonzero weight");
}

double MomentMixture::moment(double t) const {
  if (!(t > left_bound_))
    throw DivergenceError("moment of order " + std::to_string(t) + " does not exist (requires t > " +
                          std::to_string(left_bound_) + ")");
  double total = 0.0;
  for (const auto& term : terms_) {
    double log_mag = t * std::log(term.scale);
    int sign = term.weight < 0.0 ? -1 : 1;
    for (const auto& f : term.factors) {
      int s = 1;
      const double lg = specfun::log_abs_gamma(f.coefficient + f.slope * t, &s);
      log_mag += f.position == FactorPosition::numerator ? lg : -lg;
      sign *= s;
    }
    total += sign * std::abs(term.weight) * std::exp(log_mag);
  }
  return total;
}

MomentMixture MomentMixture::product(const MomentMixture& other) const {
  std::vector<Term> out;
  for (const auto& x : terms_) {
    for (const auto& y : other.terms_) {
      Term t;
      t.factors = x.factors;
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      t.weight = x.weight * y.weight;
      t.scale = x.scale * y.scale;
      out.push_back(std::move(t));
    }
  }
  return MomentMixture(std::move(out));
}

double MomentMixture::transform(std::span<const GammaFactor> kernel, double prefactor, double log_y,
                                const specfun::EvalOptions& opts) const {
  double total = 0.0;
  for (const auto& term : terms_) {
    std::vector<GammaFactor> factors = term.factors;
    factors.insert(factors.end(), kernel.begin(), kernel.end());
    const specfun::MellinIntegrand integrand(std::move(factors), 1.0, term.weight * prefactor);
    total += specfun::mellin_evaluate_log(integrand, log_y - std::log(term.scale), opts).value;
  }
  return total;
}

double MomentMixture::density(double x, const specfun::EvalOptions& opts) const {
  if (!(x > 0.0)) return 0.0;
  return std::max(0.0, transform({}, 1.0, std::log(x), opts) / x);
}

double MomentMixture::cdf(double x, const specfun::EvalOptions& opts) const {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  // -1/t = Gamma(-t) / Gamma(1 - t)
  static const GammaFactor kernel[] = {{0.0, -1.0, FactorPosition::numerator},
                                       {1.0, -1.0, FactorPosition::denominator}};
  return std::clamp(transform(kernel, 1.0, std::log(x), opts), 0.0, 1.0);
}

// ---------------------------------------------------------------------------

MomentMixture h1_law(const LinkConfig& cfg) {
  const auto& p = cfg.turbulence;
  const auto& g = cfg.pointing;
  const double k = g.a0() * attenuation_gain(cfg.water, cfg.distance_m);

  // Pointing contributes mu / (mu + t) = mu Gamma(mu + t) / Gamma(mu + 1 + t).
  std::vector<GammaFactor> pointing;
  double pointing_weight = 1.0;
  if (!g.degenerate()) {
    const double mu = g.mu_s_sq();
    pointing = {{mu, 1.0, FactorPosition::numerator}, {mu + 1.0, 1.0, FactorPosition::denominator}};
    pointing_weight = mu;
  }

  std::vector<MomentMixture::Term> terms;
  if (p.mix_alpha > 0.0) {
    MomentMixture::Term t{{{1.0, 1.0, FactorPosition::numerator}}, p.mix_alpha * pointing_weight,
                          k * p.exp_beta};
    t.factors.insert(t.factors.end(), pointing.begin(), pointing.end());
    terms.push_back(std::move(t));
  }
  if (p.mix_alpha < 1.0) {
    MomentMixture::Term t{{{p.gg_a, 1.0 / p.gg_c, FactorPosition::numerator}},
                          (1.0 - p.mix_alpha) * pointing_weight / std::tgamma(p.gg_a), k * p.gg_b};
    t.factors.insert(t.factors.end(), pointing.begin(), pointing.end());
    terms.push_back(std::move(t));
  }
  return MomentMixture(std::move(terms));
}

MomentMixture h_law(const LinkConfig& cfg) {
  const auto one = h1_law(cfg);
  return one.product(one);
}

double h1_pdf(const LinkConfig& cfg, double h) {
  require(h > 0.0, "h1_pdf: h must be > 0");
  return h1_law(cfg).density(h);
}

double h1_cdf(const LinkConfig& cfg, double h) { return h1_law(cfg).cdf(h); }

double h_pdf(const LinkConfig& cfg, double h) {
  require(h > 0.0, "h_pdf: h must be > 0");
  return h_law(cfg).density(h);
}

double h_cdf(const LinkConfig& cfg, double h) { return h_law(cfg).cdf(h); }

double snr_pdf(const LinkConfig& cfg, double gamma, double mean_snr) {
  require(gamma > 0.0, "snr_pdf: gamma must be > 0");
  require(mean_snr > 0.0, "snr_pdf: mean SNR must be > 0");
  return h_law(cfg).density(gamma / mean_snr) / mean_snr;
}

double snr_cdf(const LinkConfig& cfg, double gamma, double mean_snr) {
  require(mean_snr > 0.0, "snr_cdf: mean SNR must be > 0");
  return h_law(cfg).cdf(gamma / mean_snr);
}

double snr_pdf(const LinkConfig& cfg, double gamma) { return snr_pdf(cfg, gamma, cfg.mean_snr()); }
double snr_cdf(const LinkConfig& cfg, double gamma) { return snr_cdf(cfg, gamma, cfg.mean_snr()); }

}  // namespace slipt
