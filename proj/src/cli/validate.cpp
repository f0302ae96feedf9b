#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "slipt/cli.hpp"
#include "slipt/errors.hpp"
#include "slipt/montecarlo.hpp"

namespace slipt::cli {

namespace {

ValidationCheck ks_check(std::string name, std::vector<double> samples, const std::function<double(double)>& cdf,
                         double threshold) {
  std::sort(samples.begin(), samples.end());
  const auto ks = mc::ks_distance(samples, cdf);
  return {std::move(name), ks.upper < threshold, false,
          fmt::format("ks<={:.5f} (>= {:.5f}) threshold={:.5f}", ks.upper, ks.lower, threshold)};
}

ValidationCheck agreement(std::string name, double analytic, const mc::EmpiricalSummary& s) {
  const double gap = std::abs(analytic - s.mean);
  const double limit = 4.0 * s.std_error;
  return {std::move(name), gap <= limit, false,
          fmt::format("analytic={:.6g} mc={:.6g} stderr={:.3g} gap/stderr={:.2f}", analytic, s.mean, s.std_error,
                      s.std_error > 0 ? gap / s.std_error : (gap == 0 ? 0.0 : INFINITY))};
}

ValidationCheck skipped(std::string name, std::string why) { return {std::move(name), true, true, std::move(why)}; }

template <class F>
ValidationCheck guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, false, false, std::string("error: ") + e.what()};
  }
}

}  // namespace

std::vector<ValidationCheck> run_validation(const LinkConfig& link, std::optional<double> mean_snr,
                                            std::size_t samples, std::uint64_t seed) {
  if (samples < 10'000) throw ConfigError("samples", "must be >= 10000");
  link.validate();
  const double snr = mean_snr.value_or(link.mean_snr());
  const double threshold = std::max(0.005, 2.0 / std::sqrt(static_cast<double>(samples)));
  auto opts = [&](std::uint64_t stream) { return mc::SimOptions{seed, samples, stream}; };

  std::vector<ValidationCheck> checks;
  checks.push_back(guarded("ks_turbulence", [&] {
    return ks_check("ks_turbulence", mc::sample_ht(link.turbulence, opts(0)),
                    [&](double x) { return egg_cdf(link.turbulence, x); }, threshold);
  }));
  if (link.pointing.degenerate()) {
    checks.push_back(skipped("ks_pointing", "degenerate pointing (no jitter)"));
  } else {
    checks.push_back(guarded("ks_pointing", [&] {
      return ks_check("ks_pointing", mc::sample_hp(link.pointing, opts(1)),
                      [&](double x) { return pointing_cdf(link.pointing, x); }, threshold);
    }));
  }

  const auto h1 = h1_law(link);
  const auto h = h_law(link);
  checks.push_back(guarded("ks_h1", [&] {
    return ks_check("ks_h1", mc::sample_h1(link, opts(2)), [&](double x) { return h1.cdf(x); }, threshold);
  }));
  checks.push_back(guarded("ks_h", [&] {
    return ks_check("ks_h", mc::sample_h(link, opts(3)), [&](double x) { return h.cdf(x); }, threshold);
  }));

  const std::string zero_snr = "degenerate split (zero mean SNR)";
  const bool snr_ok = snr > 0.0;
  if (!snr_ok) {
    for (const char* n : {"ks_gamma_u", "op", "ber_ook", "capacity", "moment_1"}) checks.push_back(skipped(n, zero_snr));
  } else {
    checks.push_back(guarded("ks_gamma_u", [&] {
      return ks_check("ks_gamma_u", mc::sample_gamma_u(link, opts(4), snr),
                      [&](double g) { return h.cdf(g / snr); }, threshold);
    }));
    checks.push_back(guarded("op", [&] {
      return agreement("op", outage_probability(link, snr), mc::estimate(mc::Metric::op, link, snr, {}, opts(5)));
    }));
    checks.push_back(guarded("ber_ook", [&] {
      const ModulationSpec ook(Scheme::ook);
      return agreement("ber_ook", average_ber(link, snr, ook), mc::estimate(mc::Metric::ber, link, snr, ook, opts(6)));
    }));
    checks.push_back(guarded("capacity", [&] {
      return agreement("capacity", ergodic_capacity(link, snr),
                       mc::estimate(mc::Metric::capacity, link, snr, {}, opts(7)));
    }));
    checks.push_back(guarded("moment_1", [&] {
      return agreement("moment_1", snr_moment(link, snr, 1.0), mc::summarize(mc::sample_gamma_u(link, opts(8), snr)));
    }));
  }

  if (link.harvest_gain() == 0.0) {
    checks.push_back(skipped("harvested_mean", "degenerate split (no harvested power)"));
  } else {
    checks.push_back(guarded("harvested_mean", [&] {
      return agreement("harvested_mean", harvested_power_mean(link),
                       mc::estimate(mc::Metric::harvested_mean, link, snr, {}, opts(9)));
    }));
  }
  return checks;
}

}  // namespace slipt::cli
