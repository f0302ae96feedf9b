#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slipt/errors.hpp"
#include "slipt/metrics.hpp"
#include "slipt/presets.hpp"
#include "support.hpp"

using namespace slipt;

namespace {

LinkConfig with_type(int type) {
  LinkConfig c;
  c.turbulence = egg_type(type);
  return c;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

// E[g(gamma)] by quadrature of the closed-form SNR density.
template <class G>
double snr_expectation(const LinkConfig& cfg, double mean_snr, G&& g) {
  const auto law = h_law(cfg);
  return testing::integrate_log([&](double x) { return g(mean_snr * x) * law.density(x); }, 1e-12, 2.0, 70);
}

}  // namespace

TEST_CASE("modulation table") {
  const ModulationSpec ook(Scheme::ook);
  CHECK(ook.delta_b() == 1.0);
  CHECK(ook.p_b() == 0.5);
  CHECK(ook.q_list() == std::vector<double>{0.5});

  const ModulationSpec qpsk(Scheme::mpsk, 4);
  CHECK(qpsk.q_list().size() == 1);
  CHECK(qpsk.delta_b() == doctest::Approx(1.0));
  CHECK(qpsk.q_list()[0] == doctest::Approx(1.0).epsilon(1e-15));

  const ModulationSpec psk16(Scheme::mpsk, 16);
  CHECK(psk16.delta_b() == doctest::Approx(0.5));
  REQUIRE(psk16.q_list().size() == 4);
  for (int k = 1; k <= 4; ++k) {
    const double s = std::sin((2 * k - 1) * std::numbers::pi / 16);
    CHECK(psk16.q_list()[k - 1] == doctest::Approx(4.0 * s * s).epsilon(1e-15));
  }

  const ModulationSpec qam64(Scheme::mqam, 64);
  CHECK(qam64.delta_b() == doctest::Approx(4.0 / 6.0 * (1.0 - 1.0 / 8.0)));
  REQUIRE(qam64.q_list().size() == 4);
  CHECK(qam64.q_list()[2] == doctest::Approx(3.0 * 25.0 / (2.0 * 63.0) * 6.0));

  CHECK(ModulationSpec(Scheme::mpsk, 2).q_list().size() == 1);
  CHECK(ModulationSpec(Scheme::mqam, 256).q_list().size() == 8);
}

TEST_CASE("modulation parsing") {
  CHECK(ModulationSpec::parse("OOK").scheme() == Scheme::ook);
  CHECK(ModulationSpec::parse("16-psk").order() == 16);
  CHECK(ModulationSpec::parse("psk64").order() == 64);
  CHECK(ModulationSpec::parse("256QAM").scheme() == Scheme::mqam);
  CHECK(ModulationSpec::parse("qpsk").order() == 4);
  CHECK(ModulationSpec::parse("64-qam").name() == "64-qam");
  for (const char* bad : {"", "psk", "12-psk", "32-qam", "2-qam", "fsk", "-psk", "1e3-psk"})
    CHECK_THROWS_AS(ModulationSpec::parse(bad), DomainError);
}

TEST_CASE("outage probability is the SNR CDF at the threshold") {
  const LinkConfig cfg;
  for (double s : {10.0, 1000.0, 1e5})
    CHECK(outage_probability(cfg, s) == snr_cdf(cfg, cfg.snr_threshold, s));
  LinkConfig tiny = cfg;
  tiny.snr_threshold = 1e-9;
  CHECK(outage_probability(tiny, 1000.0) < 1e-4);
  CHECK_THROWS_AS(outage_probability(cfg, 0.0), DomainError);
  CHECK_THROWS_AS(outage_probability(cfg, -1.0), DomainError);
}

TEST_CASE("diversity order formula") {
  LinkConfig cfg;
  CHECK(diversity_order(cfg) == 1.0);
  cfg.pointing = PointingGeometry(0.05, 0.1, cfg.pointing.omega_e() / (2.0 * std::sqrt(0.5)));
  CHECK(diversity_order(cfg) == doctest::Approx(0.5).epsilon(1e-12));
  LinkConfig gg;
  gg.turbulence = {0.2, 0.33, 0.5, 1.2, 1.5};
  CHECK(diversity_order(gg) == doctest::Approx(0.75));
  gg.pointing = PointingGeometry(0.05, 0.1, 0.0);
  CHECK(diversity_order(gg) == doctest::Approx(0.75));
}

TEST_CASE("SNR moments") {
  const LinkConfig cfg;
  const double snr = 1000.0;
  CHECK(snr_moment(cfg, snr, 0.0) == 1.0);
  const double e1 = h1_law(cfg).moment(1.0);
  CHECK(snr_moment(cfg, snr, 1.0) == doctest::Approx(snr * e1 * e1).epsilon(1e-12));
  const double m2 = snr_expectation(cfg, snr, [](double g) { return g * g; });
  CHECK(snr_moment(cfg, snr, 2.0) == doctest::Approx(m2).epsilon(1e-3));
  const double m_half = snr_expectation(cfg, snr, [](double g) { return std::sqrt(g); });
  CHECK(snr_moment(cfg, snr, 0.5) == doctest::Approx(m_half).epsilon(1e-5));
  CHECK_THROWS_AS(snr_moment(cfg, snr, -10.0), DivergenceError);
}

TEST_CASE("average BER") {
  const LinkConfig cfg;
  const double snr = db(35.0);
  const ModulationSpec ook(Scheme::ook);
  CHECK(average_ber(cfg, snr, ook) == ber_integral(cfg, snr, 0.5, 0.5));

  for (const char* name : {"ook", "16-psk", "64-qam"}) {
    CAPTURE(name);
    const auto mod = ModulationSpec::parse(name);
    const double want = snr_expectation(cfg, snr, [&](double g) {
      double acc = 0.0;
      for (double q : mod.q_list()) acc += 0.5 * std::erfc(std::sqrt(q * g));
      return mod.delta_b() * acc;
    });
    CHECK(average_ber(cfg, snr, mod) == doctest::Approx(want).epsilon(1e-3));
  }

  for (const char* name : {"ook", "4-psk", "16-psk", "16-qam", "256-qam"}) {
    const auto mod = ModulationSpec::parse(name);
    double prev = 0.5 * mod.delta_b() * static_cast<double>(mod.q_list().size());
    for (double d = 0.0; d <= 90.0; d += 10.0) {
      const double b = average_ber(cfg, db(d), mod);
      CHECK(b >= 0.0);
      CHECK(b <= prev);
      prev = b;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("ergodic capacity") {
  const LinkConfig cfg;
  const double snr = db(30.0);
  const double want = snr_expectation(cfg, snr, [](double g) { return std::log1p(g); });
  CHECK(ergodic_capacity(cfg, snr) == doctest::Approx(want).epsilon(1e-6));

  std::vector<double> along_db;
  for (double d = 0.0; d <= 60.0; d += 5.0) along_db.push_back(ergodic_capacity(cfg, db(d)));
  for (std::size_t i = 1; i + 1 < along_db.size(); ++i) CHECK(along_db[i + 1] - 2.0 * along_db[i] + along_db[i - 1] >= 0.0);

  std::vector<double> c;
  for (double s = 100.0; s <= 1300.0; s += 100.0) c.push_back(ergodic_capacity(cfg, s));
  for (std::size_t i = 1; i < c.size(); ++i) {
    CHECK(c[i - 1] >= 0.0);
    CHECK(c[i] > c[i - 1]);
    if (i + 1 < c.size()) CHECK(c[i + 1] - 2.0 * c[i] + c[i - 1] <= 1e-9);
  }
}

TEST_CASE("harvested power") {
  for (int type = 1; type <= 6; ++type) {
    CAPTURE(type);
    const auto cfg = with_type(type);
    const double g = cfg.harvest_gain();
    const double hi = g * 40.0 * std::max(cfg.turbulence.exp_beta, cfg.turbulence.gg_b);
    const double mean =
        testing::integrate_log([&](double p) { return p * harvested_power_pdf(cfg, p); }, g * 1e-10, hi, 50);
    CHECK(harvested_power_mean(cfg) == doctest::Approx(mean).epsilon(1e-4));
  }
  LinkConfig cfg;
  cfg.split_rho = 1.0;
  CHECK(harvested_power_mean(cfg) == 0.0);
  CHECK_THROWS_AS(harvested_power_pdf(cfg, 1.0), DomainError);
  cfg.split_rho = 0.0;
  const double full = harvested_power_mean(cfg);
  cfg.split_rho = 0.5;
  CHECK(harvested_power_mean(cfg) == doctest::Approx(0.5 * full).epsilon(1e-14));
}
