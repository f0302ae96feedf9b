#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "slipt/channel.hpp"
#include "slipt/errors.hpp"
#include "slipt/metrics.hpp"
#include "slipt/montecarlo.hpp"
#include "slipt/presets.hpp"

using namespace slipt;
using namespace slipt::mc;

namespace {

// Reference xoshiro256++ seeded through splitmix64, written from the published algorithm.
struct Reference {
  std::uint64_t s[4];
  explicit Reference(std::uint64_t seed) {
    for (auto& w : s) {
      seed += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = seed;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }
  std::uint64_t next() {
    const std::uint64_t out = std::rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    return out;
  }
};

SimOptions options(std::size_t n, std::uint64_t stream = 0, std::uint64_t seed = 0xC0FFEE) {
  return SimOptions{seed, n, stream};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double ks_threshold(std::size_t n) { return std::max(0.005, 2.0 / std::sqrt(static_cast<double>(n))); }

}  // namespace

TEST_CASE("generator matches the reference algorithm") {
  for (std::uint64_t seed : {0ULL, 1ULL, 0xC0FFEEULL}) {
    Xoshiro256pp g(seed);
    Reference r(seed);
    for (int i = 0; i < 100; ++i) CHECK(g() == r.next());
  }
  Xoshiro256pp g(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = g.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("jumps produce distinct, reproducible states") {
  Xoshiro256pp a(7), b(7), c(7);
  a.jump();
  b.jump();
  CHECK(a == b);
  c.long_jump();
  CHECK_FALSE(a == c);
  CHECK_FALSE(a == Xoshiro256pp(7));
}

TEST_CASE("sampling is reproducible and independent of the worker count") {
  const LinkConfig cfg;
  const auto a = sample_h(cfg, options(200'000));
  const auto b = sample_h(cfg, options(200'000));
  CHECK(a == b);
  const auto prefix = sample_h(cfg, options(70'000));
  CHECK(std::equal(prefix.begin(), prefix.end(), a.begin()));
  const auto other_seed = sample_h(cfg, options(1000, 0, 1));
  CHECK_FALSE(std::equal(other_seed.begin(), other_seed.end(), a.begin()));
}

TEST_CASE("streams are uncorrelated") {
  const EggParams p = egg_type(1);
  constexpr std::size_t n = 200'000;
  const auto s0 = sample_ht(p, options(n, 0));
  const auto s1 = sample_ht(p, options(n, 1));
  const auto s2 = sample_ht(p, options(n, 2));
  const double bound = 3.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(correlation(s0, s1)) < bound);
  CHECK(std::abs(correlation(s1, s2)) < bound);
  CHECK(std::abs(correlation(s0, s2)) < bound);
}

TEST_CASE("turbulence sampler") {
  SUBCASE("exponential branch") {
    const EggParams p{1.0, 0.33, 1.0, 1.0, 1.0};
    const auto s = sample_ht(p, options(10'000'000));
    CHECK(mean_of(s) == doctest::Approx(0.33).epsilon(1e-3));
  }
  SUBCASE("mixture mean and KS") {
    for (int type = 1; type <= 6; ++type) {
      CAPTURE(type);
      const EggParams p = egg_type(type);
      auto s = sample_ht(p, options(1'000'000, 3));
      const auto summary = summarize(s);
      CHECK(std::abs(summary.mean - p.mean()) < 4.0 * summary.std_error);
      const auto ks = ks_distance(summary.ecdf, [&](double x) { return egg_cdf(p, x); }, 20'000);
      CHECK(ks.upper < 0.002 + 1.0 / 20'000);
    }
  }
}

TEST_CASE("pointing sampler") {
  const PointingGeometry g(0.05, 0.1, 0.025);
  auto s = summarize(sample_hp(g, options(1'000'000)));
  const double mu = g.mu_s_sq();
  CHECK(std::abs(s.mean - g.a0() * mu / (1.0 + mu)) < 4.0 * s.std_error);
  CHECK(s.ecdf.back() <= g.a0());
  CHECK(ks_distance(s.ecdf, [&](double x) { return pointing_cdf(g, x); }, 20'000).upper < 0.002 + 1.0 / 20'000);

  const PointingGeometry still(0.05, 0.1, 0.0);
  for (double x : sample_hp(still, options(1000))) CHECK(x == still.a0());
}

TEST_CASE("composite samplers agree with the closed-form laws") {
  const LinkConfig cfg;
  constexpr std::size_t n = 1'000'000;
  const auto h1 = h1_law(cfg);
  const auto h = h_law(cfg);

  auto s1 = summarize(sample_h1(cfg, options(n, 2)));
  CHECK(ks_distance(s1.ecdf, [&](double x) { return h1.cdf(x); }).upper < ks_threshold(n));
  CHECK(std::abs(s1.mean - h1.moment(1.0)) < 4.0 * s1.std_error);

  auto s = summarize(sample_h(cfg, options(n, 3)));
  CHECK(ks_distance(s.ecdf, [&](double x) { return h.cdf(x); }).upper < ks_threshold(n));

  const double snr = cfg.mean_snr();
  auto g = summarize(sample_gamma_u(cfg, options(n, 4)));
  CHECK(ks_distance(g.ecdf, [&](double x) { return snr_cdf(cfg, x, snr); }).upper < ks_threshold(n));
  const double e1 = h1.moment(1.0);
  CHECK(std::abs(g.mean / snr - e1 * e1) < 4.0 * g.std_error / snr);
}

TEST_CASE("BER estimator is the erfc average") {
  const LinkConfig cfg;
  const ModulationSpec mod = ModulationSpec::parse("16-psk");
  const auto opts = options(50'000, 6);
  const auto est = estimate(Metric::ber, cfg, 3000.0, mod, opts);
  const auto gamma = sample_gamma_u(cfg, opts, 3000.0);
  double acc = 0.0;
  for (double x : gamma) {
    double term = 0.0;
    for (double q : mod.q_list()) term += 0.5 * std::erfc(std::sqrt(q * x));
    acc += mod.delta_b() * term;
  }
  CHECK(est.mean == doctest::Approx(acc / static_cast<double>(gamma.size())).epsilon(1e-12));
  CHECK_THROWS_AS(estimate(Metric::ber, cfg, 3000.0, std::nullopt, opts), DomainError);
}

TEST_CASE("common random numbers keep simulated outage monotone in mean SNR") {
  const LinkConfig cfg;
  double prev = 1.0;
  for (double db = 0.0; db <= 40.0; db += 5.0) {
    const double p = estimate(Metric::op, cfg, std::pow(10.0, db / 10.0), std::nullopt, options(100'000)).mean;
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("zero split gives zero SNR and zero harvested power") {
  LinkConfig cfg;
  cfg.split_rho = 1.0;
  for (double x : sample_gamma_u(cfg, options(1000))) CHECK(x == 0.0);
  const auto e = estimate(Metric::harvested_mean, cfg, 1.0, std::nullopt, options(1000));
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("summary statistics") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(i);
  const auto s = summarize(v);
  CHECK(s.count == 1000);
  CHECK(s.mean == doctest::Approx(500.5));
  CHECK(s.variance == doctest::Approx(1000.0 * 1001.0 / 12.0));
  CHECK(std::is_sorted(s.ecdf.begin(), s.ecdf.end()));
  std::uint64_t total = 0;
  for (auto c : s.histogram.counts) total += c;
  CHECK(total == 1000);
  CHECK(s.histogram.edges.size() == s.histogram.counts.size() + 1);
  CHECK_THROWS_AS(summarize({}), DomainError);
}

TEST_CASE("KS bounds bracket the exact distance") {
  // uniform samples on a grid, checked against the uniform CDF: exact distance 1/n
  std::vector<double> v;
  const int n = 5000;
  for (int i = 1; i <= n; ++i) v.push_back(static_cast<double>(i) / n);
  const auto ks = ks_distance(v, [](double x) { return std::clamp(x, 0.0, 1.0); }, 5000);
  CHECK(ks.lower <= 1.0 / n + 1e-12);
  CHECK(ks.upper >= 1.0 / n - 1e-12);
  CHECK(ks.upper <= 2.0 / n);
}
