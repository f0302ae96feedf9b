#include "slipt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "slipt/errors.hpp"
#include "slipt/kernels.hpp"
#include "slipt/parallel.hpp"

namespace slipt::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr std::array<std::uint64_t, 4> kJump = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
constexpr std::array<std::uint64_t, 4> kLongJump = {0x76e15d3efefdcbbfULL, 0xc5004e441c522fb3ULL,
                                                    0x77710069854ee241ULL, 0x39109bb02acbe635ULL};

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

Xoshiro256pp::result_type Xoshiro256pp::operator()() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

void Xoshiro256pp::apply(const std::array<std::uint64_t, 4>& poly) {
  std::array<std::uint64_t, 4> acc{};
  for (std::uint64_t word : poly) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b))
        for (int i = 0; i < 4; ++i) acc[i] ^= s_[i];
      (*this)();
    }
  }
  s_ = acc;
}

void Xoshiro256pp::jump() { apply(kJump); }
void Xoshiro256pp::long_jump() { apply(kLongJump); }

namespace {

// Fills `count` samples; sample i of block b is produced by draw(rng) with
// the block's own generator.
template <class MakeDraw>
std::vector<double> generate(const SimOptions& opts, MakeDraw make_draw) {
  if (opts.num_samples == 0) throw DomainError("SimOptions: num_samples must be > 0");
  const std::size_t blocks = (opts.num_samples + kBlockSize - 1) / kBlockSize;

  Xoshiro256pp base(opts.seed);
  for (std::uint64_t k = 0; k < opts.stream_id; ++k) base.long_jump();
  std::vector<Xoshiro256pp> starts;
  starts.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    starts.push_back(base);
    base.jump();
  }

  std::vector<double> out(opts.num_samples);
  parallel_for(blocks, [&](std::size_t b) {
    Xoshiro256pp rng = starts[b];
    auto draw = make_draw();
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = std::min(begin + kBlockSize, opts.num_samples);
    for (std::size_t i = begin; i < end; ++i) out[i] = draw(rng);
  });
  return out;
}

struct TurbulenceDraw {
  explicit TurbulenceDraw(const EggParams& p)
      : alpha(p.mix_alpha), b(p.gg_b), inv_c(1.0 / p.gg_c), exponential(1.0 / p.exp_beta), gamma(p.gg_a, 1.0) {}

  double operator()(Xoshiro256pp& rng) {
    if (alpha >= 1.0) return exponential(rng);
    if (alpha <= 0.0) return b * std::pow(gamma(rng), inv_c);
    if (rng.uniform() < alpha) return exponential(rng);
    return b * std::pow(gamma(rng), inv_c);
  }

  double alpha;
  double b;
  double inv_c;
  std::exponential_distribution<double> exponential;
  std::gamma_distribution<double> gamma;
};

struct PointingDraw {
  explicit PointingDraw(const PointingGeometry& g)
      : a0(g.a0()),
        degenerate(g.degenerate()),
        inv_we2(1.0 / (g.omega_e() * g.omega_e())),
        // Rayleigh(sigma) is Weibull(shape 2, scale sigma sqrt 2)
        radius(2.0, degenerate ? 1.0 : g.jitter_sigma() * std::sqrt(2.0)) {}

  double operator()(Xoshiro256pp& rng) {
    if (degenerate) return a0;
    const double r = radius(rng);
    return a0 * std::exp(-2.0 * r * r * inv_we2);
  }

  double a0;
  bool degenerate;
  double inv_we2;
  std::weibull_distribution<double> radius;
};

struct HopDraw {
  explicit HopDraw(const LinkConfig& cfg)
      : ha(attenuation_gain(cfg.water, cfg.distance_m)), turbulence(cfg.turbulence), pointing(cfg.pointing) {}

  double operator()(Xoshiro256pp& rng) {
    const double ht = turbulence(rng);
    const double hp = pointing(rng);
    return ha * ht * hp;
  }

  double ha;
  TurbulenceDraw turbulence;
  PointingDraw pointing;
};

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double f = pos - static_cast<double>(i);
  return sorted[i] + f * (sorted[i + 1] - sorted[i]);
}

Histogram make_histogram(const std::vector<double>& sorted) {
  constexpr std::size_t kBins = 200;
  Histogram hist;
  double lo = quantile(sorted, 1e-4);
  double hi = quantile(sorted, 1.0 - 1e-4);
  const bool log_bins = lo > 0.0 && hi > lo;
  if (!(hi > lo)) hi = lo + std::max(1.0, std::abs(lo));

  hist.edges.resize(kBins + 1);
  for (std::size_t i = 0; i <= kBins; ++i) {
    const double f = static_cast<double>(i) / kBins;
    hist.edges[i] = log_bins ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  hist.edges.front() = lo;
  hist.edges.back() = hi;
  hist.counts.assign(kBins, 0);
  for (double x : sorted) {
    const auto it = std::upper_bound(hist.edges.begin(), hist.edges.end(), x);
    std::ptrdiff_t bin = (it - hist.edges.begin()) - 1;
    bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(kBins) - 1);
    ++hist.counts[static_cast<std::size_t>(bin)];
  }
  return hist;
}

}  // namespace

EmpiricalSummary summarize(std::vector<double> samples) {
  if (samples.empty()) throw DomainError("summarize: no samples");
  EmpiricalSummary s;
  s.count = samples.size();
  const auto m = kernels::moments(samples);
  const double n = static_cast<double>(s.count);
  s.mean = m.sum / n;
  s.variance = s.count > 1 ? m.sum_sq_dev / (n - 1.0) : 0.0;
  s.std_error = std::sqrt(s.variance / n);
  std::sort(samples.begin(), samples.end());
  s.histogram = make_histogram(samples);
  s.ecdf = std::move(samples);
  return s;
}

std::vector<double> sample_ht(const EggParams& params, const SimOptions& opts) {
  params.validate();
  return generate(opts, [&] { return TurbulenceDraw(params); });
}

std::vector<double> sample_hp(const PointingGeometry& geom, const SimOptions& opts) {
  return generate(opts, [&] { return PointingDraw(geom); });
}

std::vector<double> sample_h1(const LinkConfig& cfg, const SimOptions& opts) {
  cfg.validate();
  return generate(opts, [&] { return HopDraw(cfg); });
}

std::vector<double> sample_h(const LinkConfig& cfg, const SimOptions& opts) {
  cfg.validate();
  return generate(opts, [&] {
    return [hop = HopDraw(cfg)](Xoshiro256pp& rng) mutable {
      const double h1 = hop(rng);
      const double h2 = hop(rng);
      return h1 * h2;
    };
  });
}

std::vector<double> sample_gamma_u(const LinkConfig& cfg, const SimOptions& opts,
                                   std::optional<double> mean_snr) {
  auto h = sample_h(cfg, opts);
  kernels::scale(h, mean_snr.value_or(cfg.mean_snr()), h);
  return h;
}

EmpiricalSummary estimate(Metric metric, const LinkConfig& cfg, double mean_snr,
                          const std::optional<ModulationSpec>& modulation, const SimOptions& opts) {
  switch (metric) {
    case Metric::op: {
      auto g = sample_gamma_u(cfg, opts, mean_snr);
      for (double& x : g) x = x < cfg.snr_threshold ? 1.0 : 0.0;
      return summarize(std::move(g));
    }
    case Metric::ber: {
      if (!modulation) throw DomainError("estimate: BER needs a modulation");
      auto g = sample_gamma_u(cfg, opts, mean_snr);
      const double delta = modulation->delta_b();
      const auto& qs = modulation->q_list();
      for (double& x : g) {
        double acc = 0.0;
        for (double q : qs) acc += 0.5 * std::erfc(std::sqrt(q * x));
        x = delta * acc;
      }
      return summarize(std::move(g));
    }
    case Metric::capacity: {
      auto g = sample_gamma_u(cfg, opts, mean_snr);
      for (double& x : g) x = std::log1p(x);
      return summarize(std::move(g));
    }
    case Metric::harvested_mean: {
      auto h = sample_h1(cfg, opts);
      kernels::scale(h, cfg.harvest_gain(), h);
      return summarize(std::move(h));
    }
  }
  throw DomainError("estimate: unknown metric");
}

KsBound ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf,
                    std::size_t grid_points) {
  if (sorted.empty()) throw DomainError("ks_distance: no samples");
  if (grid_points < 2) throw DomainError("ks_distance: need at least two grid points");
  const std::size_t n = sorted.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> grid;
  grid.reserve(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const std::size_t idx = static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * static_cast<double>(n - 1) / static_cast<double>(grid_points - 1)));
    if (grid.empty() || sorted[idx] > grid.back()) grid.push_back(sorted[idx]);
  }

  std::vector<double> f(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { f[i] = cdf(grid[i]); });

  auto below = [&](double x) {  // F_n(x-)
    return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) * inv_n;
  };
  auto at = [&](double x) {  // F_n(x)
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) * inv_n;
  };

  KsBound out;
  // below the smallest sample F_n = 0; above the largest F_n = 1
  out.upper = std::max(f.front(), 1.0 - f.back());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double left = below(grid[i]);
    const double right = at(grid[i]);
    const double gap = std::max(std::abs(right - f[i]), std::abs(left - f[i]));
    out.lower = std::max(out.lower, gap);
    out.upper = std::max(out.upper, gap);
    if (i + 1 < grid.size()) {
      const double next_left = below(grid[i + 1]);
      out.upper = std::max({out.upper, next_left - f[i], f[i + 1] - right});
    }
  }
  return out;
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("correlation: need two equally long sequences");
  const auto mx = kernels::moments(x);
  const auto my = kernels::moments(y);
  const double ax = mx.sum / static_cast<double>(x.size());
  const double ay = my.sum / static_cast<double>(y.size());
  double cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - ax) * (y[i] - ay);
  return cov / std::sqrt(mx.sum_sq_dev * my.sum_sq_dev);
}

}  // namespace slipt::mc
