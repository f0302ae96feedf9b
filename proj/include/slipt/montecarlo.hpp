#pragma once

// Seeded Monte Carlo simulator of the composite channel. Samples are drawn
// in fixed-size blocks, each block from its own jump-ahead sub-stream, so
// the output is bit-identical whatever the worker count.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slipt/channel.hpp"
#include "slipt/metrics.hpp"

namespace slipt::mc {

/// xoshiro256++ with the reference jump (2^128 steps) and long jump
/// (2^192 steps) polynomials.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  void jump();
  void long_jump();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool operator==(const Xoshiro256pp&) const = default;

 private:
  void apply(const std::array<std::uint64_t, 4>& poly);
  std::array<std::uint64_t, 4> s_;
};

struct SimOptions {
  std::uint64_t seed = 0xC0FFEE;
  std::size_t num_samples = 1'000'000;
  std::uint64_t stream_id = 0;
};

/// Samples per block; block b of stream k starts at long_jump^k jump^b.
inline constexpr std::size_t kBlockSize = 1 << 16;

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
};

struct EmpiricalSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  Histogram histogram;
  /// Sorted samples.
  std::vector<double> ecdf;
};

/// 200 bins between the 0.01% and 99.99% sample quantiles, log-spaced when
/// the samples are positive; samples outside are counted in the edge bins.
EmpiricalSummary summarize(std::vector<double> samples);

std::vector<double> sample_ht(const EggParams& params, const SimOptions& opts);
std::vector<double> sample_hp(const PointingGeometry& geom, const SimOptions& opts);
/// h1 = h_a h_t h_p.
std::vector<double> sample_h1(const LinkConfig& cfg, const SimOptions& opts);
/// h = h1 h2 from four independent draws per sample.
std::vector<double> sample_h(const LinkConfig& cfg, const SimOptions& opts);
/// gamma_u = mean_snr h; cfg.mean_snr() when mean_snr is empty.
std::vector<double> sample_gamma_u(const LinkConfig& cfg, const SimOptions& opts,
                                   std::optional<double> mean_snr = std::nullopt);

enum class Metric { op, ber, capacity, harvested_mean };

/// Per-sample estimator values summarized: outage indicator, conditional
/// BER, ln(1 + gamma_u), or harvested power in watts.
EmpiricalSummary estimate(Metric metric, const LinkConfig& cfg, double mean_snr,
                          const std::optional<ModulationSpec>& modulation, const SimOptions& opts);

/// Two-sided bounds on sup |F_n - F| for sorted samples, from F evaluated on
/// a grid of empirical quantiles: the true distance lies in [lower, upper].
struct KsBound {
  double lower = 0.0;
  double upper = 0.0;
};

KsBound ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf,
                    std::size_t grid_points = 1000);

/// Pearson correlation of two equally long sequences.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace slipt::mc
