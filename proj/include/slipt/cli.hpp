#pragma once

// Command-line front end: single evaluations, parameter sweeps, analytic
// versus Monte Carlo validation and the preset listing.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slipt/channel.hpp"
#include "slipt/config.hpp"
#include "slipt/metrics.hpp"

namespace slipt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

enum class MetricKind { op, ber, capacity, harvested_mean, moment, diversity };

MetricKind parse_metric(std::string_view name);
std::string metric_name(MetricKind kind);

/// Everything needed to evaluate one metric at one operating point.
struct MetricRequest {
  MetricKind metric = MetricKind::op;
  LinkConfig link;
  /// Linear mean SNR; the link budget value when empty.
  std::optional<double> mean_snr;
  std::optional<ModulationSpec> modulation;
  double moment_order = 1.0;
  bool capacity_bits = false;

  double effective_mean_snr() const { return mean_snr.value_or(link.mean_snr()); }
};

struct RunRecord {
  std::string sweep_variable = "none";
  std::string value;
  std::string metric;
  std::optional<double> analytic;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<double> runtime_s;
  std::string error;
};

/// Evaluates the closed form and, when mc_samples is set, the Monte Carlo
/// estimate with the given seed. Numerical and domain failures are
/// reported in RunRecord::error.
RunRecord evaluate(const MetricRequest& request, std::optional<std::size_t> mc_samples, std::uint64_t seed,
                   bool timing);

enum class OutputFormat { csv, jsonl };

OutputFormat parse_format(std::string_view name);
void write_header(std::ostream& out, OutputFormat format, std::uint64_t seed, const std::string& context);
void write_record(std::ostream& out, OutputFormat format, const RunRecord& record, std::uint64_t seed);

enum class SweepVariable { mean_snr_db, distance_m, tx_power_db, jitter_multiple, split_rho, water_type, modulation };

SweepVariable parse_sweep_variable(std::string_view name);
std::string sweep_variable_name(SweepVariable v);

/// Sweep file: sweep.variable plus either sweep.start / sweep.stop /
/// sweep.steps or a comma-separated sweep.values; metric.mean_snr_db,
/// metric.modulation and metric.order fix the remaining inputs; link
/// settings override the base preset named by sweep.preset.
struct SweepSpec {
  SweepVariable variable = SweepVariable::mean_snr_db;
  std::vector<std::string> values;
  MetricRequest base;

  static SweepSpec from_document(const ConfigDocument& doc);
};

/// Request for one sweep point; ConfigError for values outside the domain.
MetricRequest sweep_point(const SweepSpec& spec, const std::string& value);

std::vector<RunRecord> run_sweep(const SweepSpec& spec, std::optional<std::size_t> mc_samples,
                                 std::uint64_t seed, bool timing);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

/// KS distances and metric agreement between closed forms and simulation.
std::vector<ValidationCheck> run_validation(const LinkConfig& link, std::optional<double> mean_snr,
                                            std::size_t samples, std::uint64_t seed);

/// Entry point of the slipt executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slipt::cli
