#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "slipt/cli.hpp"
#include "slipt/errors.hpp"
#include "slipt/montecarlo.hpp"

namespace slipt::cli {

namespace {

struct MetricName {
  MetricKind kind;
  std::string_view name;
};

constexpr MetricName kMetrics[] = {
    {MetricKind::op, "op"},
    {MetricKind::ber, "ber"},
    {MetricKind::capacity, "capacity"},
    {MetricKind::harvested_mean, "harvested-mean"},
    {MetricKind::moment, "moment"},
    {MetricKind::diversity, "diversity"},
};

double analytic_value(const MetricRequest& r) {
  const double snr = r.effective_mean_snr();
  switch (r.metric) {
    case MetricKind::op:
      return outage_probability(r.link, snr);
    case MetricKind::ber:
      return average_ber(r.link, snr, r.modulation.value_or(ModulationSpec(Scheme::ook)));
    case MetricKind::capacity: {
      const double nats = ergodic_capacity(r.link, snr);
      return r.capacity_bits ? nats / std::numbers::ln2 : nats;
    }
    case MetricKind::harvested_mean:
      return harvested_power_mean(r.link);
    case MetricKind::moment:
      return snr_moment(r.link, snr, r.moment_order);
    case MetricKind::diversity:
      return diversity_order(r.link);
  }
  throw DomainError("unknown metric");
}

std::optional<mc::EmpiricalSummary> simulate(const MetricRequest& r, std::size_t samples, std::uint64_t seed) {
  const mc::SimOptions opts{seed, samples, 0};
  const double snr = r.effective_mean_snr();
  switch (r.metric) {
    case MetricKind::op:
      return mc::estimate(mc::Metric::op, r.link, snr, std::nullopt, opts);
    case MetricKind::ber:
      return mc::estimate(mc::Metric::ber, r.link, snr, r.modulation.value_or(ModulationSpec(Scheme::ook)), opts);
    case MetricKind::capacity: {
      auto s = mc::estimate(mc::Metric::capacity, r.link, snr, std::nullopt, opts);
      if (r.capacity_bits) {
        s.mean /= std::numbers::ln2;
        s.std_error /= std::numbers::ln2;
      }
      return s;
    }
    case MetricKind::harvested_mean:
      return mc::estimate(mc::Metric::harvested_mean, r.link, snr, std::nullopt, opts);
    case MetricKind::moment: {
      auto g = mc::sample_gamma_u(r.link, opts, snr);
      for (double& x : g) x = std::pow(x, r.moment_order);
      return mc::summarize(std::move(g));
    }
    case MetricKind::diversity:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

MetricKind parse_metric(std::string_view name) {
  for (const auto& m : kMetrics)
    if (m.name == name) return m.kind;
  if (name == "harvested_mean") return MetricKind::harvested_mean;
  throw ConfigError("metric", "unknown metric '" + std::string(name) +
                                  "' (expected op, ber, capacity, harvested-mean, moment or diversity)");
}

std::string metric_name(MetricKind kind) {
  for (const auto& m : kMetrics)
    if (m.kind == kind) return std::string(m.name);
  return "?";
}

RunRecord evaluate(const MetricRequest& request, std::optional<std::size_t> mc_samples, std::uint64_t seed,
                   bool timing) {
  RunRecord rec;
  rec.metric = metric_name(request.metric);
  if (request.metric == MetricKind::ber && request.modulation) rec.metric += ":" + request.modulation->name();
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.analytic = analytic_value(request);
    if (mc_samples) {
      if (const auto s = simulate(request, *mc_samples, seed)) {
        rec.mc_mean = s->mean;
        rec.mc_stderr = s->std_error;
      }
    }
  } catch (const ConvergenceError& e) {
    rec.error = std::string("non-convergence: ") + e.what();
  } catch (const DomainError& e) {
    rec.error = std::string("domain: ") + e.what();
  }
  if (timing) rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "jsonl") return OutputFormat::jsonl;
  throw ConfigError("format", "expected csv or jsonl, got '" + std::string(name) + "'");
}

void write_header(std::ostream& out, OutputFormat format, std::uint64_t seed, const std::string& context) {
  if (format != OutputFormat::csv) return;
  out << fmt::format("# seed={:#x} {}\n", seed, context);
  out << "sweep_variable,value,metric,analytic,mc_mean,mc_stderr,runtime_s,error\n";
}

void write_record(std::ostream& out, OutputFormat format, const RunRecord& r, std::uint64_t seed) {
  if (format == OutputFormat::csv) {
    out << csv_escape(r.sweep_variable) << ',' << csv_escape(r.value) << ',' << csv_escape(r.metric) << ','
        << field(r.analytic) << ',' << field(r.mc_mean) << ',' << field(r.mc_stderr) << ','
        << field(r.runtime_s) << ',' << csv_escape(r.error) << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["sweep_variable"] = r.sweep_variable;
  j["value"] = r.value;
  j["metric"] = r.metric;
  auto put = [&](const char* key, const std::optional<double>& v) {
    j[key] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  put("analytic", r.analytic);
  put("mc_mean", r.mc_mean);
  put("mc_stderr", r.mc_stderr);
  put("runtime_s", r.runtime_s);
  if (!r.error.empty()) j["error"] = r.error;
  out << j.dump() << '\n';
}

}  // namespace slipt::cli
