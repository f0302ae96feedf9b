#include <algorithm>
#include <cmath>
#include <sstream>

#include "slipt/cli.hpp"
#include "slipt/errors.hpp"
#include "slipt/parallel.hpp"
#include "slipt/presets.hpp"

namespace slipt::cli {

namespace {

struct VariableName {
  SweepVariable variable;
  std::string_view name;
};

constexpr VariableName kVariables[] = {
    {SweepVariable::mean_snr_db, "mean_snr_db"},       {SweepVariable::distance_m, "distance_m"},
    {SweepVariable::tx_power_db, "tx_power_db"},       {SweepVariable::jitter_multiple, "jitter_multiple"},
    {SweepVariable::split_rho, "split_rho"},           {SweepVariable::water_type, "water_type"},
    {SweepVariable::modulation, "modulation"},
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

double to_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError(key, "expected a number, got '" + text + "'");
  return v;
}

}  // namespace

SweepVariable parse_sweep_variable(std::string_view name) {
  for (const auto& v : kVariables)
    if (v.name == name) return v.variable;
  std::string list;
  for (const auto& v : kVariables) list += (list.empty() ? "" : ", ") + std::string(v.name);
  throw ConfigError("sweep.variable", "unknown sweep variable '" + std::string(name) + "' (expected " + list + ")");
}

std::string sweep_variable_name(SweepVariable variable) {
  for (const auto& v : kVariables)
    if (v.variable == variable) return std::string(v.name);
  return "?";
}

SweepSpec SweepSpec::from_document(const ConfigDocument& doc) {
  doc.reject_unknown({"sweep.", "metric.", "link.", "water.", "turbulence.", "pointing."});
  for (const auto& e : doc.entries()) {
    static const std::vector<std::string_view> known = {"sweep.variable", "sweep.start", "sweep.stop", "sweep.steps",
                                                        "sweep.values",   "sweep.preset", "metric.mean_snr_db",
                                                        "metric.modulation", "metric.order"};
    if ((e.key.starts_with("sweep.") || e.key.starts_with("metric.")) &&
        std::find(known.begin(), known.end(), e.key) == known.end())
      throw ConfigError(e.key, "unknown key", e.line);
  }

  SweepSpec spec;
  const auto variable = doc.find("sweep.variable");
  if (!variable) throw ConfigError("sweep.variable", "missing");
  try {
    spec.variable = parse_sweep_variable(variable->value);
  } catch (const ConfigError& e) {
    throw ConfigError("sweep.variable", e.what(), variable->line);
  }

  LinkConfig base = system_preset(doc.text("sweep.preset").value_or("system/defaults"));
  spec.base.link = apply_link_settings(doc, base);
  if (const auto snr = doc.number("metric.mean_snr_db")) spec.base.mean_snr = db_to_linear(*snr);
  if (const auto* mod = doc.find("metric.modulation")) {
    try {
      spec.base.modulation = ModulationSpec::parse(mod->value);
    } catch (const DomainError& e) {
      throw ConfigError(mod->key, e.what(), mod->line);
    }
  }
  if (const auto order = doc.number("metric.order")) spec.base.moment_order = *order;

  const auto* values = doc.find("sweep.values");
  const bool has_range = doc.find("sweep.start") || doc.find("sweep.stop") || doc.find("sweep.steps");
  if (values && has_range) throw ConfigError("sweep.values", "give either sweep.values or a start/stop/steps range", values->line);
  if (values) {
    spec.values = split_list(values->value);
    if (spec.values.empty()) throw ConfigError("sweep.values", "empty list", values->line);
  } else {
    if (spec.variable == SweepVariable::modulation)
      throw ConfigError("sweep.values", "modulation sweeps need an explicit list");
    const auto start = doc.number("sweep.start");
    const auto stop = doc.number("sweep.stop");
    const auto steps = doc.number("sweep.steps");
    if (!start || !stop || !steps) throw ConfigError("sweep.start", "a range needs sweep.start, sweep.stop and sweep.steps");
    const auto* steps_entry = doc.find("sweep.steps");
    if (*steps < 2 || *steps != std::floor(*steps) || *steps > 100000)
      throw ConfigError("sweep.steps", "must be an integer >= 2", steps_entry->line);
    const int n = static_cast<int>(*steps);
    for (int i = 0; i < n; ++i) {
      double v = *start + (*stop - *start) * i / (n - 1);
      if (i == n - 1) v = *stop;
      spec.values.push_back(format_number(v));
    }
  }
  // reject out-of-domain points up front
  for (const auto& v : spec.values) sweep_point(spec, v);
  return spec;
}

MetricRequest sweep_point(const SweepSpec& spec, const std::string& value) {
  MetricRequest r = spec.base;
  const std::string key = "sweep." + sweep_variable_name(spec.variable);
  auto override_link = [&](const std::string& link_key, double v) {
    r.link = apply_link_settings(ConfigDocument::parse(link_key + " = " + format_number(v)), r.link);
  };
  try {
    switch (spec.variable) {
      case SweepVariable::mean_snr_db:
        r.mean_snr = db_to_linear(to_number(key, value));
        break;
      case SweepVariable::distance_m:
        override_link("link.distance_m", to_number(key, value));
        break;
      case SweepVariable::tx_power_db:
        override_link("link.tx_power_dbw", to_number(key, value));
        break;
      case SweepVariable::jitter_multiple:
        override_link("pointing.jitter_multiple", to_number(key, value));
        break;
      case SweepVariable::split_rho:
        override_link("link.split_rho", to_number(key, value));
        break;
      case SweepVariable::water_type: {
        const double t = to_number(key, value);
        if (t != std::floor(t) || t < 1 || t > 6) throw ConfigError(key, "water type must be 1..6, got " + value);
        r.link.turbulence = egg_type(static_cast<int>(t));
        break;
      }
      case SweepVariable::modulation:
        r.modulation = ModulationSpec::parse(value);
        break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError(key, e.what());
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
  return r;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec, std::optional<std::size_t> mc_samples, std::uint64_t seed,
                                 bool timing) {
  std::vector<RunRecord> rows(spec.values.size());
  // Monte Carlo sampling parallelizes internally; analytic-only points run side by side.
  const unsigned workers = mc_samples ? 1u : worker_count();
  parallel_for(
      spec.values.size(),
      [&](std::size_t i) {
        RunRecord rec = evaluate(sweep_point(spec, spec.values[i]), mc_samples, seed, timing);
        rec.sweep_variable = sweep_variable_name(spec.variable);
        rec.value = spec.values[i];
        rows[i] = std::move(rec);
      },
      workers);
  return rows;
}

}  // namespace slipt::cli
