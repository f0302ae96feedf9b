#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "slipt/cli.hpp"
#include "slipt/errors.hpp"
#include "slipt/kernels.hpp"
#include "slipt/presets.hpp"

namespace slipt::cli {

namespace {

struct LinkFlags {
  std::string preset = "system/defaults";
  std::string config;
  std::optional<double> mean_snr_db;
  std::optional<double> distance;
  std::optional<double> rho;
  std::optional<double> tx_power_db;
  std::optional<double> jitter_multiple;
  std::optional<int> water_type;
  std::string water;
};

void add_link_flags(CLI::App& cmd, LinkFlags& f) {
  cmd.add_option("--preset", f.preset, "system preset to start from")->capture_default_str();
  cmd.add_option("--config", f.config, "key = value config file layered over the preset");
  cmd.add_option("--mean-snr-db", f.mean_snr_db, "mean return-link SNR in dB (default: from the link budget)");
  cmd.add_option("--distance", f.distance, "link distance in m");
  cmd.add_option("--rho", f.rho, "power-splitting factor in [0, 1]");
  cmd.add_option("--tx-power-db", f.tx_power_db, "transmit power in dBW");
  cmd.add_option("--jitter-multiple", f.jitter_multiple, "jitter sigma as a multiple of the aperture radius");
  cmd.add_option("--water-type", f.water_type, "turbulence fit for water type 1..6");
  cmd.add_option("--water", f.water, "water optics preset, e.g. coastal or water/coastal");
}

MetricRequest resolve(const LinkFlags& f) {
  MetricRequest r;
  r.link = system_preset(f.preset);

  ConfigDocument doc;
  if (!f.config.empty()) {
    doc = ConfigDocument::load(f.config);
    doc.reject_unknown({"link.", "water.", "turbulence.", "pointing.", "metric."});
    for (const auto& e : doc.entries())
      if (e.key.starts_with("metric.") && e.key != "metric.mean_snr_db" && e.key != "metric.modulation" &&
          e.key != "metric.order")
        throw ConfigError(e.key, "unknown key", e.line);
    r.link = apply_link_settings(doc, r.link);
    if (const auto snr = doc.number("metric.mean_snr_db")) r.mean_snr = db_to_linear(*snr);
    if (const auto* mod = doc.find("metric.modulation")) {
      try {
        r.modulation = ModulationSpec::parse(mod->value);
      } catch (const DomainError& e) {
        throw ConfigError(mod->key, e.what(), mod->line);
      }
    }
    if (const auto order = doc.number("metric.order")) r.moment_order = *order;
  }

  if (!f.water.empty()) {
    const std::string name = f.water.starts_with("water/") ? f.water : "water/" + f.water;
    r.link.water = water_preset(name);
  }
  if (f.water_type) {
    if (*f.water_type < 1 || *f.water_type > 6)
      throw ConfigError("--water-type", "must be 1..6, got " + std::to_string(*f.water_type));
    r.link.turbulence = egg_type(*f.water_type);
  }

  auto flag = [&](const char* name, const char* key, const std::optional<double>& v) {
    if (!v) return;
    try {
      r.link = apply_link_settings(ConfigDocument::parse(fmt::format("{} = {}", key, format_number(*v))), r.link);
    } catch (const ConfigError& e) {
      throw ConfigError(name, e.message());
    }
  };
  flag("--distance", "link.distance_m", f.distance);
  flag("--rho", "link.split_rho", f.rho);
  flag("--tx-power-db", "link.tx_power_dbw", f.tx_power_db);
  flag("--jitter-multiple", "pointing.jitter_multiple", f.jitter_multiple);
  if (f.mean_snr_db) r.mean_snr = db_to_linear(*f.mean_snr_db);
  try {
    r.link.validate();
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  return r;
}

std::ostream& output(const std::string& path, std::unique_ptr<std::ofstream>& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file) throw ConfigError("--out", "cannot open '" + path + "' for writing");
  return *file;
}

int exit_code(const std::vector<RunRecord>& rows) {
  const bool all_failed = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); });
  if (!all_failed) return kExitOk;
  const bool numeric = std::any_of(rows.begin(), rows.end(),
                                   [](const auto& r) { return r.error.starts_with("non-convergence"); });
  return numeric ? kExitNumeric : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analytic and Monte Carlo performance of a two-hop underwater optical SLIPT link", "slipt"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string out_path;
  std::optional<std::size_t> mc;
  std::string metric = "op";
  std::string modulation;
  std::optional<double> order;
  bool bits = false;
  bool timing = false;

  LinkFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "evaluate one metric at one operating point");
  add_link_flags(*eval, eval_flags);
  eval->add_option("--metric", metric, "op | ber | capacity | harvested-mean | moment | diversity")->capture_default_str();
  eval->add_option("--mc", mc, "also estimate by Monte Carlo with N samples");
  eval->add_option("--modulation", modulation, "ook, <M>-psk or <M>-qam (ber)");
  eval->add_option("--order", order, "moment order s (moment)");
  eval->add_flag("--bits", bits, "capacity in bits instead of nats");
  eval->add_flag("--timing", timing, "fill the runtime_s column");

  std::string sweep_path;
  auto* sweep = app.add_subcommand("sweep", "evaluate a metric over a parameter sweep");
  sweep->add_option("spec", sweep_path, "sweep specification file")->required();
  sweep->add_option("--metric", metric)->capture_default_str();
  sweep->add_option("--mc", mc, "also estimate by Monte Carlo with N samples per point");
  sweep->add_option("--modulation", modulation, "ook, <M>-psk or <M>-qam (ber)");
  sweep->add_option("--order", order, "moment order s (moment)");
  sweep->add_flag("--bits", bits, "capacity in bits instead of nats");
  sweep->add_flag("--timing", timing, "fill the runtime_s column (output is then not reproducible)");

  LinkFlags validate_flags;
  std::size_t samples = 1'000'000;
  auto* validate = app.add_subcommand("validate", "check closed forms against Monte Carlo");
  add_link_flags(*validate, validate_flags);
  validate->add_option("--samples", samples, "Monte Carlo samples per check (>= 10000)")->capture_default_str();

  auto* presets = app.add_subcommand("presets", "list the parameter presets");

  for (auto* cmd : {eval, sweep, validate, presets}) {
    cmd->add_option("--out", out_path, "output file (default: standard output)");
    if (cmd != presets) cmd->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    cmd->add_option("--format", format, "csv | jsonl (presets: text | jsonl)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::unique_ptr<std::ofstream> file;

    if (*presets) {
      std::ostream& os = output(out_path, file, out);
      if (format == "jsonl") {
        for (const auto& p : preset_catalog()) {
          nlohmann::ordered_json j;
          j["name"] = p.name;
          j["source"] = p.source;
          const std::string text = std::visit([](const auto& v) { return to_config_text(v); }, p.value);
          nlohmann::ordered_json values = nlohmann::ordered_json::object();
          const auto doc = ConfigDocument::parse(text);
          for (const auto& e : doc.entries()) values[e.key] = std::stod(e.value);
          j["values"] = values;
          os << j.dump() << '\n';
        }
      } else if (format == "text" || format == "csv") {
        for (const auto& p : preset_catalog()) os << describe(p) << '\n';
      } else {
        throw ConfigError("--format", "presets support text or jsonl");
      }
      return kExitOk;
    }

    if (*validate) {
      const auto r = resolve(validate_flags);
      const auto checks = run_validation(r.link, r.mean_snr, samples, seed);
      std::ostream& os = output(out_path, file, out);
      os << fmt::format("# seed={:#x} samples={} kernels={}\n", seed, samples,
                        kernels::isa_name(kernels::active_isa()));
      bool ok = true;
      for (const auto& c : checks) {
        os << fmt::format("{} {} {}\n", c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL"), c.name, c.detail);
        ok = ok && c.passed;
      }
      os << (ok ? "RESULT PASS\n" : "RESULT FAIL\n");
      return ok ? kExitOk : kExitFailure;
    }

    const OutputFormat fmt_kind = parse_format(format);
    const MetricKind metric_kind = parse_metric(metric);
    auto apply_metric_flags = [&](MetricRequest& r) {
      r.metric = metric_kind;
      if (!modulation.empty()) {
        try {
          r.modulation = ModulationSpec::parse(modulation);
        } catch (const DomainError& e) {
          throw ConfigError("--modulation", e.what());
        }
      }
      if (order) r.moment_order = *order;
      r.capacity_bits = bits;
    };

    if (*eval) {
      auto r = resolve(eval_flags);
      apply_metric_flags(r);
      if (mc && *mc == 0) throw ConfigError("--mc", "must be > 0");
      const RunRecord rec = evaluate(r, mc, seed, timing);
      std::ostream& os = output(out_path, file, out);
      write_header(os, fmt_kind, seed, "command=eval");
      write_record(os, fmt_kind, rec, seed);
      if (!rec.error.empty()) {
        err << "error: " << rec.error << '\n';
        return rec.error.starts_with("non-convergence") ? kExitNumeric : kExitFailure;
      }
      return kExitOk;
    }

    if (*sweep) {
      SweepSpec spec = SweepSpec::from_document(ConfigDocument::load(sweep_path));
      apply_metric_flags(spec.base);
      if (mc && *mc == 0) throw ConfigError("--mc", "must be > 0");
      const auto rows = run_sweep(spec, mc, seed, timing);
      std::ostream& os = output(out_path, file, out);
      write_header(os, fmt_kind, seed,
                   fmt::format("command=sweep variable={} metric={}", sweep_variable_name(spec.variable), metric));
      for (const auto& row : rows) write_record(os, fmt_kind, row, seed);
      return exit_code(rows);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnknownPresetError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace slipt::cli
