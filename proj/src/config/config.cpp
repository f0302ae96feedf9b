#include "slipt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "slipt/errors.hpp"

namespace slipt {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const ConfigEntry& e) {
  double value = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError(e.key, "expected a finite number, got '" + e.value + "'", e.line);
  return value;
}

enum class Domain { any, nonneg, positive, unit_closed, unit_open };

void check(const ConfigEntry& e, double v, Domain d) {
  const char* rule = nullptr;
  switch (d) {
    case Domain::any:
      return;
    case Domain::nonneg:
      if (!(v >= 0.0)) rule = "must be >= 0";
      break;
    case Domain::positive:
      if (!(v > 0.0)) rule = "must be > 0";
      break;
    case Domain::unit_closed:
      if (!(v >= 0.0 && v <= 1.0)) rule = "must lie in [0, 1]";
      break;
    case Domain::unit_open:
      if (!(v > 0.0 && v < 1.0)) rule = "must lie in (0, 1)";
      break;
  }
  if (rule) throw ConfigError(e.key, std::string(rule) + " (got " + e.value + ")", e.line);
}

struct PointingInputs {
  double aperture;
  double waist;
  double sigma;
  std::optional<double> multiple;
};

struct Field {
  std::string_view key;
  Domain domain;
  std::function<void(LinkConfig&, PointingInputs&, double)> set;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"link.distance_m", Domain::nonneg, [](auto& c, auto&, double v) { c.distance_m = v; }},
      {"link.tx_power_dbw", Domain::any, [](auto& c, auto&, double v) { c.tx_power_w = db_to_linear(v); }},
      {"link.tx_power_w", Domain::nonneg, [](auto& c, auto&, double v) { c.tx_power_w = v; }},
      {"link.split_rho", Domain::unit_closed, [](auto& c, auto&, double v) { c.split_rho = v; }},
      {"link.eff_pv", Domain::unit_open, [](auto& c, auto&, double v) { c.eff_pv = v; }},
      {"link.eff_tx", Domain::unit_open, [](auto& c, auto&, double v) { c.eff_tx = v; }},
      {"link.eff_rx_sub", Domain::unit_open, [](auto& c, auto&, double v) { c.eff_rx_sub = v; }},
      {"link.noise_var_fwd", Domain::positive, [](auto& c, auto&, double v) { c.noise_var_fwd = v; }},
      {"link.noise_var_ret", Domain::positive, [](auto& c, auto&, double v) { c.noise_var_ret = v; }},
      {"link.gamma_th_db", Domain::any, [](auto& c, auto&, double v) { c.snr_threshold = db_to_linear(v); }},
      {"link.gamma_th_linear", Domain::positive, [](auto& c, auto&, double v) { c.snr_threshold = v; }},
      {"water.absorption_per_m", Domain::nonneg, [](auto& c, auto&, double v) { c.water.absorption = v; }},
      {"water.scattering_per_m", Domain::nonneg, [](auto& c, auto&, double v) { c.water.scattering = v; }},
      {"water.wavelength_nm", Domain::positive, [](auto& c, auto&, double v) { c.water.wavelength_nm = v; }},
      {"turbulence.mix_alpha", Domain::unit_closed, [](auto& c, auto&, double v) { c.turbulence.mix_alpha = v; }},
      {"turbulence.exp_beta", Domain::positive, [](auto& c, auto&, double v) { c.turbulence.exp_beta = v; }},
      {"turbulence.gg_a", Domain::positive, [](auto& c, auto&, double v) { c.turbulence.gg_a = v; }},
      {"turbulence.gg_b", Domain::positive, [](auto& c, auto&, double v) { c.turbulence.gg_b = v; }},
      {"turbulence.gg_c", Domain::positive, [](auto& c, auto&, double v) { c.turbulence.gg_c = v; }},
      {"pointing.aperture_radius_m", Domain::positive, [](auto&, auto& p, double v) { p.aperture = v; }},
      {"pointing.beam_waist_m", Domain::positive, [](auto&, auto& p, double v) { p.waist = v; }},
      {"pointing.jitter_sigma_m", Domain::nonneg, [](auto&, auto& p, double v) { p.sigma = v; }},
      {"pointing.jitter_multiple", Domain::nonneg, [](auto&, auto& p, double v) { p.multiple = v; }},
  };
  return table;
}

// Pairs of keys that set the same quantity.
constexpr std::pair<std::string_view, std::string_view> kExclusive[] = {
    {"link.tx_power_dbw", "link.tx_power_w"},
    {"link.gamma_th_db", "link.gamma_th_linear"},
    {"pointing.jitter_sigma_m", "pointing.jitter_multiple"},
};

bool has_prefix(std::string_view key, std::string_view prefix) { return key.starts_with(prefix); }

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::string format_number(double x) { return fmt::format("{}", x); }

ConfigDocument ConfigDocument::parse(std::istream& in) {
  ConfigDocument doc;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view view(raw);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const std::string content = trim(view);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("", "expected 'key = value', got '" + content + "'", line);
    ConfigEntry e{trim(std::string_view(content).substr(0, eq)), trim(std::string_view(content).substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("", "missing key before '='", line);
    if (e.value.empty()) throw ConfigError(e.key, "missing value", line);
    if (const auto* prev = doc.find(e.key))
      throw ConfigError(e.key, "duplicate key (first set on line " + std::to_string(prev->line) + ")", line);
    doc.entries_.push_back(std::move(e));
  }
  return doc;
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

ConfigDocument ConfigDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  return parse(in);
}

const ConfigEntry* ConfigDocument::find(std::string_view key) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.key == key; });
  return it == entries_.end() ? nullptr : &*it;
}

std::optional<double> ConfigDocument::number(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return parse_number(*e);
}

std::optional<std::string> ConfigDocument::text(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

void ConfigDocument::reject_unknown(const std::vector<std::string_view>& prefixes) const {
  for (const auto& e : entries_) {
    const bool known = std::any_of(prefixes.begin(), prefixes.end(), [&](auto p) { return has_prefix(e.key, p); });
    if (!known) throw ConfigError(e.key, "unknown key", e.line);
  }
}

LinkConfig apply_link_settings(const ConfigDocument& doc, const LinkConfig& base) {
  LinkConfig cfg = base;
  PointingInputs pointing{base.pointing.aperture_radius(), base.pointing.beam_waist(),
                          base.pointing.jitter_sigma(), std::nullopt};

  for (auto [first, second] : kExclusive) {
    if (doc.find(first) && doc.find(second)) {
      const auto* e = doc.find(second);
      throw ConfigError(e->key, "conflicts with " + std::string(first), e->line);
    }
  }

  for (const auto& e : doc.entries()) {
    const bool link_key = has_prefix(e.key, "link.") || has_prefix(e.key, "water.") ||
                          has_prefix(e.key, "turbulence.") || has_prefix(e.key, "pointing.");
    if (!link_key) continue;
    const auto it = std::find_if(fields().begin(), fields().end(), [&](const Field& f) { return f.key == e.key; });
    if (it == fields().end()) throw ConfigError(e.key, "unknown key", e.line);
    const double v = parse_number(e);
    check(e, v, it->domain);
    it->set(cfg, pointing, v);
  }

  if (pointing.multiple) pointing.sigma = *pointing.multiple * pointing.aperture;
  cfg.pointing = PointingGeometry(pointing.aperture, pointing.waist, pointing.sigma);

  if (!(cfg.water.absorption + cfg.water.scattering > 0.0)) {
    const auto* e = doc.find("water.absorption_per_m");
    if (!e) e = doc.find("water.scattering_per_m");
    throw ConfigError(e ? e->key : "water", "absorption and scattering cannot both be zero", e ? e->line : 0);
  }
  return cfg;
}

namespace {

void put(std::string& out, std::string_view key, double v) {
  out += fmt::format("{} = {}\n", key, format_number(v));
}

// Writes the dB key when it reads back to the identical linear value.
void put_db(std::string& out, std::string_view db_key, std::string_view linear_key, double linear) {
  const double db = std::stod(format_number(linear_to_db(linear)));
  if (linear > 0.0 && db_to_linear(db) == linear)
    put(out, db_key, db);
  else
    put(out, linear_key, linear);
}

}  // namespace

std::string to_config_text(const WaterOptics& w) {
  std::string out;
  put(out, "water.absorption_per_m", w.absorption);
  put(out, "water.scattering_per_m", w.scattering);
  put(out, "water.wavelength_nm", w.wavelength_nm);
  return out;
}

std::string to_config_text(const EggParams& p) {
  std::string out;
  put(out, "turbulence.mix_alpha", p.mix_alpha);
  put(out, "turbulence.exp_beta", p.exp_beta);
  put(out, "turbulence.gg_a", p.gg_a);
  put(out, "turbulence.gg_b", p.gg_b);
  put(out, "turbulence.gg_c", p.gg_c);
  return out;
}

std::string to_config_text(const LinkConfig& c) {
  std::string out;
  put(out, "link.distance_m", c.distance_m);
  put_db(out, "link.tx_power_dbw", "link.tx_power_w", c.tx_power_w);
  put(out, "link.split_rho", c.split_rho);
  put(out, "link.eff_pv", c.eff_pv);
  put(out, "link.eff_tx", c.eff_tx);
  put(out, "link.eff_rx_sub", c.eff_rx_sub);
  put(out, "link.noise_var_fwd", c.noise_var_fwd);
  put(out, "link.noise_var_ret", c.noise_var_ret);
  put_db(out, "link.gamma_th_db", "link.gamma_th_linear", c.snr_threshold);
  out += to_config_text(c.water);
  out += to_config_text(c.turbulence);
  put(out, "pointing.aperture_radius_m", c.pointing.aperture_radius());
  put(out, "pointing.beam_waist_m", c.pointing.beam_waist());
  put(out, "pointing.jitter_sigma_m", c.pointing.jitter_sigma());
  return out;
}

}  // namespace slipt
