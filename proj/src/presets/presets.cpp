#include "slipt/presets.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "slipt/config.hpp"
#include "slipt/errors.hpp"

namespace slipt {

namespace {

constexpr const char* kWaterSource = "Jerlov water classes at 450 nm";
constexpr const char* kEggSource = "mixture EGG fits to water-tank measurements";
constexpr const char* kSystemSource = "default link budget";

LinkConfig make_defaults() {
  constexpr double aperture = 0.05;
  LinkConfig c;
  c.distance_m = 30.0;
  c.tx_power_w = db_to_linear(20.0);
  c.split_rho = 0.8;
  c.eff_pv = 0.2;
  c.eff_tx = 0.8;
  c.eff_rx_sub = 0.9;
  c.noise_var_fwd = 2.88e-3;
  c.noise_var_ret = 2.88e-3;
  c.snr_threshold = db_to_linear(2.0);
  c.water = {0.014, 0.003, 450.0};
  c.turbulence = {0.2130, 0.3291, 1.4299, 1.1817, 17.1984};
  // beam waist and jitter are specified as multiples of the aperture radius
  c.pointing = PointingGeometry(aperture, 2.0 * aperture, 0.5 * aperture);
  return c;
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  auto water = [&](const char* name, double a, double b) {
    out.push_back({std::string("water/") + name, kWaterSource, WaterOptics{a, b, 450.0}});
  };
  water("very-clear", 0.008, 0.002);
  water("clear-ocean", 0.014, 0.003);
  water("intermediate", 0.023, 0.004);
  water("coastal", 0.059, 0.009);
  water("turbid-coastal", 0.100, 0.020);

  auto egg = [&](const std::string& name, EggParams p) { out.push_back({"egg/" + name, kEggSource, p}); };
  egg("type-1", {0.21, 0.33, 1.4, 1.2, 17.0});
  egg("type-2", {0.21, 0.27, 0.60, 1.3, 21.0});
  egg("type-3", {0.18, 0.16, 0.23, 1.4, 23.0});
  egg("type-4", {0.17, 0.12, 0.16, 1.5, 23.0});
  egg("type-5", {0.46, 0.34, 1.0, 1.6, 36.0});
  egg("type-6", {0.45, 0.27, 0.30, 1.7, 54.0});
  egg("default-full-precision", {0.2130, 0.3291, 1.4299, 1.1817, 17.1984});

  out.push_back({"system/defaults", kSystemSource, make_defaults()});
  return out;
}

const std::vector<Preset>& catalog() {
  static const std::vector<Preset> presets = build();
  return presets;
}

template <class T>
T typed(std::string_view name) {
  const auto value = load_preset(name);
  if (const auto* v = std::get_if<T>(&value)) return *v;
  throw UnknownPresetError("preset '" + std::string(name) + "' has a different kind");
}

}  // namespace

std::span<const Preset> preset_catalog() { return catalog(); }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : catalog()) names.push_back(p.name);
  return names;
}

PresetValue load_preset(std::string_view name) {
  for (const auto& p : catalog())
    if (p.name == name) return p.value;
  std::string list;
  for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
  throw UnknownPresetError("unknown preset '" + std::string(name) + "'; available: " + list);
}

WaterOptics water_preset(std::string_view name) { return typed<WaterOptics>(name); }
EggParams egg_preset(std::string_view name) { return typed<EggParams>(name); }
LinkConfig system_preset(std::string_view name) { return typed<LinkConfig>(name); }

EggParams egg_type(int type) {
  if (type < 1 || type > 6) throw UnknownPresetError("water type must be 1..6, got " + std::to_string(type));
  return egg_preset("egg/type-" + std::to_string(type));
}

std::string describe(const Preset& preset) {
  struct Visitor {
    std::string operator()(const WaterOptics& w) const {
      return fmt::format("a={:.3f} b={:.3f} lambda={}nm", w.absorption, w.scattering, format_number(w.wavelength_nm));
    }
    std::string operator()(const EggParams& p) const {
      return fmt::format("alpha={} beta={} a={} b={} c={}", format_number(p.mix_alpha), format_number(p.exp_beta),
                         format_number(p.gg_a), format_number(p.gg_b), format_number(p.gg_c));
    }
    std::string operator()(const LinkConfig& c) const {
      return fmt::format("d={}m Pt={}dBW rho={} eta_r={} eta_t={} eta_s={} gamma_th={}dB r_a={}m w_b={}m sigma_s={}m",
                         format_number(c.distance_m), format_number(linear_to_db(c.tx_power_w)),
                         format_number(c.split_rho), format_number(c.eff_pv), format_number(c.eff_tx),
                         format_number(c.eff_rx_sub), format_number(std::round(linear_to_db(c.snr_threshold) * 1e9) / 1e9),
                         format_number(c.pointing.aperture_radius()), format_number(c.pointing.beam_waist()),
                         format_number(c.pointing.jitter_sigma()));
    }
  };
  return preset.name + " " + std::visit(Visitor{}, preset.value) + "  [" + preset.source + "]";
}

}  // namespace slipt
