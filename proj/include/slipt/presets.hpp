#pragma once

// Named parameter sets: water optics classes, turbulence fits and the
// default link budget.

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slipt/channel.hpp"

namespace slipt {

using PresetValue = std::variant<WaterOptics, EggParams, LinkConfig>;

struct Preset {
  std::string name;
  std::string source;
  PresetValue value;
};

/// Every preset in catalog order: water/*, egg/*, system/*.
std::span<const Preset> preset_catalog();
std::vector<std::string> preset_names();

/// Copy of the named preset; UnknownPresetError lists the available names.
PresetValue load_preset(std::string_view name);
WaterOptics water_preset(std::string_view name);
EggParams egg_preset(std::string_view name);
LinkConfig system_preset(std::string_view name);

/// Turbulence fit for water types 1..6.
EggParams egg_type(int type);

/// One-line listing, e.g. "water/turbid-coastal a=0.100 b=0.020".
std::string describe(const Preset& preset);

}  // namespace slipt
