#pragma once

// Flat "key = value" configuration text with dotted keys and units in the
// key names. Blank lines and '#' comments are ignored. dB quantities are
// converted to linear values here and nowhere else.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slipt/channel.hpp"

namespace slipt {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

class ConfigDocument {
 public:
  static ConfigDocument parse(std::istream& in);
  static ConfigDocument parse(std::string_view text);
  static ConfigDocument load(const std::filesystem::path& path);

  const std::vector<ConfigEntry>& entries() const { return entries_; }
  const ConfigEntry* find(std::string_view key) const;

  /// Value of `key` as a number; ConfigError with the line on failure.
  std::optional<double> number(std::string_view key) const;
  std::optional<std::string> text(std::string_view key) const;

  /// Throws ConfigError for the first key outside the given prefixes.
  void reject_unknown(const std::vector<std::string_view>& prefixes) const;

 private:
  std::vector<ConfigEntry> entries_;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Link settings read from a document (link.*, water.*, turbulence.*,
/// pointing.*), layered over `base`. Unknown keys under those prefixes and
/// out-of-domain values raise ConfigError naming the field.
LinkConfig apply_link_settings(const ConfigDocument& doc, const LinkConfig& base);

/// Serializes every link setting; parse + apply_link_settings restores it.
std::string to_config_text(const LinkConfig& cfg);
std::string to_config_text(const WaterOptics& water);
std::string to_config_text(const EggParams& egg);

/// Shortest text that reads back to the same double.
std::string format_number(double x);

}  // namespace slipt
