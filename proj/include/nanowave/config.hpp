#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nanowave {

// One `key = value [unit]` line. `number`/`unit` are filled when the value
// starts with something numeric; `raw` always holds the full value text.
struct ConfigEntry {
  std::string key;
  std::string raw;
  bool has_number = false;
  double number = 0.0;
  std::string unit;  // text after the number, "" if none
  int line = 0;
};

struct ConfigSection {
  std::string name;  // "" for entries before the first [section] header
  std::vector<ConfigEntry> entries;
  int line = 0;

  const ConfigEntry* find(const std::string& key) const;
  // Throw parse_error when the key is absent or non-numeric.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  // Numeric value, with the unit string required to match exactly.
  double number_in(const std::string& key, const std::string& unit) const;
};

// INI-flavoured key-value file: '#' comments, [section] headers, repeated
// section names allowed (used for lists of materials/requirements).
struct KeyValueFile {
  std::string source;  // file name, for error messages
  std::vector<ConfigSection> sections;

  static KeyValueFile parse_file(const std::string& path);
  static KeyValueFile parse_string(const std::string& text, const std::string& name);

  const ConfigSection* find(const std::string& name) const;
  std::vector<const ConfigSection*> all(const std::string& name) const;
};

}  // namespace nanowave
