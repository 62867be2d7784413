#include "nanowave/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nanowave/errors.hpp"

namespace nanowave {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

double ConfigSection::number(const std::string& key) const {
  const ConfigEntry* e = find(key);
  if (!e) throw parse_error("config", line, "missing key '" + key + "' in [" + name + "]");
  if (!e->has_number)
    throw parse_error("config", e->line, "key '" + key + "' is not numeric: '" + e->raw + "'");
  return e->number;
}

double ConfigSection::number_or(const std::string& key, double fallback) const {
  const ConfigEntry* e = find(key);
  if (!e) return fallback;
  if (!e->has_number)
    throw parse_error("config", e->line, "key '" + key + "' is not numeric: '" + e->raw + "'");
  return e->number;
}

std::string ConfigSection::text(const std::string& key) const {
  const ConfigEntry* e = find(key);
  if (!e) throw parse_error("config", line, "missing key '" + key + "' in [" + name + "]");
  return e->raw;
}

std::string ConfigSection::text_or(const std::string& key, const std::string& fallback) const {
  const ConfigEntry* e = find(key);
  return e ? e->raw : fallback;
}

double ConfigSection::number_in(const std::string& key, const std::string& unit) const {
  const ConfigEntry* e = find(key);
  if (!e) throw parse_error("config", line, "missing key '" + key + "' in [" + name + "]");
  if (!e->has_number)
    throw parse_error("config", e->line, "key '" + key + "' is not numeric: '" + e->raw + "'");
  if (e->unit != unit)
    throw parse_error("config", e->line,
                      "key '" + key + "' expects unit '" + unit + "', got '" + e->unit + "'");
  return e->number;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

KeyValueFile KeyValueFile::parse_string(const std::string& text, const std::string& name) {
  KeyValueFile file;
  file.source = name;
  file.sections.push_back({"", {}, 0});

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw parse_error(name, lineno, "unterminated section header");
      file.sections.push_back({trim(line.substr(1, line.size() - 2)), {}, lineno});
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) throw parse_error(name, lineno, "expected 'key = value'");
    ConfigEntry entry;
    entry.key = trim(line.substr(0, eq));
    entry.raw = trim(line.substr(eq + 1));
    entry.line = lineno;
    if (entry.key.empty()) throw parse_error(name, lineno, "empty key");

    const char* begin = entry.raw.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end != begin) {
      std::string rest = trim(std::string(end));
      // Only treat it as number+unit when the remainder looks like a unit
      // token, not free prose (units never contain spaces in our files).
      if (rest.find(' ') == std::string::npos && rest.find('\t') == std::string::npos) {
        entry.has_number = true;
        entry.number = value;
        entry.unit = rest;
      }
    }
    file.sections.back().entries.push_back(std::move(entry));
  }
  if (file.sections.front().entries.empty() && file.sections.size() > 1)
    file.sections.erase(file.sections.begin());
  return file;
}

const ConfigSection* KeyValueFile::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<const ConfigSection*> KeyValueFile::all(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections)
    if (s.name == name) out.push_back(&s);
  return out;
}

}  // namespace nanowave
