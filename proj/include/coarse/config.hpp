#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coarse/generators.hpp"

namespace coarse {

// Experiment configuration text.
//
//   # comment (also after a value)
//   [section]            or   [section name]
//   key = value
//
// Keys are unique within a section. Values run to the end of the line with
// surrounding blanks removed. Errors carry 1-based line and column.
struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;      // of the value
  std::size_t key_column = 1;
};

class ConfigSection {
 public:
  std::string name;
  std::string arg;
  std::size_t line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }
  // Missing required keys raise ParseError naming the key and section.
  const ConfigEntry& require(const std::string& key) const;
  std::string get(const std::string& key) const { return require(key).value; }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::int64_t> get_ints(const std::string& key) const;  // blank or comma separated
  // Rejects keys outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const;
  std::string title() const { return arg.empty() ? "[" + name + "]" : "[" + name + " " + arg + "]"; }
};

struct ConfigDoc {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(const std::string& name, const std::string& arg = "") const;
  const ConfigSection& require(const std::string& name, const std::string& arg = "") const;
  std::vector<const ConfigSection*> all(const std::string& name) const;
};

ConfigDoc parse_config(std::istream& in);

// `[space NAME]` sections: kind = zpower|heisenberg|lamplighter|free|polycyclic|
// dyadic|product|horoball, with dim, q (a b c d), radius, levels, width, wrap,
// depth, factors (names) and inner (a name).
SpaceSpec space_from_config(const ConfigDoc& doc, const std::string& name);

// Writes `[space NAME]` sections for spec and its parts; nested parts are
// named NAME.0, NAME.1, ... and emitted before their parent.
void write_space_config(std::ostream& out, const SpaceSpec& spec, const std::string& name);

}  // namespace coarse
