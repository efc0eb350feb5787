#include "coarse/config.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool is_word(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::int64_t to_int(const ConfigEntry& e) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument(e.value);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(fmt::format("key '{}' expects an integer, got '{}'", e.key, e.value), e.line, e.column);
  }
}

}  // namespace

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const ConfigEntry& ConfigSection::require(const std::string& key) const {
  if (auto e = find(key)) return *e;
  throw ParseError(fmt::format("missing required key '{}' in {}", key, title()), line, 1);
}

std::string ConfigSection::get(const std::string& key, const std::string& fallback) const {
  auto e = find(key);
  return e ? e->value : fallback;
}

std::int64_t ConfigSection::get_int(const std::string& key) const { return to_int(require(key)); }

std::int64_t ConfigSection::get_int(const std::string& key, std::int64_t fallback) const {
  auto e = find(key);
  return e ? to_int(*e) : fallback;
}

double ConfigSection::get_double(const std::string& key, double fallback) const {
  auto e = find(key);
  if (!e) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(e->value, &used);
    if (used != e->value.size()) throw std::invalid_argument(e->value);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(fmt::format("key '{}' expects a number, got '{}'", key, e->value), e->line, e->column);
  }
}

bool ConfigSection::get_bool(const std::string& key, bool fallback) const {
  auto e = find(key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
  if (e->value == "false" || e->value == "no" || e->value == "0") return false;
  throw ParseError(fmt::format("key '{}' expects true or false, got '{}'", key, e->value), e->line, e->column);
}

std::vector<std::int64_t> ConfigSection::get_ints(const std::string& key) const {
  const auto& e = require(key);
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  const std::string& v = e.value;
  while (i < v.size()) {
    while (i < v.size() && (v[i] == ' ' || v[i] == '\t' || v[i] == ',')) ++i;
    if (i >= v.size()) break;
    std::size_t j = i;
    while (j < v.size() && v[j] != ' ' && v[j] != '\t' && v[j] != ',') ++j;
    ConfigEntry part{key, v.substr(i, j - i), e.line, e.column + i, e.key_column};
    out.push_back(to_int(part));
    i = j;
  }
  return out;
}

void ConfigSection::only(std::initializer_list<const char*> allowed) const {
  for (const auto& e : entries)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return e.key == a; }))
      throw ParseError(fmt::format("unknown key '{}' in {}", e.key, title()), e.line, e.key_column);
}

const ConfigSection* ConfigDoc::find(const std::string& name, const std::string& arg) const {
  for (const auto& s : sections)
    if (s.name == name && s.arg == arg) return &s;
  return nullptr;
}

const ConfigSection& ConfigDoc::require(const std::string& name, const std::string& arg) const {
  if (auto s = find(name, arg)) return *s;
  throw ParseError(fmt::format("missing section [{}{}]", name, arg.empty() ? "" : " " + arg), 1, 1);
}

std::vector<const ConfigSection*> ConfigDoc::all(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections)
    if (s.name == name) out.push_back(&s);
  return out;
}

ConfigDoc parse_config(std::istream& in) {
  ConfigDoc doc;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::size_t col = first + 1;
    if (line[first] == '[') {
      const auto close = line.find(']', first);
      if (close == std::string::npos) throw ParseError("unterminated section header", line_no, col);
      if (!trim(line.substr(close + 1)).empty())
        throw ParseError("unexpected text after section header", line_no, close + 2);
      const std::string inner = trim(line.substr(first + 1, close - first - 1));
      ConfigSection s;
      s.line = line_no;
      const auto space = inner.find_first_of(" \t");
      s.name = inner.substr(0, space);
      if (space != std::string::npos) s.arg = trim(inner.substr(space));
      if (!is_word(s.name) || (!s.arg.empty() && !is_word(s.arg)))
        throw ParseError(fmt::format("malformed section header '[{}]'", inner), line_no, col);
      if (doc.find(s.name, s.arg)) throw ParseError(fmt::format("duplicate section {}", s.title()), line_no, col);
      doc.sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, col);
    if (doc.sections.empty()) throw ParseError("key outside of any section", line_no, col);
    ConfigEntry e;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = line_no;
    e.key_column = col;
    const auto vstart = line.find_first_not_of(" \t", eq + 1);
    e.column = vstart == std::string::npos ? eq + 2 : vstart + 1;
    if (!is_word(e.key)) throw ParseError(fmt::format("malformed key '{}'", e.key), line_no, col);
    if (e.value.empty()) throw ParseError(fmt::format("key '{}' has no value", e.key), line_no, eq + 2);
    auto& section = doc.sections.back();
    if (section.has(e.key)) throw ParseError(fmt::format("duplicate key '{}'", e.key), line_no, col);
    section.entries.push_back(std::move(e));
  }
  return doc;
}

namespace {

SpaceSpec space_rec(const ConfigDoc& doc, const std::string& name, std::set<std::string>& active) {
  const auto& s = doc.require("space", name);
  if (!active.insert(name).second)
    throw ParseError(fmt::format("space '{}' refers to itself", name), s.line, 1);
  s.only({"kind", "dim", "rank", "n", "q", "radius", "levels", "width", "wrap", "depth", "factors", "inner"});
  const auto& kind_entry = s.require("kind");
  SpaceKind kind;
  try {
    kind = space_kind_from_string(kind_entry.value);
  } catch (const InputError& e) {
    throw ParseError(e.what(), kind_entry.line, kind_entry.column);
  }
  auto num = [&](const char* key, int fallback) { return static_cast<int>(s.get_int(key, fallback)); };
  SpaceSpec spec;
  switch (kind) {
    case SpaceKind::ZPower: spec = SpaceSpec::zpower(num("dim", 1), num("radius", 0)); break;
    case SpaceKind::Heisenberg: spec = SpaceSpec::heisenberg(num("radius", 0)); break;
    case SpaceKind::Lamplighter: spec = SpaceSpec::lamplighter(num("radius", 0)); break;
    case SpaceKind::FreeGroup: spec = SpaceSpec::free_group(num("rank", num("dim", 2)), num("radius", 0)); break;
    case SpaceKind::PolycyclicLambda: {
      Matrix2 q;
      if (s.has("q")) {
        auto v = s.get_ints("q");
        if (v.size() != 4) throw ParseError("q expects four integers 'a b c d'", s.require("q").line, s.require("q").column);
        q = {v[0], v[1], v[2], v[3]};
      }
      spec = SpaceSpec::polycyclic_lambda(num("n", num("dim", 2)), q, num("radius", 0));
      break;
    }
    case SpaceKind::DyadicHyperbolic:
      spec = SpaceSpec::dyadic_hyperbolic(num("n", num("dim", 2)), num("levels", 1), num("width", 1),
                                          s.get_bool("wrap", false));
      break;
    case SpaceKind::Product: {
      const auto& f = s.require("factors");
      std::vector<SpaceSpec> parts;
      std::string names = f.value;
      std::replace(names.begin(), names.end(), ',', ' ');
      std::size_t i = 0;
      while (i < names.size()) {
        while (i < names.size() && names[i] == ' ') ++i;
        if (i >= names.size()) break;
        std::size_t j = names.find(' ', i);
        if (j == std::string::npos) j = names.size();
        const std::string part = names.substr(i, j - i);
        if (!doc.find("space", part))
          throw ParseError(fmt::format("factor '{}' names no [space {}] section", part, part), f.line, f.column + i);
        parts.push_back(space_rec(doc, part, active));
        i = j;
      }
      spec = SpaceSpec::product(std::move(parts));
      spec.radius = num("radius", 0);
      break;
    }
    case SpaceKind::Horoball: {
      const auto& inner = s.require("inner");
      if (!doc.find("space", inner.value))
        throw ParseError(fmt::format("inner '{}' names no [space {}] section", inner.value, inner.value), inner.line,
                         inner.column);
      spec = SpaceSpec::horoball(space_rec(doc, inner.value, active), num("depth", 0));
      break;
    }
  }
  active.erase(name);
  try {
    spec.validate();
  } catch (const InputError& e) {
    throw ParseError(fmt::format("space '{}': {}", name, e.what()), s.line, 1);
  }
  return spec;
}

}  // namespace

SpaceSpec space_from_config(const ConfigDoc& doc, const std::string& name) {
  std::set<std::string> active;
  return space_rec(doc, name, active);
}

void write_space_config(std::ostream& out, const SpaceSpec& spec, const std::string& name) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    parts.push_back(fmt::format("{}.{}", name, i));
    write_space_config(out, spec.factors[i], parts.back());
  }
  out << "[space " << name << "]\n";
  out << "kind = " << to_string(spec.kind) << '\n';
  switch (spec.kind) {
    case SpaceKind::ZPower:
    case SpaceKind::FreeGroup: out << "dim = " << spec.dim << '\n'; break;
    case SpaceKind::PolycyclicLambda:
      out << "n = " << spec.dim << '\n';
      out << fmt::format("q = {} {} {} {}\n", spec.q.a, spec.q.b, spec.q.c, spec.q.d);
      break;
    case SpaceKind::DyadicHyperbolic:
      out << "n = " << spec.dim << '\n';
      out << "levels = " << spec.levels << '\n';
      out << "width = " << spec.width << '\n';
      out << "wrap = " << (spec.wrap ? "true" : "false") << '\n';
      break;
    case SpaceKind::Product: out << "factors = " << fmt::format("{}", fmt::join(parts, ", ")) << '\n'; break;
    case SpaceKind::Horoball:
      out << "inner = " << parts.at(0) << '\n';
      out << "depth = " << spec.depth << '\n';
      break;
    case SpaceKind::Heisenberg:
    case SpaceKind::Lamplighter: break;
  }
  if (spec.kind != SpaceKind::DyadicHyperbolic && spec.kind != SpaceKind::Horoball)
    out << "radius = " << spec.radius << '\n';
  out << '\n';
}

}  // namespace coarse
