#include "coarse/profile.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "coarse/errors.hpp"

namespace coarse {

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::Exact: return "exact";
    case Certificate::Lower: return "lower";
    case Certificate::Upper: return "upper";
    case Certificate::Estimate: return "estimate";
  }
  return "unknown";
}

Certificate certificate_from_string(const std::string& s) {
  for (auto c : {Certificate::Exact, Certificate::Lower, Certificate::Upper, Certificate::Estimate})
    if (to_string(c) == s) return c;
  throw InputError(fmt::format("unknown certificate '{}'", s));
}

std::string to_string(ProfileKind k) {
  return k == ProfileKind::Isoperimetric ? "isoperimetric" : "separation";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "isoperimetric") return ProfileKind::Isoperimetric;
  if (s == "separation") return ProfileKind::Separation;
  throw InputError(fmt::format("unknown profile kind '{}'", s));
}

std::vector<std::string> ProfileCurve::check_invariants() const {
  std::vector<std::string> problems;
  const ProfilePoint* last_exact = nullptr;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].size <= points[i - 1].size)
      problems.push_back(fmt::format("sizes not strictly increasing at index {}", i));
    if (points[i].certificate == Certificate::Exact) {
      if (last_exact && points[i].value < last_exact->value)
        problems.push_back(fmt::format("exact values decrease at size {}", points[i].size));
      last_exact = &points[i];
    }
  }
  return problems;
}

void write_profile_csv(std::ostream& out, const ProfileCurve& curve) {
  out << "# kind=" << to_string(curve.kind) << '\n';
  out << "# source=" << curve.source << '\n';
  for (const auto& n : curve.notes) out << "# note=" << n << '\n';
  out << "size,value_num,value_den,certificate\n";
  for (const auto& p : curve.points)
    out << p.size << ',' << p.value.numerator() << ',' << p.value.denominator() << ',' << to_string(p.certificate)
        << '\n';
}

void write_witnesses(std::ostream& out, const ProfileCurve& curve) {
  for (const auto& p : curve.points) {
    out << p.size << ':';
    for (auto v : p.witness) out << ' ' << v;
    out << '\n';
  }
}

ProfileCurve read_profile_csv(std::istream& csv) {
  ProfileCurve curve;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("preamble line without '='", line_no, 1);
      auto key = line.substr(2, eq - 2);
      auto value = line.substr(eq + 1);
      if (key == "kind") {
        try {
          curve.kind = profile_kind_from_string(value);
        } catch (const InputError& e) {
          throw ParseError(e.what(), line_no, eq + 2);
        }
      } else if (key == "source") {
        curve.source = value;
      } else if (key == "note") {
        curve.notes.push_back(value);
      } else {
        throw ParseError(fmt::format("unknown preamble key '{}'", key), line_no, 3);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "size,value_num,value_den,certificate")
        throw ParseError("expected header 'size,value_num,value_den,certificate'", line_no, 1);
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ParseError("expected 4 columns", line_no, 1);
    ProfilePoint p;
    try {
      p.size = std::stoull(cells[0]);
      auto num = std::stoll(cells[1]);
      auto den = std::stoll(cells[2]);
      if (den <= 0) throw ParseError("denominator must be positive", line_no, cells[0].size() + cells[1].size() + 3);
      p.value = Ratio(num, den);
      p.certificate = certificate_from_string(cells[3]);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(fmt::format("bad row: {}", e.what()), line_no, 1);
    }
    curve.points.push_back(std::move(p));
  }
  if (!header_seen) throw ParseError("missing CSV header", line_no + 1, 1);
  return curve;
}

void read_witnesses(std::istream& in, ProfileCurve& curve) {
  std::string line;
  std::size_t line_no = 0, index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'size: vertices'", line_no, 1);
    if (index >= curve.points.size()) throw ParseError("more witness lines than points", line_no, 1);
    if (std::stoull(line.substr(0, colon)) != curve.points[index].size)
      throw ParseError("witness size does not match the curve", line_no, 1);
    std::stringstream ss(line.substr(colon + 1));
    std::vector<Vertex> w;
    long long v = 0;
    while (ss >> v) w.push_back(static_cast<Vertex>(v));
    curve.points[index++].witness = std::move(w);
  }
}

}  // namespace coarse
