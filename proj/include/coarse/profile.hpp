#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

// How a profile value relates to the true value at that size on the graph
// it was computed on. `Estimate` marks values that are neither certified
// bounds nor exact (a heuristic cut of a lower-bounding subgraph).
enum class Certificate { Exact, Lower, Upper, Estimate };
enum class ProfileKind { Isoperimetric, Separation };

std::string to_string(Certificate c);
Certificate certificate_from_string(const std::string& s);
std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

struct ProfilePoint {
  std::size_t size = 0;
  Ratio value{0};
  Certificate certificate = Certificate::Exact;
  std::vector<Vertex> witness;  // sorted; may be empty

  friend bool operator==(const ProfilePoint&, const ProfilePoint&) = default;
};

struct ProfileCurve {
  ProfileKind kind = ProfileKind::Isoperimetric;
  std::string source;
  std::vector<std::string> notes;  // free-form metadata, one item per line
  std::vector<ProfilePoint> points;

  // Empty when sizes are strictly increasing and exact values non-decreasing.
  std::vector<std::string> check_invariants() const;

  friend bool operator==(const ProfileCurve&, const ProfileCurve&) = default;
};

// CSV with `# kind=`, `# source=`, `# note=` preamble lines followed by
// `size,value_num,value_den,certificate`.
void write_profile_csv(std::ostream& out, const ProfileCurve& curve);
// Sidecar with one `size: v1 v2 ...` line per point.
void write_witnesses(std::ostream& out, const ProfileCurve& curve);
ProfileCurve read_profile_csv(std::istream& csv);
void read_witnesses(std::istream& in, ProfileCurve& curve);

}  // namespace coarse
