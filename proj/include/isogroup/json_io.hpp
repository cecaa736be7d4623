/// @file json_io.hpp
/// @brief JSON serialization for spaces, groups, isometry lists, assembly
/// provenance, and verification reports.
///
/// All numeric values travel as exact fraction strings.  Object keys are
/// emitted in sorted order, so identical inputs serialize byte-identically.
#pragma once

#include <string>

#include "json.hpp"

#include "isogroup/group.hpp"
#include "isogroup/iso_search.hpp"
#include "isogroup/realize.hpp"

namespace isogroup {

using Json = nlohmann::json;

/// Reads and parses a JSON file; malformed input raises errc::parse_error.
Json load_json_file(const std::string& path);

/// Writes pretty-printed JSON with a trailing newline.
void write_json_file(const std::string& path, const Json& j);

Json space_to_json(const FiniteMetricSpace& space);
SpacePtr space_from_json(const Json& j);

/// Accepts {"cayley": [[...]]} or {"generators": [[...]], "degree": n}.
Group group_from_json(const Json& j);

Json iso_to_json(const IsoGroup& iso);

/// Everything needed to re-verify a realization from files alone.
struct ParsedProvenance {
  Pipeline pipeline = Pipeline::compact;
  OffsetSchedule schedule = OffsetSchedule::harmonic;
  int group_order = 0;
  std::vector<Rational> offsets;
  std::vector<Neighborhood> cover;
  std::vector<PointProvenance> points;
  std::vector<std::string> labels;
};

Json provenance_to_json(const Assembly& assembly);
ParsedProvenance provenance_from_json(const Json& j);

Json report_to_json(const RealizationReport& report);

}  // namespace isogroup
