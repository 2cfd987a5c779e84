#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "cld/orbit_time.hpp"

namespace cld {

struct TleRecord {
  std::string name;  // empty for two-line sets
  int catalog_number = 0;
  OrbitalElements elements;
};

struct TleError {
  int line = 0;  // 1-based line number in the input
  std::string message;
};

struct TleParseResult {
  std::vector<TleRecord> records;
  std::optional<TleError> error;

  /// True when parsing stopped at an error; records holds the sets read before it.
  bool partial() const { return error.has_value(); }
};

/// Modulo-10 checksum over the first 68 columns ('-' counts as 1).
int tle_checksum(const std::string& line);

/// Reads two-line and three-line element sets. Mean elements are converted to
/// OrbitalElements (semi-major axis from mean motion by Kepler's third law).
TleParseResult parse_tle(std::istream& in);
TleParseResult parse_tle_string(const std::string& text);

}  // namespace cld
