#include "cld/tle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string_view>

namespace cld {

namespace {

constexpr std::size_t kLineLength = 69;

struct FieldError {
  std::string message;
  bool second_line = false;  // set when the offending field is on line 2
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Columns are 1-based inclusive, as in the format definition.
std::string_view columns(const std::string& line, int first, int last) {
  return std::string_view(line).substr(first - 1, last - first + 1);
}

double to_double(std::string_view field, const char* what) {
  const std::string s(trim(field));
  if (s.empty()) throw FieldError{std::string("empty ") + what + " field"};
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FieldError{std::string("unparsable ") + what + " field '" + s + "'"};
  }
  if (used != s.size()) {
    throw FieldError{std::string("unparsable ") + what + " field '" + s + "'"};
  }
  return value;
}

int to_int(std::string_view field, const char* what) {
  const std::string s(trim(field));
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); })) {
    throw FieldError{std::string("unparsable ") + what + " field '" + s + "'"};
  }
  return std::stoi(s);
}

bool looks_like_element_line(const std::string& line, char which) {
  return line.size() >= 2 && line[0] == which && line[1] == ' ';
}

void check_line(const std::string& line, char which) {
  if (line.size() != kLineLength) {
    throw FieldError{"line " + std::string(1, which) + " has length " +
                     std::to_string(line.size()) + ", expected 69"};
  }
  if (!looks_like_element_line(line, which)) {
    throw FieldError{std::string("expected line beginning '") + which + " '"};
  }
  const char digit = line[68];
  if (!std::isdigit(static_cast<unsigned char>(digit))) {
    throw FieldError{"checksum column is not a digit"};
  }
  const int expected = tle_checksum(line);
  if (digit - '0' != expected) {
    throw FieldError{"checksum mismatch: line says " + std::string(1, digit) +
                     ", computed " + std::to_string(expected)};
  }
}

Epoch parse_tle_epoch(const std::string& line1) {
  const int yy = to_int(columns(line1, 19, 20), "epoch year");
  const double doy = to_double(columns(line1, 21, 32), "epoch day");
  if (doy < 1.0 || doy >= 367.0) throw FieldError{"epoch day out of range"};
  const int year = yy < 57 ? 2000 + yy : 1900 + yy;
  return epoch_from_civil(year, 1, 1, 0.0) + (doy - 1.0) * kSecondsPerDay;
}

TleRecord parse_record(const std::string& name, const std::string& l1, const std::string& l2) {
  TleRecord rec;
  rec.name = name;
  rec.catalog_number = to_int(columns(l1, 3, 7), "catalog number");
  if (to_int(columns(l2, 3, 7), "catalog number") != rec.catalog_number) {
    throw FieldError{"catalog numbers of line 1 and line 2 differ"};
  }
  OrbitalElements& e = rec.elements;
  e.epoch = parse_tle_epoch(l1);
  double mean_anomaly = 0.0, rev_per_day = 0.0;
  try {
    e.inclination = to_double(columns(l2, 9, 16), "inclination") * kDegToRad;
    e.raan = wrap_two_pi(to_double(columns(l2, 18, 25), "RAAN") * kDegToRad);
    const auto ecc_field = trim(columns(l2, 27, 33));
    e.eccentricity = to_double("0." + std::string(ecc_field), "eccentricity");
    e.arg_perigee =
        wrap_two_pi(to_double(columns(l2, 35, 42), "argument of perigee") * kDegToRad);
    mean_anomaly = to_double(columns(l2, 44, 51), "mean anomaly") * kDegToRad;
    rev_per_day = to_double(columns(l2, 53, 63), "mean motion");
    if (!(rev_per_day > 0.0)) throw FieldError{"mean motion must be positive"};
  } catch (FieldError& err) {
    err.second_line = true;
    throw;
  }
  const double n = rev_per_day * kTwoPi / kSecondsPerDay;
  e.semi_major_axis = std::cbrt(kMuEarth / (n * n));
  e.arg_latitude_at_epoch = wrap_two_pi(e.arg_perigee + mean_anomaly);
  if (e.eccentricity == 0.0) e.arg_perigee = 0.0;
  try {
    validate(e);
  } catch (const OrbitError& err) {
    throw FieldError{err.what()};
  }
  return rec;
}

}  // namespace

int tle_checksum(const std::string& line) {
  int sum = 0;
  for (std::size_t k = 0; k < std::min<std::size_t>(68, line.size()); ++k) {
    const char c = line[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      sum += c - '0';
    } else if (c == '-') {
      sum += 1;
    }
  }
  return sum % 10;
}

TleParseResult parse_tle(std::istream& in) {
  TleParseResult result;
  std::vector<std::pair<int, std::string>> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == '\n')) raw.pop_back();
    if (trim(raw).empty()) continue;
    lines.emplace_back(number, raw);
  }

  std::size_t k = 0;
  while (k < lines.size()) {
    std::string name;
    int current = lines[k].first;
    int second = 0;
    try {
      if (looks_like_element_line(lines[k].second, '2')) {
        throw FieldError{"line 2 without a preceding line 1"};
      }
      if (!looks_like_element_line(lines[k].second, '1')) {
        name = std::string(trim(lines[k].second));
        ++k;
      }
      if (k >= lines.size()) throw FieldError{"name line without an element set"};
      current = lines[k].first;
      check_line(lines[k].second, '1');
      if (k + 1 >= lines.size()) throw FieldError{"missing line 2"};
      const auto& l1 = lines[k].second;
      current = second = lines[k + 1].first;
      check_line(lines[k + 1].second, '2');
      const auto& l2 = lines[k + 1].second;
      current = lines[k].first;
      result.records.push_back(parse_record(name, l1, l2));
      k += 2;
    } catch (const FieldError& err) {
      result.error = TleError{err.second_line ? second : current, err.message};
      return result;
    }
  }
  return result;
}

TleParseResult parse_tle_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tle(in);
}

}  // namespace cld
