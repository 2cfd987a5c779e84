#include <cmath>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "cld/tle.hpp"

using namespace cld;

namespace {

// Independent mod-10 checksum: digits count their value, '-' counts one.
char check_digit(const std::string& first68) {
  int s = 0;
  for (char c : first68) s += (c >= '0' && c <= '9') ? c - '0' : (c == '-' ? 1 : 0);
  return static_cast<char>('0' + s % 10);
}

std::string line1(int catalog) {
  char buf[80];
  std::snprintf(buf, sizeof buf,
                "1 %05dU 22001A   22244.04166667  .00000000  00000-0  00000-0 0  999", catalog);
  std::string s(buf);
  return s + check_digit(s);
}

std::string line2(int catalog, double inc, double raan, int ecc7, double argp, double ma,
                  double rev_per_day) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "2 %05d %8.4f %8.4f %07d %8.4f %8.4f %11.8f%5d", catalog, inc,
                raan, ecc7, argp, ma, rev_per_day, 1);
  std::string s(buf);
  return s + check_digit(s);
}

const std::string kIss1 =
    "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927";
const std::string kIss2 =
    "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537";

}  // namespace

TEST(Tle, BuilderProducesValidLines) {
  EXPECT_EQ(line1(1).size(), 69u);
  EXPECT_EQ(line2(1, 0, 0, 0, 0, 0, 1.0).size(), 69u);
  EXPECT_EQ(tle_checksum(kIss1), 7);
  EXPECT_EQ(tle_checksum(kIss2), 7);
}

TEST(Tle, GeoMeanMotionGivesGeoRadius) {
  const auto r = parse_tle_string(line1(5) + "\n" + line2(5, 0, 0, 0, 0, 10, 1.0027) + "\n");
  ASSERT_FALSE(r.partial());
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_NEAR(r.records[0].elements.semi_major_axis, 42164e3, 50e3);
  EXPECT_EQ(r.records[0].catalog_number, 5);
  EXPECT_TRUE(r.records[0].name.empty());
}

TEST(Tle, EmptyInput) {
  const auto r = parse_tle_string("");
  EXPECT_TRUE(r.records.empty());
  EXPECT_FALSE(r.partial());
}

TEST(Tle, RealElementSetFields) {
  const auto r = parse_tle_string("ISS (ZARYA)\r\n" + kIss1 + "\r\n" + kIss2 + "\r\n");
  ASSERT_FALSE(r.partial()) << r.error->message;
  const auto& rec = r.records.at(0);
  EXPECT_EQ(rec.name, "ISS (ZARYA)");
  EXPECT_EQ(rec.catalog_number, 25544);
  const auto& e = rec.elements;
  EXPECT_NEAR(e.inclination, 51.6416 * kDegToRad, 1e-12);
  EXPECT_NEAR(e.raan, 247.4627 * kDegToRad, 1e-12);
  EXPECT_NEAR(e.eccentricity, 0.0006703, 1e-15);
  const double n = 15.72125391 * 2 * kPi / 86400.0;
  EXPECT_NEAR(e.semi_major_axis, std::cbrt(kMuEarth / (n * n)), 1e-3);
  EXPECT_NEAR(e.arg_latitude_at_epoch, (130.5360 + 325.0288 - 360.0) * kDegToRad, 1e-9);
  // 2008 day 264.51782528 = 2008-09-20 12:25:40.104 UTC
  EXPECT_NEAR(e.epoch.utc_seconds,
              epoch_from_civil(2008, 9, 20, 12 * 3600 + 25 * 60 + 40.104).utc_seconds, 1e-3);
}

TEST(Tle, ChecksumErrorNamesLineAndKeepsEarlierRecords) {
  std::string bad2 = line2(2, 0, 0, 0, 0, 0, 1.0027);
  bad2.back() = static_cast<char>('0' + (bad2.back() - '0' + 1) % 10);
  const std::string text = "SAT A\n" + line1(1) + "\n" + line2(1, 0, 0, 0, 0, 0, 1.0027) +
                           "\nSAT B\n" + line1(2) + "\n" + bad2 + "\n";
  const auto r = parse_tle_string(text);
  ASSERT_TRUE(r.partial());
  EXPECT_EQ(r.error->line, 6);
  EXPECT_NE(r.error->message.find("checksum"), std::string::npos);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].name, "SAT A");
}

TEST(Tle, WrongLengthIsReported) {
  const auto r = parse_tle_string(line1(1).substr(0, 60) + "\n" + line2(1, 0, 0, 0, 0, 0, 2) + "\n");
  ASSERT_TRUE(r.partial());
  EXPECT_EQ(r.error->line, 1);
}

TEST(Tle, UnparsableFieldIsReported) {
  std::string l2 = line2(3, 0, 0, 0, 0, 0, 2.0);
  l2.replace(8, 8, "  abc.de");
  l2.back() = check_digit(l2.substr(0, 68));
  const auto r = parse_tle_string(line1(3) + "\n" + l2 + "\n");
  ASSERT_TRUE(r.partial());
  EXPECT_EQ(r.error->line, 2);
  EXPECT_NE(r.error->message.find("inclination"), std::string::npos);
}

TEST(Tle, MissingSecondLine) {
  const auto r = parse_tle_string(line1(4) + "\n");
  ASSERT_TRUE(r.partial());
  EXPECT_TRUE(r.records.empty());
}
