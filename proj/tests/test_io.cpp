#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "lt/io.hpp"
#include "lt/random.hpp"

using namespace lt;
using nlohmann::json;

TEST(FormatNumber, FifteenDigits) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(json_number(INFINITY), "inf");
  EXPECT_EQ(json_number(1.0 / 3.0).dump(), "0.333333333333333");
}

TEST(PotentialJson, Families) {
  const auto sw = potential_from_json(json::parse(R"({"family":"square_well","params":{"depth":3,"left":0,"right":2},"domain":"half_line"})"));
  EXPECT_EQ(sw.domain().kind(), Domain::Kind::half_line);
  EXPECT_DOUBLE_EQ(sw(1.0), 3.0);
  EXPECT_DOUBLE_EQ(integrate(sw), 6.0);

  const auto pt = potential_from_json(json::parse(R"({"family":"poschl_teller","params":{"order":2}})"));
  EXPECT_NEAR(integrate(pt), 12.0, 1e-10);

  const auto pc = potential_from_json(
      json::parse(R"({"family":"piecewise_constant","params":{"breakpoints":[0,1,3],"values":[2,0.5]},"domain":[-5,5]})"));
  EXPECT_EQ(pc.domain().kind(), Domain::Kind::interval);
  EXPECT_DOUBLE_EQ(integrate(pc), 3.0);

  const auto nested = potential_from_json(json::parse(
      R"({"family":"sum","params":{"terms":[{"family":"gaussian","params":{"amplitude":1}},
         {"family":"multiple","params":{"factor":2,"inner":{"family":"square_well","params":{"depth":1,"left":-1,"right":1}}}}]}})"));
  EXPECT_NEAR(integrate(nested), std::sqrt(std::numbers::pi) + 4.0, 1e-9);
}

TEST(PotentialJson, RoundTrip) {
  const Potential v = sum({scaled(2.0, poschl_teller(1.0)), multiple(0.5, gaussian(1, 0.2, 0.4))});
  const auto doc = potential_to_json(v);
  const Potential w = potential_from_json(doc);
  for (double x : {-3.0, -0.5, 0.0, 0.7, 2.5}) EXPECT_DOUBLE_EQ(v(x), w(x));
  EXPECT_EQ(potential_to_json(w), doc);
}

TEST(PotentialJson, Errors) {
  EXPECT_THROW(potential_from_json(json::parse(R"({"family":"banana"})")), precondition_error);
  EXPECT_THROW(potential_from_json(json::parse(R"({"family":"square_well","params":{"depth":1}})")), precondition_error);
  EXPECT_THROW(potential_from_json(json::parse(R"([1,2])")), precondition_error);
  EXPECT_THROW(load_potential("/nonexistent/file.json"), precondition_error);
}

TEST(PotentialJson, LoadFromFile) {
  const std::string path = ::testing::TempDir() + "lt_io_test.json";
  {
    std::ofstream f(path);
    f << R"({"family":"square_well","params":{"depth":"2","left":-1,"right":1}})";
  }
  const Potential v = load_potential(path);
  EXPECT_DOUBLE_EQ(integrate(v), 4.0);
  std::remove(path.c_str());
}

TEST(Random, SeededSuiteIsReproducible) {
  const auto a = random_piecewise_suite(kDefaultSeed, 5), b = random_piecewise_suite(kDefaultSeed, 5);
  const auto c = random_piecewise_suite(kDefaultSeed + 1, 5);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(potential_to_json(a[i]), potential_to_json(b[i]));
    differs = differs || potential_to_json(a[i]) != potential_to_json(c[i]);
    const Interval s = a[i].support();
    EXPECT_GE(s.lo, 0.0);
    EXPECT_LE(s.hi, 10.0);
    EXPECT_GT(a[i].inf(), -1e-300);
    EXPECT_LE(a[i].sup(), 5.0);
    const auto k = a[i].kinks();
    EXPECT_GE(k.size(), 4u);
    EXPECT_LE(k.size(), 9u);
  }
  EXPECT_TRUE(differs);
}
