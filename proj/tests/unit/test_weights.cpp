#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bergman/errors.hpp"
#include "bergman/weight.hpp"

using namespace bergman;

TEST(Power, Values) {
  Weight w = weight_power(0.4, 2.0);
  Point z(0.3, 0.5);
  EXPECT_NEAR(w(z), 2.0 * std::pow(1.0 - std::norm(z), -0.4), 1e-15);
  EXPECT_TRUE(w.is_power());
  EXPECT_EQ(weight_one().name, "one");
  EXPECT_EQ(weight_power(0.5).name, "power:b=0.5");
  EXPECT_EQ(weight_one()(Point(0.9, 0.0)), 1.0);
  EXPECT_THROW(weight_power(0.1, 0.0), ParameterError);
}

TEST(Power, ScaledAndProduct) {
  Weight s = weight_scaled(weight_power(0.2), 3.0);
  EXPECT_TRUE(s.is_power());
  EXPECT_DOUBLE_EQ(s.scale, 3.0);
  Weight p = weight_product({weight_power(0.2, 2.0), weight_power(0.3, 0.5)});
  ASSERT_TRUE(p.is_power());
  EXPECT_NEAR(*p.power_b, 0.5, 1e-15);
  EXPECT_NEAR(p.scale, 1.0, 1e-15);
  Point z(0.6, -0.1);
  EXPECT_NEAR(p(z), std::pow(1.0 - std::norm(z), -0.5), 1e-14);

  Weight c = weight_custom("bump", [](Point z) { return 1.0 + std::norm(z); });
  Weight q = weight_product({c, weight_power(0.1)});
  EXPECT_FALSE(q.is_power());
  EXPECT_NEAR(q(z), (1.0 + std::norm(z)) * std::pow(1.0 - std::norm(z), -0.1), 1e-15);
  EXPECT_NEAR(weight_scaled(c, 2.0)(z), 2.0 * (1.0 + std::norm(z)), 1e-15);
}

TEST(Dual, PowerAndGeneric) {
  // sigma^{1-p'}: p = 4/3 gives exponent -3
  Weight d = dual_weight(weight_power(0.2, 2.0), 4.0 / 3.0);
  ASSERT_TRUE(d.is_power());
  EXPECT_NEAR(*d.power_b, -0.6, 1e-14);
  EXPECT_NEAR(d.scale, 0.125, 1e-14);
  Point z(0.1, 0.7);
  EXPECT_NEAR(d(z), std::pow(2.0 * std::pow(1.0 - std::norm(z), -0.2), -3.0), 1e-12);

  Weight c = weight_custom("bump", [](Point z) { return 1.0 + std::norm(z); });
  EXPECT_NEAR(dual_weight(c, 2.0)(z), 1.0 / (1.0 + std::norm(z)), 1e-15);
  EXPECT_THROW(dual_weight(c, 1.0), ParameterError);
}

TEST(Parse, Families) {
  Weight a = parse_weight("power:b=0.3,c=2");
  ASSERT_TRUE(a.is_power());
  EXPECT_DOUBLE_EQ(*a.power_b, 0.3);
  EXPECT_DOUBLE_EQ(a.scale, 2.0);
  EXPECT_EQ(a.name, "power:b=0.3,c=2");
  Weight p = parse_weight("product:[power:b=0.2,power:b=0.1,c=3]");
  ASSERT_TRUE(p.is_power());
  EXPECT_NEAR(*p.power_b, 0.3, 1e-15);
  EXPECT_NEAR(p.scale, 3.0, 1e-15);
  EXPECT_EQ(parse_weight(" one ").name, "one");
  EXPECT_THROW(parse_weight("power:c=2"), ConfigError);
  EXPECT_THROW(parse_weight("product:power:b=1"), ConfigError);
  EXPECT_THROW(parse_weight("gaussian:1"), ConfigError);
  EXPECT_THROW(parse_weight("table:/nonexistent/file.csv"), ConfigError);
}

TEST(Table, NearestSampleLookup) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<TableSample> s;
  for (int i = 0; i < 500; ++i) s.push_back({0.99 * std::sqrt(U(rng)), 2.0 * std::numbers::pi * U(rng), 0.5 + U(rng)});
  Weight w = weight_table(s);
  for (int t = 0; t < 300; ++t) {
    Point z = std::polar(0.995 * std::sqrt(U(rng)), 2.0 * std::numbers::pi * U(rng));
    // brute-force nearest sample
    double best = 1e300, val = 0.0;
    for (const auto& x : s) {
      double d = std::norm(z - std::polar(x.r, x.theta));
      if (d < best) best = d, val = x.value;
    }
    ASSERT_EQ(w(z), val);
  }
  EXPECT_THROW(weight_table({}), ConfigError);
  EXPECT_THROW(weight_table({{0.5, 0.0, -1.0}}), ConfigError);
  EXPECT_THROW(weight_table({{1.0, 0.0, 1.0}}), ConfigError);
}

TEST(Table, FileRoundTrip) {
  std::string path = ::testing::TempDir() + "table_weight.csv";
  {
    std::ofstream out(path);
    out << "r,theta,value\n# comment\n0.0,0.0,2.0\n0.5,0.0,3.0\n0.5,3.14159,4.0\n";
  }
  Weight w = parse_weight("table:" + path);
  EXPECT_EQ(w(Point(0.05, 0.0)), 2.0);
  EXPECT_EQ(w(Point(0.45, 0.01)), 3.0);
  EXPECT_EQ(w(Point(-0.6, 0.0)), 4.0);
  EXPECT_EQ(w.name, "table:" + path);
  {
    std::ofstream out(path);
    out << "0.1,0.0,1.0\n0.2,oops,1.0\n";
  }
  EXPECT_THROW(weight_table_file(path), ConfigError);
  std::remove(path.c_str());
}

TEST(Table, Synthetic) {
  Weight w = weight_synthetic_table();
  EXPECT_EQ(w.name, "table:synthetic");
  // at a lattice point the nearest sample is the point itself
  double r = std::tanh(0.25 * std::log(2.0) * 5), th = 2.0 * std::numbers::pi * 10.5 / 64;
  EXPECT_NEAR(w(std::polar(r, th)), std::pow(1.0 - r * r, -0.3) * (1.5 + std::cos(th)), 1e-12);
  EXPECT_GT(w(Point(0.0, 0.0)), 0.0);
}
