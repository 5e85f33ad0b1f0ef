#include <gtest/gtest.h>

#include <cmath>

#include "hcube/io.hpp"
#include "oracles.hpp"

using namespace hcube;

TEST(Io, CubeFunctionRoundTrip) {
  CounterRng rng(1, 0);
  const CubeFunction f = oracle::random_function(4, rng);
  const std::string text = to_json(f);
  EXPECT_NE(text.find("walsh-bitmask-le"), std::string::npos);
  const CubeFunction g = cube_function_from_json(text);
  ASSERT_EQ(g.dim(), 4);
  for (Mask A = 0; A < 16; ++A) EXPECT_EQ(f.coeff(A), g.coeff(A));
  EXPECT_THROW(cube_function_from_json(R"({"n":1,"basis":"other","coeffs":[0,1]})"), std::invalid_argument);
  EXPECT_THROW(cube_function_from_json(R"({"n":2,"basis":"walsh-bitmask-le","coeffs":[0,1]})"),
               std::invalid_argument);
  EXPECT_THROW(cube_function_from_json("{"), std::invalid_argument);
}

TEST(Io, RadialRoundTrip) {
  const RadialProfile p(3, {0.5, -1.0, 2.0, 0.125});
  const RadialProfile q = radial_profile_from_json(to_json(p));
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(p[d], q[d]);
  EXPECT_THROW(radial_profile_from_json(R"({"n":3,"v":[1,2]})"), std::invalid_argument);
}

TEST(Io, ReportCsvColumns) {
  RatioReport r;
  r.id = InequalityId::PISIER;
  r.n = 4;
  r.p = 3;
  r.lhs = 1.5;
  r.rhs = 0.0;
  r.ratio = std::numeric_limits<double>::infinity();
  r.mode = "exact";
  r.seed = 9;
  const std::vector<RatioReport> rows{r};
  const std::string csv = reports_to_csv(rows);
  EXPECT_EQ(csv, "inequality_id,n,p,q,a_or_gamma,t,lhs,rhs,ratio,mode,seed\nPISIER,4,3,0,0,0,1.5,0,inf,exact,9\n");
  const std::string json = reports_to_json(rows);
  EXPECT_NE(json.find("\"ratio\": \"inf\""), std::string::npos);
  EXPECT_EQ(json, reports_to_json(rows));
}

TEST(Io, GrowthCurveAndRecord) {
  const GrowthCurve g = fit_log_growth({2, 4, 8}, {1, 2, 3});
  EXPECT_EQ(growth_curve_csv(g), "n,value\n2,1\n4,2\n8,3\n");
  EXPECT_NE(growth_fit_json(g).find("slope"), std::string::npos);
  ExperimentRecord rec;
  rec.name = "demo";
  rec.parameters = {{"n", "4"}};
  rec.rows = {{{"x", std::int64_t{1}}, {"y", 0.5}, {"z", std::string("a")}}};
  const std::string a = rec.to_json();
  EXPECT_EQ(a.find("wall_time"), std::string::npos);
  EXPECT_NE(a.find("\"y\": 0.5"), std::string::npos);
  EXPECT_EQ(rec.to_csv(), "x,y,z\n1,0.5,a\n");
  EXPECT_NE(a.find(version_string()), std::string::npos);
  rec.wall_time_seconds = 0.5;
  EXPECT_NE(rec.to_json().find("wall_time_seconds"), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}
