#include <gtest/gtest.h>

#include <filesystem>

#include "chbox/errors.hpp"
#include "chbox/reproduction.hpp"

using namespace chbox;

namespace {

const std::filesystem::path kData = CHBOX_TEST_DATA_DIR;

}  // namespace

TEST(Methods, NamesRoundTrip) {
  for (Method m : {Method::Pt, Method::Mnc, Method::Cnc}) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("dft"), InvalidArgument);
}

TEST(SolveRadii, KeepsInputOrderAcrossWorkers) {
  SolveConfig cfg;
  cfg.jobs = 3;
  const std::vector<double> radii{0.9, 0.1, 0.5, 0.3, 0.7};
  const auto sols = solve_radii(radii, {Method::Pt, Method::Cnc}, cfg);
  ASSERT_EQ(sols.size(), radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    EXPECT_EQ(sols[i].R, radii[i]);
    ASSERT_TRUE(sols[i].pt && sols[i].cnc);
    EXPECT_FALSE(sols[i].mnc);
    EXPECT_EQ(sols[i].pt->E, solve_pt(radii[i], cfg).E);
  }
}

TEST(SolveRadii, ErrorsPropagate) {
  SolveConfig cfg;
  EXPECT_THROW(solve_radii({1.0, -2.0}, {Method::Pt}, cfg), InvalidArgument);
}

TEST(ComputedValue, CoefficientsNormalizedToLargest) {
  RadiusSolution sol;
  sol.R = 1.0;
  MncResult m;
  m.coeffs = Eigen::Vector4d(0.5, -2.0, 1.0, 0.25);
  sol.mnc = m;
  EXPECT_DOUBLE_EQ(*computed_value(sol, "mnc", "c2"), 1.0);
  EXPECT_DOUBLE_EQ(*computed_value(sol, "mnc", "c1"), -0.25);
  EXPECT_FALSE(computed_value(sol, "mnc", "c5"));
  EXPECT_FALSE(computed_value(sol, "cnc", "E"));
}

TEST(CompareTable, PerturbationRowsPass) {
  const GoldenTable t1 = load_golden(kData / "table1.json");
  SolveConfig cfg;
  std::vector<RadiusSolution> sols;
  for (double R : {0.1, 0.6, 1.0}) sols.push_back(solve_radius(R, {Method::Pt}, cfg));
  const ReproductionReport rep = compare_table(t1, sols);
  int pt_pass = 0;
  for (const auto& c : rep.cells) {
    if (c.method == "pt") {
      EXPECT_EQ(c.status, CellStatus::Pass) << c.R << " " << c.column;
      ++pt_pass;
    } else {
      EXPECT_EQ(c.status, CellStatus::NotComputed);
    }
  }
  EXPECT_EQ(pt_pass, 15);
  EXPECT_FALSE(rep.ok());
}

TEST(CompareTable, TypoCellsAreExcluded) {
  const GoldenTable t1 = load_golden(kData / "table1.json");
  SolveConfig cfg;
  const auto sols = solve_radii({0.9}, methods_for(*t1.row(0.9)), cfg);
  const ReproductionReport rep = compare_table(t1, sols);
  EXPECT_EQ(rep.count(CellStatus::TypoExcluded), 1);
  EXPECT_EQ(rep.count(CellStatus::Fail), 0);
  EXPECT_TRUE(rep.ok());
  for (const auto& c : rep.cells) {
    if (c.status == CellStatus::TypoExcluded) {
      EXPECT_EQ(c.column, "T_n");
      EXPECT_NEAR(*c.computed, 0.053, 1e-3);
    }
  }
}

TEST(MethodsFor, TablesNeedTheirMethods) {
  const GoldenTable t1 = load_golden(kData / "table1.json");
  const GoldenTable t10 = load_golden(kData / "table2.json");
  EXPECT_EQ(methods_for(*t1.row(0.5)).size(), 3u);
  EXPECT_EQ(methods_for(*t1.row(5.0)).size(), 2u);
  EXPECT_EQ(methods_for(*t10.row(5.0)).size(), 2u);
}
