#include <gtest/gtest.h>

#include <stdexcept>
#include <string>

#include "shiftfem/shiftfem.hpp"

using namespace shiftfem;

TEST(Table, EmptyCsvIsHeaderOnly) {
  ConvergenceTable table;
  EXPECT_EQ(to_csv(table), "H,cells,dofs,energy_error,rate\n");
}

TEST(Table, CsvRoundTripIsExact) {
  ConvergenceTable table;
  table.rows = {{0.9, 46, 45, 3.1415926535897931e-01, 1.2043419},
                {0.1, 310, 309, 9.9600000000000001e-04, std::nullopt}};
  const ConvergenceTable back = parse_csv(to_csv(table));
  ASSERT_EQ(back.rows.size(), table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].H, table.rows[i].H);
    EXPECT_EQ(back.rows[i].cells, table.rows[i].cells);
    EXPECT_EQ(back.rows[i].dofs, table.rows[i].dofs);
    EXPECT_EQ(back.rows[i].error, table.rows[i].error);
    EXPECT_EQ(back.rows[i].rate.has_value(), table.rows[i].rate.has_value());
    if (back.rows[i].rate) {
      EXPECT_EQ(*back.rows[i].rate, *table.rows[i].rate);
    }
  }
  EXPECT_THROW(parse_csv("nonsense\n"), std::invalid_argument);
}

TEST(Table, TextLayoutSnapshot) {
  ConvergenceTable table;
  table.rows = {{0.2, 162, 161, 7.59e-2, 1.06}, {0.1, 310, 309, 3.81e-2, std::nullopt}};
  const std::string text = to_text(table);
  EXPECT_EQ(text,
            "     H   cells    dofs       error    rate\n"
            "  0.20     162     161    7.59e-02    1.06\n"
            "  0.10     310     309    3.81e-02\n");
}

TEST(StudyConfig, Validation) {
  StudyConfig cfg;
  cfg.H_list = {0.2, 0.4};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.H_list = {};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.H_list = {0.4, 0.2};
  cfg.reference_H = 0.3;  // larger than the smallest H
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.reference_H = 0.05;
  cfg.degree = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.degree = 1;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(RunStudy, ManufacturedConvergesAtOrderK) {
  StudyConfig cfg;
  cfg.problem = "manufactured";
  cfg.epsilon = 1e-2;
  cfg.degree = 3;
  cfg.H_list = {0.2, 0.1};
  cfg.reference_H = 0.05;
  const StudyResult result = run_study(cfg);
  ASSERT_EQ(result.table.rows.size(), 2u);
  ASSERT_TRUE(result.table.rows[0].rate.has_value());
  EXPECT_GE(*result.table.rows[0].rate, 2.8);
  EXPECT_DOUBLE_EQ(result.gamma, 2.0);
}

TEST(RunStudy, DeterministicBytes) {
  StudyConfig cfg;
  cfg.problem = "manufactured";
  cfg.epsilon = 1e-2;
  cfg.degree = 1;
  cfg.H_list = {0.4, 0.2};
  cfg.reference_H = 0.1;
  cfg.reference_degree = 2;
  const std::string once = to_csv(run_study(cfg).table);
  const std::string twice = to_csv(run_study(cfg).table);
  EXPECT_EQ(once, twice);
  EXPECT_NE(once.find("H,cells,dofs,energy_error,rate"), std::string::npos);
}

TEST(RunStudy, CoarseCellCountsAndAssumptionFlag) {
  StudyConfig cfg;
  cfg.problem = "paper-example";
  cfg.variant = MeshVariant::Coarse;
  cfg.epsilon = 1e-6;
  cfg.degree = 1;
  cfg.H_list = {0.2, 0.1};
  const StudyResult result = run_study(cfg);
  ASSERT_EQ(result.table.rows.size(), 2u);
  EXPECT_EQ(result.table.rows[0].cells, 86);
  EXPECT_EQ(result.table.rows[1].cells, 165);
  EXPECT_TRUE(result.coarse_assumption_ok);
  EXPECT_EQ(result.table.variant, "coarse");
}

TEST(VerifySuites, DispatchAndUnknownName) {
  EXPECT_THROW(run_suite("no-such-suite"), std::invalid_argument);
  const VerifyReport quad = run_suite("quadrature");
  EXPECT_TRUE(quad.passed);
  EXPECT_FALSE(quad.lines.empty());
}
