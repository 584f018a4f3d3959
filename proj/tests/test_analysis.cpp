#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"

using namespace shiftfem;

namespace {

// L2 and energy error of (g - fe) integrated per cell; independent of the
// library's accumulation helpers only in the sense of being assembled here.
std::pair<double, double> diff_norms(const ScalarFn& g, const ScalarFn& gp,
                                     const FeFunction& fe, EnergyNormParams params) {
  const GaussRule rule = gauss_rule(fe.space.degree + 3);
  double l2 = 0.0, h1 = 0.0;
  for (int cell = 0; cell < fe.space.cell_count(); ++cell) {
    const double x0 = fe.space.mesh.nodes[cell];
    const double h = fe.space.mesh.cell_width(cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double x = x0 + h * rule.nodes[q];
      const ShapeValue v = eval_local(fe, cell, rule.nodes[q]);
      const double dv = v.value - g(x);
      const double dd = v.derivative - gp(x);
      l2 += h * rule.weights[q] * dv * dv;
      h1 += h * rule.weights[q] * dd * dd;
    }
  }
  return {std::sqrt(l2), std::sqrt(params.epsilon * h1 + params.gamma * l2)};
}

}  // namespace

TEST(EnergyNorm, ClosedFormExample) {
  const Mesh1D mesh = build_standard({0.5, 1e-2, 1, MeshVariant::Standard, 0.005});
  const ScalarFn zero = [](double) { return 0.0; };
  EXPECT_DOUBLE_EQ(energy_norm(zero, zero, mesh, {0.1, 1.0}, 4), 0.0);

  const ScalarFn g = [](double x) { return x; };
  const ScalarFn gp = [](double) { return 1.0; };
  // sqrt(0.1 * int 1 + int x^2) = sqrt(0.2 + 8/3)
  EXPECT_NEAR(energy_norm(g, gp, mesh, {0.1, 1.0}, 4), std::sqrt(0.2 + 8.0 / 3.0), 1e-12);
}

TEST(EnergyNorm, HomogeneityAndTriangle) {
  const MeshParams p{0.4, 1e-2, 2, MeshVariant::Standard, 0.005};
  const FeSpace space(build_standard(p), 2);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const EnergyNormParams params{1e-2, 1.3};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a(space.dof_count()), b(space.dof_count()), sum(space.dof_count());
    for (int i = 0; i < space.dof_count(); ++i) {
      a[i] = unif(rng);
      b[i] = unif(rng);
      sum[i] = a[i] + b[i];
    }
    const FeFunction fa(space, a), fb(space, b), fs(space, sum);
    std::vector<double> twice(a);
    for (double& c : twice) c *= 2.0;
    const FeFunction f2(space, twice);
    const double na = energy_norm(fa, params);
    EXPECT_NEAR(energy_norm(f2, params), 2.0 * na, 1e-12 * (1.0 + na));
    EXPECT_LE(energy_norm(fs, params), na + energy_norm(fb, params) + 1e-12);
  }
}

TEST(Interpolate, ReproducesPolynomials) {
  for (int k : {2, 3, 4}) {
    const MeshParams p{0.4, 1e-2, k, MeshVariant::Standard, 0.005};
    const FeSpace space(build_standard(p), k);
    const ScalarFn g = [](double x) { return x * (2.0 - x); };
    const FeFunction fe = interpolate(g, space);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double x = unif(rng);
      EXPECT_NEAR(evaluate(fe, x).value, g(x), 1e-10);
    }
  }
}

TEST(Interpolate, ZeroFunctionAndBoundaryGuard) {
  const MeshParams p{0.4, 1e-2, 2, MeshVariant::Standard, 0.005};
  const FeSpace space(build_standard(p), 2);
  const FeFunction zero = interpolate([](double) { return 0.0; }, space);
  for (double c : zero.coeffs) EXPECT_EQ(c, 0.0);
  EXPECT_THROW(interpolate([](double) { return 1.0; }, space), std::invalid_argument);
}

TEST(Interpolate, BoundaryLayerSweep) {
  // E minus its linear lift: L2 interpolation error of order k+1.
  // E(2) = exp(-4e6) underflows to zero, so the lift is 1 - x/2.
  const double eps = 1e-6, beta = 2.0;
  const ScalarFn g = [=](double x) { return std::exp(-beta * x / eps) - (1.0 - 0.5 * x); };
  const ScalarFn gp = [=](double x) { return -beta / eps * std::exp(-beta * x / eps) + 0.5; };
  std::vector<double> errors;
  std::vector<int> cells;
  for (double H : {0.4, 0.2, 0.1}) {
    const MeshParams p{H, eps, 1, MeshVariant::Standard, 0.005};
    const FeSpace space(build_standard(p), 1);
    const FeFunction fe = interpolate(g, space);
    errors.push_back(diff_norms(g, gp, fe, {eps, 1.0}).first);
    cells.push_back(space.cell_count());
  }
  const double rate = rate_between(errors[1], errors[2], cells[1], cells[2]);
  EXPECT_GE(rate, 1.8);
}

TEST(InterpolationStudy, LayerModelRates) {
  // halving from 0.4; the L2 rate reaches k+1 on the last pair once the
  // largest graded cell starts shrinking proportionally with H
  const LayerModel model = layer_model(2.0, 1e-6, 1);
  const InterpolationTables t =
      interpolation_study(model, MeshVariant::Standard, 1, {0.4, 0.2, 0.1, 0.05}, 1e-6);
  ASSERT_EQ(t.l2.rows.size(), 4u);
  ASSERT_TRUE(t.l2.rows[2].rate.has_value());
  EXPECT_GE(*t.l2.rows[2].rate, 1.8);
  EXPECT_FALSE(t.l2.rows[3].rate.has_value());
  EXPECT_GE(*t.energy.rows[1].rate, 0.8);
  EXPECT_GE(*t.energy.rows[2].rate, 0.8);
  EXPECT_EQ(t.l2.rows[0].cells, 88);
  EXPECT_EQ(t.l2.rows[2].cells, 310);
}

TEST(InterpolationStudy, PolynomialPartIsExact) {
  // degree <= k data with vanishing boundary values is reproduced to roundoff
  for (int k : {2, 3}) {
    const MeshParams p{0.4, 1e-2, k, MeshVariant::Standard, 0.005};
    const FeSpace space(build_standard(p), k);
    const ScalarFn g = [](double x) { return x * (2.0 - x); };
    const ScalarFn gp = [](double x) { return 2.0 - 2.0 * x; };
    const FeFunction fe = interpolate(g, space);
    const auto [l2, energy] = diff_norms(g, gp, fe, {1e-2, 1.0});
    EXPECT_LE(l2, 1e-12);
    EXPECT_LE(energy, 1e-12);
  }
}

TEST(ErrorVsReference, IdenticalFunctionIsZero) {
  const MeshParams p{0.4, 1e-2, 2, MeshVariant::Standard, 0.005};
  const FeSpace space(build_standard(p), 2);
  const FeFunction fe = interpolate([](double x) { return x * (2.0 - x); }, space);
  EXPECT_LE(error_vs_reference(fe, fe, {1e-2, 1.0}), 1e-13);
}

TEST(ErrorVsReference, MatchesPieceAlignedSimpson) {
  const ScalarFn g = [](double x) { return std::sin(std::numbers::pi * x) * x; };
  const FeSpace space_a(build_standard({0.4, 1e-1, 2, MeshVariant::Standard, 0.005}), 2);
  const FeSpace space_b(build_standard({0.1, 1e-1, 3, MeshVariant::Standard, 0.005}), 3);
  const FeFunction fa = interpolate(g, space_a);
  const FeFunction fb = interpolate(g, space_b);
  const EnergyNormParams params{0.3, 1.7};
  const double reported = error_vs_reference(fa, fb, params);

  // oracle: Simpson on every interval of the concatenated node set. Locate the
  // cells once per interval; evaluating at the endpoints would otherwise pick
  // up the one-sided derivative of the neighbouring cell.
  std::vector<double> nodes = space_a.mesh.nodes;
  nodes.insert(nodes.end(), space_b.mesh.nodes.begin(), space_b.mesh.nodes.end());
  std::sort(nodes.begin(), nodes.end());
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i + 1] - nodes[i] < 1e-13) continue;
    const double mid = 0.5 * (nodes[i] + nodes[i + 1]);
    const int cell_a = space_a.mesh.locate(mid);
    const int cell_b = space_b.mesh.locate(mid);
    const auto eval_pair = [&](double x) {
      const double xi_a = (x - space_a.mesh.nodes[cell_a]) / space_a.mesh.cell_width(cell_a);
      const double xi_b = (x - space_b.mesh.nodes[cell_b]) / space_b.mesh.cell_width(cell_b);
      return std::make_pair(eval_local(fa, cell_a, xi_a), eval_local(fb, cell_b, xi_b));
    };
    l2 += testutil::simpson(
        [&](double x) {
          const auto [va, vb] = eval_pair(x);
          const double d = va.value - vb.value;
          return d * d;
        },
        nodes[i], nodes[i + 1], 512);
    h1 += testutil::simpson(
        [&](double x) {
          const auto [va, vb] = eval_pair(x);
          const double d = va.derivative - vb.derivative;
          return d * d;
        },
        nodes[i], nodes[i + 1], 512);
  }
  const double expected = std::sqrt(params.epsilon * h1 + params.gamma * l2);
  EXPECT_NEAR(reported, expected, 1e-10);
}

TEST(ErrorVsReference, SwapSymmetry) {
  const FeSpace space_a(build_standard({0.5, 1e-2, 1, MeshVariant::Standard, 0.005}), 1);
  const FeSpace space_b(build_standard({0.2, 1e-2, 2, MeshVariant::Standard, 0.005}), 2);
  const FeFunction fa = interpolate([](double x) { return x * (2.0 - x); }, space_a);
  const FeFunction fb = interpolate([](double x) { return std::sin(std::numbers::pi * x); },
                                    space_b);
  const double ab = error_vs_reference(fa, fb, {1e-2, 1.0});
  const double ba = error_vs_reference(fb, fa, {1e-2, 1.0});
  EXPECT_LE(std::abs(ab - ba), 1e-12 * ab);
}

TEST(MergedNodes, CountsSharedNodes) {
  const std::vector<double> a{0.0, 0.8, 1.0, 1.55, 2.0};
  const std::vector<double> b{0.0, 0.3, 1.0, 1.7, 2.0};
  const std::vector<double> merged = detail::merge_nodes(a, b);
  // 4 + 4 cells sharing only the endpoints and the node at 1: 6 merged cells
  EXPECT_EQ(merged.size(), 7u);
}

TEST(Rates, ReproducesBenchmarkRates) {
  EXPECT_NEAR(rate_between(7.59e-2, 3.81e-2, 162, 310), 1.06, 0.005);
  EXPECT_NEAR(rate_between(3.94e-3, 9.96e-4, 162, 310), 2.12, 0.005);
  EXPECT_DOUBLE_EQ(rate_between(0.5, 0.5, 100, 200), 0.0);
  EXPECT_THROW(rate_between(0.0, 1.0, 100, 200), std::domain_error);
  EXPECT_THROW(rate_between(1.0, -1.0, 100, 200), std::domain_error);
}

TEST(Rates, ApplyFillsAllButLastRow) {
  ConvergenceTable table;
  table.rows = {{0.4, 100, 99, 1e-2, std::nullopt},
                {0.2, 200, 199, 2.5e-3, std::nullopt},
                {0.1, 400, 399, 6.25e-4, std::nullopt}};
  apply_rates(table);
  ASSERT_TRUE(table.rows[0].rate.has_value());
  EXPECT_NEAR(*table.rows[0].rate, 2.0, 1e-12);
  EXPECT_NEAR(*table.rows[1].rate, 2.0, 1e-12);
  EXPECT_FALSE(table.rows[2].rate.has_value());

  apply_rates(table, RateBasis::GradingParameter);
  EXPECT_NEAR(*table.rows[0].rate, 2.0, 1e-12);  // H also halves

  ConvergenceTable tiny;
  tiny.rows = {{0.4, 10, 9, 1e-2, std::nullopt}};
  EXPECT_THROW(apply_rates(tiny), std::invalid_argument);
}
