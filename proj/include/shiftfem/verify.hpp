#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "shiftfem/analysis.hpp"
#include "shiftfem/assembly.hpp"
#include "shiftfem/solver.hpp"

namespace shiftfem {

/// Result of one invariant suite; one line per check.
struct VerifyReport {
  std::string suite;
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    passed = passed && ok;
  }
};

namespace detail {

// widths are differences of coordinates of size O(1), so "8 ulps" is measured
// at coordinate scale
inline bool width_matches(double h, double expected) {
  return std::abs(h - expected) <= 8.0 * std::numeric_limits<double>::epsilon() * 2.0;
}

inline std::string describe(const MeshParams& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s H=%g eps=%g k=%d", to_string(p.variant), p.H,
                p.epsilon, p.degree);
  return buf;
}

}  // namespace detail

/// Structural mesh guarantees over a parameter grid.
inline VerifyReport verify_mesh() {
  VerifyReport report;
  report.suite = "mesh";
  const double theta = MeshParams{}.omission_theta;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    for (MeshVariant variant : {MeshVariant::Standard, MeshVariant::Coarse}) {
      int prev_cells = 0;  // H shrinks along the loop, so counts must not drop
      for (double H : {0.9, 0.5, 0.2, 0.1}) {
        for (int k : variant == MeshVariant::Coarse ? std::vector<int>{1, 2, 3}
                                                    : std::vector<int>{1}) {
          const MeshParams p{H, eps, k, variant, theta};
          const Mesh1D mesh = build_mesh(p);
          const std::string tag = detail::describe(p);

          bool increasing = true;
          for (int i = 0; i < mesh.cell_count(); ++i)
            increasing = increasing && mesh.nodes[i] < mesh.nodes[i + 1];
          report.check(increasing, tag + ": nodes strictly increasing");
          report.check(mesh.nodes.front() == 0.0 && mesh.nodes[mesh.M] == 1.0 &&
                           mesh.nodes.back() == 2.0,
                       tag + ": endpoints 0, 1, 2");

          bool step_upper = true, step_lower = true, graded = true;
          for (int i = 0; i < mesh.cell_count(); ++i) {
            const double h = mesh.cell_width(i);
            step_upper = step_upper && h <= H * (1.0 + 1e-12);
            step_lower = step_lower && h >= theta * H * eps * (1.0 - 1e-12);
          }
          report.check(step_upper, tag + ": h_i <= H");
          report.check(step_lower, tag + ": h_i >= theta*H*eps");

          const int L = static_cast<int>(std::ceil(1.0 / H));
          bool fine = true;
          for (int i = 0; i < L && i < mesh.M; ++i)
            fine = fine && detail::width_matches(mesh.cell_width(i), H * eps);
          report.check(fine, tag + ": first ceil(1/H) cells have width H*eps");

          if (variant == MeshVariant::Coarse) {
            const double eps_k = std::pow(eps, (k - 1.0) / k);
            const double expected =
                H * eps_k * L >= 1.0 ? 1.0 / L : H * eps_k;  // uniform fill for k = 1
            bool fine_right = true;
            for (int i = mesh.M; i < mesh.M + std::min(L, mesh.M2); ++i)
              fine_right = fine_right && detail::width_matches(mesh.cell_width(i), expected);
            report.check(fine_right, tag + ": fine cells after 1 have the coarse width");
          }

          for (int i = L; i < mesh.M; ++i) {
            const double h = mesh.cell_width(i);
            graded = graded && h <= H * mesh.nodes[i + 1] * (1.0 + 1e-12);
          }
          for (int i = mesh.M; i < mesh.cell_count(); ++i) {
            const double h = mesh.cell_width(i);
            graded = graded && h <= H * mesh.nodes[i + 1] * (1.0 + 1e-12);
          }
          report.check(graded, tag + ": graded cells satisfy h_i <= H*x_i");

          if (variant == MeshVariant::Standard) {
            bool mirror = true;
            for (int i = 0; i <= mesh.M; ++i)
              mirror = mirror && mesh.nodes[mesh.M + i] == 1.0 + mesh.nodes[i];
            report.check(mirror, tag + ": mirror x_{M+i} = 1 + x_i");
            report.check(mesh.cell_count() == 2 * mesh.M, tag + ": cell count 2M");
          } else {
            report.check(mesh.cell_count() == mesh.M + mesh.M2, tag + ": cell count M+M2");
          }

          if (k == 1 || variant == MeshVariant::Standard) {
            report.check(mesh.cell_count() >= prev_cells,
                         tag + ": cell count nondecreasing as H shrinks");
            prev_cells = mesh.cell_count();
          }
        }
      }
    }
  }
  return report;
}

/// Gauss rule exactness and basic sanity.
inline VerifyReport verify_quadrature() {
  VerifyReport report;
  report.suite = "quadrature";
  for (int q = 1; q <= 10; ++q) {
    const GaussRule rule = gauss_rule(q);
    bool exact = true;
    for (int m = 0; m <= 2 * q - 1; ++m) {
      double sum = 0.0;
      for (int g = 0; g < q; ++g) sum += rule.weights[g] * std::pow(rule.nodes[g], m);
      exact = exact && std::abs(sum - 1.0 / (m + 1)) <= 1e-14;
    }
    report.check(exact, "q=" + std::to_string(q) + ": exact for monomials up to 2q-1");
  }
  for (int q = 1; q <= 20; ++q) {
    const GaussRule rule = gauss_rule(q);
    double sum = 0.0;
    bool inside = true, symmetric = true;
    for (int g = 0; g < q; ++g) {
      sum += rule.weights[g];
      inside = inside && rule.nodes[g] > 0.0 && rule.nodes[g] < 1.0;
      symmetric = symmetric &&
                  std::abs(rule.nodes[g] + rule.nodes[q - 1 - g] - 1.0) <= 1e-14;
    }
    report.check(std::abs(sum - 1.0) <= 1e-14 && inside && symmetric,
                 "q=" + std::to_string(q) + ": weights sum to 1, nodes inside, symmetric");
  }
  return report;
}

/// Matrix structure, quadrature stability and the shift block against brute
/// force on small meshes.
inline VerifyReport verify_assembly() {
  VerifyReport report;
  report.suite = "assembly";

  // zero shift coefficient leaves a band matrix and zero rhs stays zero
  for (int k : {1, 2, 3}) {
    ProblemSpec spec;
    spec.epsilon = 1e-2;
    spec.b = [](double x) { return 2.0 + x; };
    spec.b_prime = [](double) { return 1.0; };
    spec.c = [](double x) { return 3.0 + x; };
    spec.dshift = [](double) { return 0.0; };
    spec.f = [](double) { return 0.0; };
    spec.phi = [](double) { return 0.0; };
    const MeshParams mp{0.5, 1e-2, k, MeshVariant::Standard, 0.005};
    const FeSpace space(build_standard(mp), k);
    const LinearSystem sys = assemble(spec, space);
    report.check(sys.max_band() <= k,
                 "k=" + std::to_string(k) + ": dshift=0 keeps bandwidth 2k+1");
    double rhs_max = 0.0;
    for (double v : sys.rhs()) rhs_max = std::max(rhs_max, std::abs(v));
    report.check(rhs_max == 0.0, "k=" + std::to_string(k) + ": f=0, phi=0 gives rhs=0");
  }

  // doubling the quadrature order must not move entries for polynomial data
  for (int k : {1, 2, 3}) {
    ProblemSpec spec;
    spec.epsilon = 1e-2;
    spec.b = [](double x) { return 1.0 + 0.5 * x * x; };
    spec.b_prime = [](double x) { return x; };
    spec.c = [](double x) { return 4.0 + x * x; };
    spec.dshift = [](double x) { return 1.0 + 0.25 * x * x; };
    spec.f = [](double x) { return 1.0 + x; };
    spec.phi = [](double x) { return x * x + x; };
    const MeshParams mp{0.5, 1e-2, k, MeshVariant::Coarse, 0.005};
    const FeSpace space(build_coarse(mp), k);
    const LinearSystem coarse_q = assemble(spec, space, k + 2);
    const LinearSystem fine_q = assemble(spec, space, 2 * (k + 2));
    double worst = 0.0;
    for (const auto& [pos, v] : coarse_q.entries()) {
      const double w = fine_q.entry(pos.first, pos.second);
      worst = std::max(worst, std::abs(v - w) / std::max(1.0, std::abs(v)));
    }
    report.check(worst <= 1e-12, "k=" + std::to_string(k) +
                                     ": doubling q moves entries by <= 1e-12 relative");
  }

  // overlay partition: pieces tile the target cell exactly
  {
    const MeshParams mp{0.5, 1e-2, 3, MeshVariant::Coarse, 0.005};
    const Mesh1D mesh = build_coarse(mp);
    bool tiles = true;
    int multi = 0;
    for (int cell = mesh.M; cell < mesh.cell_count(); ++cell) {
      const std::vector<double> cuts = shift_overlay(mesh, cell);
      if (cuts.size() > 2) ++multi;
      double len = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) len += cuts[i + 1] - cuts[i];
      tiles = tiles && std::abs(len - mesh.cell_width(cell)) <= 1e-14;
    }
    report.check(tiles, "coarse overlay pieces tile each target cell to 1e-14");
    report.check(multi > 0, "coarse overlay splits at least one target cell");
  }
  return report;
}

/// Interpolation operator: polynomial reproduction and layer-model rates.
inline VerifyReport verify_interpolation() {
  VerifyReport report;
  report.suite = "interpolation";

  for (int k : {2, 3, 4}) {
    const MeshParams mp{0.4, 1e-2, k, MeshVariant::Standard, 0.005};
    const FeSpace space(build_standard(mp), k);
    const ScalarFn g = [](double x) { return x * (2.0 - x); };
    const FeFunction fe = interpolate(g, space);
    double worst = 0.0;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double x = unif(rng);
      worst = std::max(worst, std::abs(evaluate(fe, x).value - g(x)));
    }
    report.check(worst <= 1e-10,
                 "k=" + std::to_string(k) + ": degree-2 polynomial reproduced");
  }

  // H halves from 0.4; the L2 rate is read off the last pair, where the
  // largest graded cell has started shrinking proportionally with H
  {
    const LayerModel model = layer_model(2.0, 1e-6, 1);
    const InterpolationTables t =
        interpolation_study(model, MeshVariant::Standard, 1, {0.4, 0.2, 0.1, 0.05}, 1e-6);
    const double rate = *t.l2.rows[t.l2.rows.size() - 2].rate;
    report.check(rate >= 1.8, "standard k=1: L2 interpolation rate >= 1.8 (got " +
                                  std::to_string(rate) + ")");
  }
  {
    const LayerModel model = layer_model(2.0, 1e-6, 2);
    const InterpolationTables t =
        interpolation_study(model, MeshVariant::Coarse, 2, {0.4, 0.2, 0.1, 0.05}, 1e-6);
    const double rate = *t.energy.rows[t.energy.rows.size() - 2].rate;
    report.check(check_coarse_assumption({0.1, 1e-6, 2, MeshVariant::Coarse, 0.005}),
                 "coarse k=2: accuracy assumption holds at eps=1e-6");
    report.check(rate >= 1.8, "coarse k=2: energy interpolation rate >= 1.8 (got " +
                                  std::to_string(rate) + ")");
  }
  return report;
}

/// Discrete coercivity of the assembled bilinear form on random vectors.
inline VerifyReport verify_coercivity() {
  VerifyReport report;
  report.suite = "coercivity";
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (const std::string& problem : {std::string("paper-example"), std::string("manufactured")}) {
    const ProblemSpec spec = registry_get(problem, 1e-2);
    const double gamma = compute_gamma(spec);
    for (MeshVariant variant : {MeshVariant::Standard, MeshVariant::Coarse}) {
      for (int k : {1, 2, 3}) {
        for (double H : {0.5, 0.2}) {
          const MeshParams mp{H, 1e-2, k, variant, 0.005};
          const FeSpace space(build_mesh(mp), k);
          const LinearSystem sys = assemble(spec, space);
          bool ok = true;
          double margin = std::numeric_limits<double>::infinity();
          for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(space.dof_count());
            double vv = 0.0;
            for (double& c : v) {
              c = unif(rng);
              vv += c * c;
            }
            const FeFunction fe(space, v);
            const double l2 = energy_norm(fe, {0.0, 1.0});
            const double h1 = energy_norm(fe, {1.0, 0.0});
            const double lhs = sys.quadratic_form(v);
            const double rhs = spec.epsilon * h1 * h1 + gamma * l2 * l2;
            ok = ok && lhs >= rhs - 1e-10 * vv;
            margin = std::min(margin, lhs - rhs);
          }
          char buf[128];
          std::snprintf(buf, sizeof buf, "%s %s k=%d H=%g: vAv >= eps|v'|^2+gamma|v|^2 (margin %.3g)",
                        problem.c_str(), to_string(variant), k, H, margin);
          report.check(ok, buf);
        }
      }
    }
  }
  return report;
}

/// Runs one named suite, or all of them.
inline VerifyReport run_suite(const std::string& name) {
  if (name == "mesh") return verify_mesh();
  if (name == "quadrature") return verify_quadrature();
  if (name == "assembly") return verify_assembly();
  if (name == "interpolation") return verify_interpolation();
  if (name == "coercivity") return verify_coercivity();
  if (name == "all") {
    VerifyReport all;
    all.suite = "all";
    for (const char* suite : {"mesh", "quadrature", "assembly", "interpolation", "coercivity"}) {
      const VerifyReport r = run_suite(suite);
      all.passed = all.passed && r.passed;
      for (const std::string& line : r.lines) all.lines.push_back(r.suite + ": " + line);
    }
    return all;
  }
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

}  // namespace shiftfem
