#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "shiftfem/analysis.hpp"
#include "shiftfem/assembly.hpp"
#include "shiftfem/solver.hpp"

namespace shiftfem {

/// One convergence study: problem, mesh family, degree and an H sweep measured
/// against a high-order fine-mesh reference solution.
struct StudyConfig {
  std::string problem = "paper-example";
  MeshVariant variant = MeshVariant::Standard;
  int degree = 1;
  double epsilon = 1e-6;
  std::vector<double> H_list = {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
  int reference_degree = 4;
  double reference_H = 0.05;
  int quad_points = 0;  ///< 0 picks degree + 2 per (sub)interval
  double omission_theta = 0.005;
  RateBasis rate_basis = RateBasis::Cells;

  void validate() const {
    if (H_list.empty()) throw std::invalid_argument("StudyConfig: H list is empty");
    for (std::size_t i = 0; i < H_list.size(); ++i) {
      if (!(H_list[i] > 0.0 && H_list[i] < 1.0))
        throw std::invalid_argument("StudyConfig: H values must lie in (0,1)");
      if (i > 0 && !(H_list[i] < H_list[i - 1]))
        throw std::invalid_argument("StudyConfig: H list must be strictly decreasing");
    }
    if (!(reference_H > 0.0 && reference_H <= H_list.back()))
      throw std::invalid_argument("StudyConfig: reference H must not exceed the smallest H");
    if (degree < 1 || reference_degree < 1)
      throw std::invalid_argument("StudyConfig: degrees must be >= 1");
    if (quad_points < 0 || quad_points > 20)
      throw std::invalid_argument("StudyConfig: quad points must lie in [1,20] (or 0 = auto)");
  }
};

struct StudyResult {
  ConvergenceTable table;
  bool coarse_assumption_ok = true;  ///< exp(-eps^{-1/k}) <= H^{k-1} held for all H
  double gamma = 0.0;                ///< coercivity estimate used in the norm
};

/// Solves the configured problem for every H and tabulates the energy error
/// against the reference solution (solved once per study).
inline StudyResult run_study(const StudyConfig& cfg) {
  cfg.validate();
  ProblemSpec spec = registry_get(cfg.problem, cfg.epsilon);
  require_valid(spec);

  StudyResult result;
  result.gamma = compute_gamma(spec);
  const EnergyNormParams norm{cfg.epsilon, result.gamma};

  const MeshParams ref_params{cfg.reference_H, cfg.epsilon, cfg.reference_degree,
                              cfg.variant, cfg.omission_theta};
  const FeSpace ref_space(build_mesh(ref_params), cfg.reference_degree);
  const FeFunction u_ref(ref_space, solve(assemble(spec, ref_space, cfg.quad_points)));

  ConvergenceTable& table = result.table;
  table.problem = cfg.problem;
  table.variant = to_string(cfg.variant);
  table.degree = cfg.degree;
  table.epsilon = cfg.epsilon;
  table.norm = "energy";
  char ref[48];
  std::snprintf(ref, sizeof ref, "fe(k=%d, H=%g)", cfg.reference_degree, cfg.reference_H);
  table.reference = ref;

  for (double H : cfg.H_list) {
    const MeshParams mp{H, cfg.epsilon, cfg.degree, cfg.variant, cfg.omission_theta};
    if (cfg.variant == MeshVariant::Coarse && !check_coarse_assumption(mp))
      result.coarse_assumption_ok = false;
    const FeSpace space(build_mesh(mp), cfg.degree);
    const FeFunction u(space, solve(assemble(spec, space, cfg.quad_points)));
    table.rows.push_back({H, space.cell_count(), space.dof_count(),
                          error_vs_reference(u, u_ref, norm), std::nullopt});
  }
  if (table.rows.size() >= 2) apply_rates(table, cfg.rate_basis);
  return result;
}

}  // namespace shiftfem
