#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "shiftfem/shiftfem.hpp"

namespace testutil {

// Composite Simpson rule; the panel count is rounded up to an even number.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Brute-force shift block: for every target cell in (1,2), integrate
// dshift(x) phi_col(x-1) phi_row(x) with composite Simpson, 10^4 panels per
// smooth piece. Pieces are delimited by shifted source nodes found by a direct
// scan over the node list, independently of the library overlay.
inline std::map<std::pair<int, int>, double> brute_force_shift_block(
    const shiftfem::ProblemSpec& spec, const shiftfem::FeSpace& space,
    int panels = 10000, int only_target = -1) {
  using shiftfem::FeSpace;
  const shiftfem::Mesh1D& mesh = space.mesh;
  const int k = space.degree;
  if (panels % 2) ++panels;

  std::map<std::pair<int, int>, double> block;
  for (int target = mesh.M; target < mesh.cell_count(); ++target) {
    if (only_target >= 0 && target != only_target) continue;
    const double t0 = mesh.nodes[target];
    const double t1 = mesh.nodes[target + 1];
    const double ht = t1 - t0;

    std::vector<double> cuts{t0 - 1.0};
    for (int i = 0; i <= mesh.M; ++i) {
      const double y = mesh.nodes[i];
      if (y > t0 - 1.0 + 1e-13 && y < t1 - 1.0 - 1e-13) cuts.push_back(y);
    }
    cuts.push_back(t1 - 1.0);

    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
      const double a = cuts[piece];
      const double b = cuts[piece + 1];
      const int src = mesh.locate(0.5 * (a + b));
      const double s0 = mesh.nodes[src];
      const double hs = mesh.cell_width(src);

      // accumulate all (row, col) pairs over one Simpson grid
      std::vector<double> acc((k + 1) * (k + 1), 0.0);
      const double hp = (b - a) / panels;
      for (int p = 0; p <= panels; ++p) {
        const double y = a + p * hp;
        const double x = 1.0 + y;
        const double weight = (p == 0 || p == panels) ? 1.0 : (p % 2 ? 4.0 : 2.0);
        const double d = spec.dshift(x);
        std::vector<double> row_vals(k + 1), col_vals(k + 1);
        for (int i = 0; i <= k; ++i)
          row_vals[i] = shiftfem::shape_eval(k, i, (x - t0) / ht).value;
        for (int j = 0; j <= k; ++j)
          col_vals[j] = shiftfem::shape_eval(k, j, (y - s0) / hs).value;
        for (int i = 0; i <= k; ++i)
          for (int j = 0; j <= k; ++j)
            acc[i * (k + 1) + j] += weight * d * row_vals[i] * col_vals[j];
      }
      for (int i = 0; i <= k; ++i) {
        const int row = space.global_dof(target, i);
        if (row == FeSpace::kBoundaryDof) continue;
        for (int j = 0; j <= k; ++j) {
          const int col = space.global_dof(src, j);
          if (col == FeSpace::kBoundaryDof) continue;
          block[{row, col}] += acc[i * (k + 1) + j] * hp / 3.0;
        }
      }
    }
  }
  return block;
}

}  // namespace testutil
