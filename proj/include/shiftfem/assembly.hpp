#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "shiftfem/fe_space.hpp"
#include "shiftfem/problem.hpp"
#include "shiftfem/quadrature.hpp"

namespace shiftfem {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Assembled sparse system A x = rhs over the interior dofs. Entries are kept
/// in a sorted coordinate map so tests and dumps see one merged value per
/// position.
class LinearSystem {
 public:
  explicit LinearSystem(int n) : n_(n), rhs_(n, 0.0) {}

  int size() const { return n_; }

  void add(int row, int col, double value) { entries_[{row, col}] += value; }

  double entry(int row, int col) const {
    const auto it = entries_.find({row, col});
    return it == entries_.end() ? 0.0 : it->second;
  }

  const std::map<std::pair<int, int>, double>& entries() const { return entries_; }
  std::vector<double>& rhs() { return rhs_; }
  const std::vector<double>& rhs() const { return rhs_; }

  /// v^T A v
  double quadratic_form(const std::vector<double>& v) const {
    double sum = 0.0;
    for (const auto& [pos, a] : entries_) sum += a * v[pos.first] * v[pos.second];
    return sum;
  }

  /// Largest |row - col| over stored entries.
  int max_band() const {
    int band = 0;
    for (const auto& [pos, a] : entries_)
      band = std::max(band, std::abs(pos.first - pos.second));
    return band;
  }

  /// Entries with |row - col| > band; for band = degree this is exactly the
  /// shift-coupling block.
  std::vector<Triplet> off_band(int band) const {
    std::vector<Triplet> out;
    for (const auto& [pos, a] : entries_)
      if (std::abs(pos.first - pos.second) > band) out.push_back({pos.first, pos.second, a});
    return out;
  }

  /// Coordinate-format text dump: "row col value" per line.
  void write_coo(std::ostream& os) const {
    for (const auto& [pos, a] : entries_)
      os << pos.first << ' ' << pos.second << ' ' << detail::g17(a) << '\n';
  }

 private:
  int n_;
  std::map<std::pair<int, int>, double> entries_;
  std::vector<double> rhs_;
};

/// Breakpoints of [t0-1, t1-1] for target cell [t0, t1] in (1,2) against the
/// source mesh on (0,1): both endpoints plus every source node strictly inside.
/// On the standard mesh the halves mirror each other and no interior node
/// survives, so exactly one piece remains.
inline std::vector<double> shift_overlay(const Mesh1D& mesh, int target_cell) {
  if (target_cell < mesh.M || target_cell >= mesh.cell_count())
    throw std::out_of_range("shift_overlay: target cell must lie inside (1,2)");
  const double y0 = mesh.nodes[target_cell] - 1.0;
  const double y1 = mesh.nodes[target_cell + 1] - 1.0;
  constexpr double snap = 1e-13;  // absorbs the 1-ulp mismatch of mirrored nodes

  std::vector<double> cuts;
  cuts.push_back(y0);
  const auto begin = mesh.nodes.begin();
  const auto end = begin + mesh.M + 1;
  for (auto it = std::upper_bound(begin, end, y0 + snap); it != end && *it < y1 - snap; ++it)
    cuts.push_back(*it);
  cuts.push_back(y1);
  return cuts;
}

/// Triplets of int_tau dshift(x) phi_col(x-1) phi_row(x) dx for one target
/// cell tau inside (1,2), integrated piece by piece over the overlay so each
/// piece sees a single source cell. One triplet per (row, col).
inline std::vector<Triplet> shift_couple(const ProblemSpec& spec, const FeSpace& space,
                                         int target_cell, int quad_points = 0) {
  const Mesh1D& mesh = space.mesh;
  const int k = space.degree;
  const int q = quad_points > 0 ? quad_points : k + 2;
  const GaussRule rule = gauss_rule(q);

  const double t0 = mesh.nodes[target_cell];
  const double ht = mesh.cell_width(target_cell);
  const std::vector<double> cuts = shift_overlay(mesh, target_cell);

  std::map<std::pair<int, int>, double> acc;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const int src = mesh.locate(0.5 * (a + b));
    const double s0 = mesh.nodes[src];
    const double hs = mesh.cell_width(src);
    for (int g = 0; g < rule.size(); ++g) {
      const double y = a + (b - a) * rule.nodes[g];
      const double x = 1.0 + y;
      const double w = (b - a) * rule.weights[g] * spec.dshift(x);
      if (w == 0.0) continue;
      const double xi_t = (x - t0) / ht;
      const double xi_s = (y - s0) / hs;
      for (int i = 0; i <= k; ++i) {
        const int row = space.global_dof(target_cell, i);
        if (row == FeSpace::kBoundaryDof) continue;
        const double vi = shape_eval(k, i, xi_t).value;
        for (int j = 0; j <= k; ++j) {
          const int col = space.global_dof(src, j);
          if (col == FeSpace::kBoundaryDof) continue;
          acc[{row, col}] += w * vi * shape_eval(k, j, xi_s).value;
        }
      }
    }
  }

  std::vector<Triplet> out;
  out.reserve(acc.size());
  for (const auto& [pos, v] : acc) out.push_back({pos.first, pos.second, v});
  return out;
}

/// Galerkin matrix and load vector:
///   A[i][j] = eps<phi_j', phi_i'> + <c phi_j - b phi_j', phi_i>
///             + <dshift phi_j(.-1), phi_i>_(1,2)
///   rhs[i]  = <f, phi_i> - <dshift phi(.-1), phi_i>_(0,1)
/// with q = degree+2 Gauss points per (sub)interval unless overridden.
inline LinearSystem assemble(const ProblemSpec& spec, const FeSpace& space,
                             int quad_points = 0) {
  const Mesh1D& mesh = space.mesh;
  if (std::abs(mesh.nodes[mesh.M] - 1.0) > 1e-12)
    throw std::invalid_argument("assemble: mesh carries no node at x = 1");
  const int k = space.degree;
  const int q = quad_points > 0 ? quad_points : k + 2;
  const GaussRule rule = gauss_rule(q);

  std::vector<std::vector<ShapeValue>> shapes(q);
  for (int g = 0; g < q; ++g) shapes[g] = shape_eval_all(k, rule.nodes[g]);

  LinearSystem sys(space.dof_count());
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    const double x0 = mesh.nodes[cell];
    const double h = mesh.cell_width(cell);
    const bool left_half = cell < mesh.M;
    for (int g = 0; g < q; ++g) {
      const double x = x0 + h * rule.nodes[g];
      const double w = h * rule.weights[g];
      const double bx = spec.b(x);
      const double cx = spec.c(x);
      // on (0,1) the shift term references the known history
      const double load = spec.f(x) - (left_half ? spec.dshift(x) * spec.phi(x - 1.0) : 0.0);
      for (int i = 0; i <= k; ++i) {
        const int row = space.global_dof(cell, i);
        if (row == FeSpace::kBoundaryDof) continue;
        const double vi = shapes[g][i].value;
        const double di = shapes[g][i].derivative / h;
        sys.rhs()[row] += w * load * vi;
        for (int j = 0; j <= k; ++j) {
          const int col = space.global_dof(cell, j);
          if (col == FeSpace::kBoundaryDof) continue;
          const double vj = shapes[g][j].value;
          const double dj = shapes[g][j].derivative / h;
          sys.add(row, col, w * (spec.epsilon * dj * di + (cx * vj - bx * dj) * vi));
        }
      }
    }
    if (!left_half)
      for (const Triplet& t : shift_couple(spec, space, cell, quad_points))
        sys.add(t.row, t.col, t.value);
  }
  return sys;
}

}  // namespace shiftfem
