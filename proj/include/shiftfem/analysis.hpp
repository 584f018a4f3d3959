#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shiftfem/fe_space.hpp"
#include "shiftfem/problem.hpp"
#include "shiftfem/quadrature.hpp"
#include "shiftfem/table.hpp"

namespace shiftfem {

/// Weights of the energy norm |||v|||^2 = eps ||v'||^2 + gamma ||v||^2.
struct EnergyNormParams {
  double epsilon = 1.0;
  double gamma = 1.0;
};

namespace detail {

struct NormAccumulator {
  double l2 = 0.0;      // int v^2
  double h1semi = 0.0;  // int v'^2

  void add(double w, double value, double derivative) {
    l2 += w * value * value;
    h1semi += w * derivative * derivative;
  }
  double energy(EnergyNormParams p) const {
    return std::sqrt(p.epsilon * h1semi + p.gamma * l2);
  }
};

// Node union of two meshes, deduplicated with absolute tolerance 2e-14.
inline std::vector<double> merge_nodes(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  std::vector<double> out;
  out.reserve(merged.size());
  for (double x : merged)
    if (out.empty() || x - out.back() > 2e-14) out.push_back(x);
  // keep the right endpoint exact even if the last node got absorbed
  out.back() = std::max(out.back(), merged.back());
  return out;
}

}  // namespace detail

/// sqrt(eps int g'^2 + gamma int g^2), integrated cell by cell on `mesh`.
inline double energy_norm(const ScalarFn& g, const ScalarFn& g_prime, const Mesh1D& mesh,
                          EnergyNormParams params, int quad_points) {
  const GaussRule rule = gauss_rule(quad_points);
  detail::NormAccumulator acc;
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    const double x0 = mesh.nodes[cell];
    const double h = mesh.cell_width(cell);
    for (int gq = 0; gq < rule.size(); ++gq) {
      const double x = x0 + h * rule.nodes[gq];
      acc.add(h * rule.weights[gq], g(x), g_prime(x));
    }
  }
  return acc.energy(params);
}

/// Energy norm of a finite element function, q = degree + 3 points per cell.
inline double energy_norm(const FeFunction& fe, EnergyNormParams params) {
  const GaussRule rule = gauss_rule(fe.space.degree + 3);
  detail::NormAccumulator acc;
  for (int cell = 0; cell < fe.space.cell_count(); ++cell) {
    const double h = fe.space.mesh.cell_width(cell);
    for (int gq = 0; gq < rule.size(); ++gq) {
      const ShapeValue v = eval_local(fe, cell, rule.nodes[gq]);
      acc.add(h * rule.weights[gq], v.value, v.derivative);
    }
  }
  return acc.energy(params);
}

/// Lagrange interpolant of g on the space's equidistant points. The boundary
/// values of g must vanish (up to 1e-8) for the interpolant to stay in H^1_0.
inline FeFunction interpolate(const ScalarFn& g, const FeSpace& space) {
  if (std::abs(g(0.0)) > 1e-8 || std::abs(g(2.0)) > 1e-8)
    throw std::invalid_argument("interpolate: g does not vanish at the boundary");
  FeFunction fe(space);
  const int k = space.degree;
  for (int cell = 0; cell < space.cell_count(); ++cell) {
    const int first = cell == 0 ? 0 : 1;  // shared point already set by the left cell
    for (int local = first; local <= k; ++local) {
      const int dof = space.global_dof(cell, local);
      if (dof == FeSpace::kBoundaryDof) continue;
      fe.coeffs[dof] = g(space.point(cell, local));
    }
  }
  return fe;
}

/// Energy-norm distance between finite element functions living on different
/// meshes, integrated over the node union with q = max(degrees) + 3 points.
inline double error_vs_reference(const FeFunction& a, const FeFunction& b,
                                 EnergyNormParams params) {
  const std::vector<double> nodes =
      detail::merge_nodes(a.space.mesh.nodes, b.space.mesh.nodes);
  const GaussRule rule = gauss_rule(std::max(a.space.degree, b.space.degree) + 3);
  detail::NormAccumulator acc;
  for (std::size_t cell = 0; cell + 1 < nodes.size(); ++cell) {
    const double h = nodes[cell + 1] - nodes[cell];
    for (int gq = 0; gq < rule.size(); ++gq) {
      const double x = nodes[cell] + h * rule.nodes[gq];
      const ShapeValue va = evaluate(a, x);
      const ShapeValue vb = evaluate(b, x);
      acc.add(h * rule.weights[gq], va.value - vb.value, va.derivative - vb.derivative);
    }
  }
  return acc.energy(params);
}

/// Energy-norm distance from a closed-form function, integrated on the
/// function's own mesh with q = degree + 3 points.
inline double error_vs_exact(const FeFunction& fe, const ScalarFn& u,
                             const ScalarFn& u_prime, EnergyNormParams params) {
  const GaussRule rule = gauss_rule(fe.space.degree + 3);
  detail::NormAccumulator acc;
  for (int cell = 0; cell < fe.space.cell_count(); ++cell) {
    const double x0 = fe.space.mesh.nodes[cell];
    const double h = fe.space.mesh.cell_width(cell);
    for (int gq = 0; gq < rule.size(); ++gq) {
      const double x = x0 + h * rule.nodes[gq];
      const ShapeValue v = eval_local(fe, cell, rule.nodes[gq]);
      acc.add(h * rule.weights[gq], v.value - u(x), v.derivative - u_prime(x));
    }
  }
  return acc.energy(params);
}

enum class RateBasis { Cells, GradingParameter };

/// Convergence rate between consecutive rows: ln(e_i/e_{i+1}) divided by
/// ln(N_{i+1}/N_i) (cell counts) or ln(H_i/H_{i+1}).
inline double rate_between(double error_coarse, double error_fine, double n_coarse,
                           double n_fine) {
  if (!(error_coarse > 0.0) || !(error_fine > 0.0))
    throw std::domain_error("rate_between: errors must be positive");
  return std::log(error_coarse / error_fine) / std::log(n_fine / n_coarse);
}

/// Fills the rate column; the last row keeps none.
inline void apply_rates(ConvergenceTable& table, RateBasis basis = RateBasis::Cells) {
  if (table.rows.size() < 2)
    throw std::invalid_argument("apply_rates: need at least two rows");
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const TableRow& r0 = table.rows[i];
    const TableRow& r1 = table.rows[i + 1];
    table.rows[i].rate = basis == RateBasis::Cells
                             ? rate_between(r0.error, r1.error, r0.cells, r1.cells)
                             : rate_between(r0.error, r1.error, 1.0 / r0.H, 1.0 / r1.H);
  }
  table.rows.back().rate.reset();
}

struct InterpolationTables {
  ConvergenceTable l2;
  ConvergenceTable energy;
};

/// Interpolation-error sweep for the synthetic layer model, cell by cell. Each
/// cell interpolates its own smooth restriction of u = S + E + W: the weak
/// layer W jumps by eps at the shift point, and the cells left of it see the
/// zero branch while the cells right of it see the layer branch, as in the
/// cellwise interpolation estimates. Energy norm uses gamma = 1.
inline InterpolationTables interpolation_study(const LayerModel& model, MeshVariant variant,
                                               int degree, const std::vector<double>& H_list,
                                               double epsilon,
                                               double theta = MeshParams{}.omission_theta) {
  InterpolationTables tables;
  for (ConvergenceTable* t : {&tables.l2, &tables.energy}) {
    t->problem = "layer-model";
    t->variant = to_string(variant);
    t->degree = degree;
    t->epsilon = epsilon;
    t->reference = "closed form";
  }
  tables.l2.norm = "L2";
  tables.energy.norm = "energy";

  const EnergyNormParams params{epsilon, 1.0};
  const int k = degree;
  const GaussRule rule = gauss_rule(k + 3);
  for (double H : H_list) {
    const MeshParams mp{H, epsilon, k, variant, theta};
    const Mesh1D mesh = build_mesh(mp);
    detail::NormAccumulator acc;
    std::vector<double> nodal(k + 1);
    for (int cell = 0; cell < mesh.cell_count(); ++cell) {
      const double x0 = mesh.nodes[cell];
      const double h = mesh.cell_width(cell);
      const bool left_half = cell < mesh.M;
      const auto local = [&](double x, int order) {
        double v = model.S(x, order) + model.E(x, order);
        if (!left_half) v += model.W(x, order);
        return v;
      };
      for (int j = 0; j <= k; ++j)
        nodal[j] = local(x0 + h * (static_cast<double>(j) / k), 0);
      for (int gq = 0; gq < rule.size(); ++gq) {
        const double xi = rule.nodes[gq];
        const double x = x0 + h * xi;
        double iv = 0.0, id = 0.0;
        for (int j = 0; j <= k; ++j) {
          const ShapeValue s = shape_eval(k, j, xi);
          iv += nodal[j] * s.value;
          id += nodal[j] * s.derivative;
        }
        acc.add(h * rule.weights[gq], iv - local(x, 0), id / h - local(x, 1));
      }
    }
    const TableRow row{H, mesh.cell_count(), mesh.cell_count() * k - 1, 0.0, std::nullopt};
    tables.l2.rows.push_back(row);
    tables.l2.rows.back().error = std::sqrt(acc.l2);
    tables.energy.rows.push_back(row);
    tables.energy.rows.back().error = acc.energy(params);
  }
  if (tables.l2.rows.size() >= 2) {
    apply_rates(tables.l2);
    apply_rates(tables.energy);
  }
  return tables;
}

}  // namespace shiftfem
