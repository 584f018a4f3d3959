#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "shiftfem/lagrange.hpp"
#include "shiftfem/mesh.hpp"

namespace shiftfem {

/// H^1_0-conforming space of continuous piecewise polynomials of degree k.
/// Global Lagrange points are numbered lexicographically (cell*k + local);
/// the two boundary points at x = 0 and x = 2 carry no degree of freedom, so
/// dof_count = cells*k - 1.
struct FeSpace {
  Mesh1D mesh;
  int degree = 1;

  static constexpr int kBoundaryDof = -1;

  FeSpace() = default;
  FeSpace(Mesh1D m, int k) : mesh(std::move(m)), degree(k) {
    if (k < 1) throw std::invalid_argument("FeSpace: degree must be >= 1");
  }

  int cell_count() const { return mesh.cell_count(); }
  int point_count() const { return cell_count() * degree + 1; }
  int dof_count() const { return point_count() - 2; }

  /// Global dof behind local Lagrange point `local` of `cell`, or kBoundaryDof.
  int global_dof(int cell, int local) const {
    const int p = cell * degree + local;
    if (p == 0 || p == point_count() - 1) return kBoundaryDof;
    return p - 1;
  }

  /// Coordinate of a local Lagrange point.
  double point(int cell, int local) const {
    return mesh.nodes[cell] +
           mesh.cell_width(cell) * (static_cast<double>(local) / degree);
  }
};

/// Coefficients over a FeSpace; boundary values are implicitly zero.
struct FeFunction {
  FeSpace space;
  std::vector<double> coeffs;

  FeFunction() = default;
  explicit FeFunction(FeSpace s) : space(std::move(s)), coeffs(space.dof_count(), 0.0) {}
  FeFunction(FeSpace s, std::vector<double> c) : space(std::move(s)), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != space.dof_count())
      throw std::invalid_argument("FeFunction: coefficient count does not match the space");
  }
};

/// Value and x-derivative on `cell` at reference coordinate xi in [0,1].
inline ShapeValue eval_local(const FeFunction& fe, int cell, double xi) {
  const FeSpace& sp = fe.space;
  const double h = sp.mesh.cell_width(cell);
  double value = 0.0;
  double derivative = 0.0;
  for (int j = 0; j <= sp.degree; ++j) {
    const int dof = sp.global_dof(cell, j);
    if (dof == FeSpace::kBoundaryDof) continue;
    const ShapeValue s = shape_eval(sp.degree, j, xi);
    value += fe.coeffs[dof] * s.value;
    derivative += fe.coeffs[dof] * s.derivative;
  }
  return {value, derivative / h};
}

/// Value and derivative at x in [0,2]; interior nodes evaluate on the left cell.
inline ShapeValue evaluate(const FeFunction& fe, double x) {
  const int cell = fe.space.mesh.locate(x);
  const double h = fe.space.mesh.cell_width(cell);
  return eval_local(fe, cell, (x - fe.space.mesh.nodes[cell]) / h);
}

}  // namespace shiftfem
