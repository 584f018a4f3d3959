#pragma once

#include <Eigen/Sparse>
#include <cmath>
#include <string>
#include <vector>

#include "shiftfem/assembly.hpp"
#include "shiftfem/errors.hpp"

namespace shiftfem {

/// Direct sparse LU solve of the assembled system. The relative residual is
/// checked a posteriori; a zero right-hand side short-circuits to zero.
inline std::vector<double> solve(const LinearSystem& sys) {
  const int n = sys.size();
  double rhs_max = 0.0;
  for (double v : sys.rhs()) rhs_max = std::max(rhs_max, std::abs(v));
  if (rhs_max == 0.0) return std::vector<double>(n, 0.0);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(sys.entries().size());
  for (const auto& [pos, v] : sys.entries()) trip.emplace_back(pos.first, pos.second, v);
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw SolverError("solve: LU factorization failed (singular matrix?)");
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(sys.rhs().data(), n);
  const Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw SolverError("solve: back substitution failed");

  const double residual = (A * x - b).lpNorm<Eigen::Infinity>() / rhs_max;
  if (!(residual <= 1e-10))
    throw SolverError("solve: relative residual " + std::to_string(residual) +
                      " exceeds 1e-10");
  return std::vector<double>(x.data(), x.data() + n);
}

}  // namespace shiftfem
