#pragma once

#include <stdexcept>
#include <vector>

namespace shiftfem {

struct ShapeValue {
  double value = 0.0;
  double derivative = 0.0;
};

/// Value and xi-derivative of the j-th Lagrange basis polynomial of degree k
/// on the equidistant reference nodes {0, 1/k, ..., 1}.
inline ShapeValue shape_eval(int degree, int j, double xi) {
  if (degree < 1) throw std::invalid_argument("shape_eval: degree must be >= 1");
  if (j < 0 || j > degree) throw std::out_of_range("shape_eval: local index out of range");

  const double xj = static_cast<double>(j) / degree;
  double value = 1.0;
  for (int m = 0; m <= degree; ++m) {
    if (m == j) continue;
    const double xm = static_cast<double>(m) / degree;
    value *= (xi - xm) / (xj - xm);
  }

  double derivative = 0.0;
  for (int n = 0; n <= degree; ++n) {
    if (n == j) continue;
    const double xn = static_cast<double>(n) / degree;
    double term = 1.0 / (xj - xn);
    for (int m = 0; m <= degree; ++m) {
      if (m == j || m == n) continue;
      const double xm = static_cast<double>(m) / degree;
      term *= (xi - xm) / (xj - xm);
    }
    derivative += term;
  }
  return {value, derivative};
}

/// All degree+1 shape functions at one reference coordinate.
inline std::vector<ShapeValue> shape_eval_all(int degree, double xi) {
  std::vector<ShapeValue> out(degree + 1);
  for (int j = 0; j <= degree; ++j) out[j] = shape_eval(degree, j, xi);
  return out;
}

}  // namespace shiftfem
