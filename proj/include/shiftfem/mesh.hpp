#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftfem {

enum class MeshVariant { Standard, Coarse };

inline const char* to_string(MeshVariant v) {
  return v == MeshVariant::Standard ? "standard" : "coarse";
}

/// Parameters of the recursively graded meshes on [0,2].
///
/// Next to each layer the mesh starts with uniform cells of width H*eps
/// (H*eps^{(k-1)/k} on (1,2) for the coarse variant) and then grows
/// geometrically with ratio 1+H until it reaches the end of the unit
/// interval. No transition point is involved.
struct MeshParams {
  double H = 0.1;          ///< grading parameter, 0 < H < 1
  double epsilon = 1e-6;   ///< perturbation parameter, 0 < eps < 1
  int degree = 1;          ///< polynomial degree k; only the coarse variant uses it
  MeshVariant variant = MeshVariant::Standard;
  double omission_theta = 0.005;  ///< final-cell omission threshold, 0 < theta < 1

  void validate() const {
    if (!(H > 0.0 && H < 1.0))
      throw std::invalid_argument("MeshParams: H must lie in (0,1)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("MeshParams: epsilon must lie in (0,1)");
    if (degree < 1)
      throw std::invalid_argument("MeshParams: degree must be >= 1");
    if (!(omission_theta > 0.0 && omission_theta < 1.0))
      throw std::invalid_argument("MeshParams: omission_theta must lie in (0,1)");
  }
};

/// Number of cells the graded mesh places on (0,1).
inline int compute_M(double H, double epsilon) {
  if (!(H > 0.0 && H < 1.0)) throw std::domain_error("compute_M: H must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("compute_M: epsilon must lie in (0,1)");
  const int L = static_cast<int>(std::ceil(1.0 / H));
  const double arg = H * epsilon * static_cast<double>(L);
  if (!(arg > 0.0) || arg >= 1.0)
    throw std::domain_error("compute_M: H*eps*ceil(1/H) must lie in (0,1)");
  return static_cast<int>(std::ceil(L - std::log(arg) / std::log1p(H)));
}

/// Number of cells the coarse variant places on (1,2). The fine width there is
/// H*eps^{(k-1)/k}; when that already exceeds 1/ceil(1/H) the interval is
/// filled with ceil(1/H) uniform cells (the k = 1 case).
inline int compute_M2(double H, double epsilon, int degree) {
  if (!(H > 0.0 && H < 1.0)) throw std::domain_error("compute_M2: H must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("compute_M2: epsilon must lie in (0,1)");
  if (degree < 1) throw std::domain_error("compute_M2: degree must be >= 1");
  const int L = static_cast<int>(std::ceil(1.0 / H));
  const double eps_k = std::pow(epsilon, (degree - 1.0) / degree);
  const double arg = H * eps_k * static_cast<double>(L);
  if (!(arg > 0.0)) throw std::domain_error("compute_M2: nonpositive logarithm argument");
  if (arg >= 1.0) return L;  // uniform cells fill (1,2)
  return static_cast<int>(std::ceil(L - std::log(arg) / std::log1p(H)));
}

/// True iff exp(-eps^{-1/k}) <= H^{k-1}, the regime in which the coarse
/// variant is known to keep the full convergence order.
inline bool check_coarse_assumption(const MeshParams& p) {
  p.validate();
  return std::exp(-std::pow(p.epsilon, -1.0 / p.degree)) <= std::pow(p.H, p.degree - 1.0);
}

/// Graded mesh on [0,2] with a node at 1 (index M) and M2 cells in (1,2).
struct Mesh1D {
  std::vector<double> nodes;  ///< x_0 = 0 < ... < x_M = 1 < ... < 2
  int M = 0;                  ///< index of the node at x = 1
  int M2 = 0;                 ///< number of cells in (1,2)
  MeshParams params;

  int cell_count() const { return static_cast<int>(nodes.size()) - 1; }
  double cell_width(int cell) const { return nodes[cell + 1] - nodes[cell]; }

  /// Cell containing x; interior nodes belong to the cell on their left.
  int locate(double x) const {
    if (!(x >= nodes.front() && x <= nodes.back()))
      throw std::out_of_range("Mesh1D::locate: coordinate outside [0,2]");
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    const int idx = static_cast<int>(it - nodes.begin()) - 1;
    return std::clamp(idx, 0, cell_count() - 1);
  }

  /// Wraps an explicit node list; it must start at 0, end at 2 and contain 1
  /// (to within 2e-14, the matched node is snapped onto 1 exactly).
  static Mesh1D from_nodes(std::vector<double> pts) {
    if (pts.size() < 3) throw std::invalid_argument("Mesh1D: need at least three nodes");
    if (pts.front() != 0.0 || pts.back() != 2.0)
      throw std::invalid_argument("Mesh1D: nodes must span [0,2]");
    int best = -1;
    double best_dist = 2e-14;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      const double dist = std::abs(pts[i] - 1.0);
      if (dist <= best_dist) {
        best = static_cast<int>(i);
        best_dist = dist;
      }
    }
    if (best < 0) throw std::invalid_argument("Mesh1D: no node at x = 1");
    pts[best] = 1.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (!(pts[i] > pts[i - 1]))
        throw std::invalid_argument("Mesh1D: nodes must be strictly increasing");
    Mesh1D mesh;
    mesh.M = best;
    mesh.M2 = static_cast<int>(pts.size()) - 1 - best;
    mesh.nodes = std::move(pts);
    return mesh;
  }
};

namespace detail {

// Nodes 0 = y_0 < ... < y_count = 1: `count-1` interior nodes from the uniform/
// geometric recursion, with the node before 1 dropped when the final cell is
// smaller than theta times its neighbour.
inline std::vector<double> graded_unit_nodes(double H, double fine, int count, double theta) {
  const int L = static_cast<int>(std::ceil(1.0 / H));
  std::vector<double> y;
  y.reserve(count + 1);
  y.push_back(0.0);
  for (int i = 1; i <= L && i < count; ++i) y.push_back(i * fine);
  for (int i = static_cast<int>(y.size()); i < count; ++i) {
    const double next = (1.0 + H) * y.back();
    if (next >= 1.0) break;  // roundoff guard; the recursion stays below 1
    y.push_back(next);
  }
  y.push_back(1.0);
  if (y.size() >= 3) {
    const double last = 1.0 - y[y.size() - 2];
    const double prev = y[y.size() - 2] - y[y.size() - 3];
    if (last < theta * prev) y.erase(y.end() - 2);
  }
  return y;
}

}  // namespace detail

/// Standard graded mesh: the (1,2) half mirrors the (0,1) half node by node.
inline Mesh1D build_standard(const MeshParams& p) {
  p.validate();
  if (p.variant != MeshVariant::Standard)
    throw std::invalid_argument("build_standard: params request the coarse variant");
  const int count = compute_M(p.H, p.epsilon);
  auto left = detail::graded_unit_nodes(p.H, p.H * p.epsilon, count, p.omission_theta);
  const int M = static_cast<int>(left.size()) - 1;

  Mesh1D mesh;
  mesh.nodes = std::move(left);
  mesh.nodes.reserve(2 * M + 1);
  for (int i = 1; i <= M; ++i) mesh.nodes.push_back(1.0 + mesh.nodes[i]);
  mesh.M = M;
  mesh.M2 = M;
  mesh.params = p;
  return mesh;
}

/// Coarse variant: same (0,1) half, but (1,2) is graded with fine width
/// H*eps^{(k-1)/k} (or filled uniformly when that width reaches cell size 1/L).
inline Mesh1D build_coarse(const MeshParams& p) {
  p.validate();
  if (p.variant != MeshVariant::Coarse)
    throw std::invalid_argument("build_coarse: params request the standard variant");
  const int count = compute_M(p.H, p.epsilon);
  auto left = detail::graded_unit_nodes(p.H, p.H * p.epsilon, count, p.omission_theta);

  const int L = static_cast<int>(std::ceil(1.0 / p.H));
  const double eps_k = std::pow(p.epsilon, (p.degree - 1.0) / p.degree);
  std::vector<double> right;  // offsets into (0,1], shifted up by 1 below
  if (p.H * eps_k * static_cast<double>(L) >= 1.0) {
    right.reserve(L);
    for (int i = 1; i <= L; ++i) right.push_back(static_cast<double>(i) / L);
  } else {
    const int count2 = compute_M2(p.H, p.epsilon, p.degree);
    auto y = detail::graded_unit_nodes(p.H, p.H * eps_k, count2, p.omission_theta);
    right.assign(y.begin() + 1, y.end());
  }

  Mesh1D mesh;
  mesh.nodes = std::move(left);
  mesh.M = static_cast<int>(mesh.nodes.size()) - 1;
  mesh.M2 = static_cast<int>(right.size());
  mesh.nodes.reserve(mesh.nodes.size() + right.size());
  for (double y : right) mesh.nodes.push_back(1.0 + y);
  mesh.params = p;
  return mesh;
}

inline Mesh1D build_mesh(const MeshParams& p) {
  return p.variant == MeshVariant::Standard ? build_standard(p) : build_coarse(p);
}

/// Diagnostic ratio H * N / ln(1/eps); the grading keeps it O(1). Informational
/// only, nothing enforces it.
inline double grading_diagnostic(const Mesh1D& mesh) {
  return mesh.params.H * mesh.cell_count() / std::log(1.0 / mesh.params.epsilon);
}

namespace detail {

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// One node coordinate per line, full precision.
inline void write_nodes(const Mesh1D& mesh, std::ostream& os) {
  for (double x : mesh.nodes) os << detail::g17(x) << '\n';
}

/// CSV with columns (index, x, h); h is the width of the cell ending at x.
inline void write_csv(const Mesh1D& mesh, std::ostream& os) {
  os << "index,x,h\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    os << i << ',' << detail::g17(mesh.nodes[i]) << ',';
    if (i > 0) os << detail::g17(mesh.nodes[i] - mesh.nodes[i - 1]);
    os << '\n';
  }
}

}  // namespace shiftfem
