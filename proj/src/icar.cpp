#include "icar.hpp"

#include <algorithm>

#include "carinfo/error.hpp"

namespace carinfo::detail {

std::vector<ComponentBasis> laplacian_bases(const AdjacencyGraph& graph) {
  std::vector<ComponentBasis> bases;
  for (const auto& members : graph.components()) {
    if (members.size() < 2) continue;
    const auto n = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      const std::size_t v = members[static_cast<std::size_t>(a)];
      laplacian(a, a) = static_cast<double>(graph.degree(v));
      for (std::size_t w : graph.neighbors(v)) {
        const auto b = std::lower_bound(members.begin(), members.end(), w) - members.begin();
        laplacian(a, b) = -1.0;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
    if (solver.info() != Eigen::Success) throw SamplerError("eigendecomposition of the ICAR precision failed");
    // Eigenvalues ascend; a connected component has exactly one null (constant) mode.
    if (!(solver.eigenvalues()(1) > 1e-9)) throw SamplerError("ICAR component is not connected");
    bases.push_back({members, solver.eigenvectors().rightCols(n - 1), solver.eigenvalues().tail(n - 1)});
  }
  return bases;
}

}  // namespace carinfo::detail
