#pragma once

// Internal: spectral form of the intrinsic CAR precision.

#include <vector>

#include <Eigen/Dense>

#include "carinfo/graph.hpp"

namespace carinfo::detail {

/// Non-null eigenpairs of one connected component's Laplacian D - W.
struct ComponentBasis {
  std::vector<std::size_t> members;  // sorted region indices
  Eigen::MatrixXd vectors;            // |members| x (|members| - 1), orthonormal, orthogonal to 1
  Eigen::VectorXd eigenvalues;        // |members| - 1, all positive
};

/// One basis per component with at least two regions; islands are skipped.
std::vector<ComponentBasis> laplacian_bases(const AdjacencyGraph& graph);

}  // namespace carinfo::detail
