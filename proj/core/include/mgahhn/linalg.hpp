#pragma once

#include <vector>

#include "mgahhn/matrix.hpp"

namespace mgahhn {

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Intended for the
// small matrices that show up here (covariances, normalized adjacencies at
// test scale); not tuned for large n.
SymmetricEigen eigen_symmetric(const Matrix& a, int max_sweeps = 64);

double min_eigenvalue_symmetric(const Matrix& a);

bool is_symmetric(const Matrix& a, double tol);

}  // namespace mgahhn
