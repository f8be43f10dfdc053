#pragma once

#include <cstddef>
#include <vector>

namespace mgahhn {

// Dense row-major double matrix used on the data plane (incidence products,
// normalized adjacencies, embeddings). Gradient-carrying math lives in
// Tensor; make_tensor(Matrix) in tensor.hpp is the bridge.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

}  // namespace mgahhn
