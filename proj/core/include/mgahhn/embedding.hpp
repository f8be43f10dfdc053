#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mgahhn/matrix.hpp"

namespace mgahhn {

// First two principal components of the rows of z (covariance eigenvectors,
// largest eigenvalue first). Zero-variance input projects to zeros.
Matrix pca_2d(const Matrix& z);

// CSV export: header `node_id,z_1..z_D[,pc1,pc2]`, one row per node, values
// printed with full float64 round-trip precision. node_ids supplies the
// first column; empty means 0..N-1.
void export_embeddings(const Matrix& z, const std::filesystem::path& out,
                       bool project2d,
                       const std::vector<std::string>& node_ids = {});

}  // namespace mgahhn
