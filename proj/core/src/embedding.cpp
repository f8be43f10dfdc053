#include "mgahhn/embedding.hpp"

#include <cstdio>
#include <fstream>

#include "mgahhn/error.hpp"
#include "mgahhn/linalg.hpp"

namespace mgahhn {

Matrix pca_2d(const Matrix& z) {
  const int n = z.rows, d = z.cols;
  if (n < 1 || d < 1) fail(Errc::ShapeMismatch, "pca_2d: empty input");

  std::vector<double> mean(d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) mean[j] += z.at(i, j);
  for (int j = 0; j < d; ++j) mean[j] /= n;

  Matrix cov(d, d);
  const double denom = n > 1 ? n - 1.0 : 1.0;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) {
      double da = z.at(i, a) - mean[a];
      for (int b = a; b < d; ++b)
        cov.at(a, b) += da * (z.at(i, b) - mean[b]);
    }
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      cov.at(a, b) /= denom;
      cov.at(b, a) = cov.at(a, b);
    }

  SymmetricEigen eig = eigen_symmetric(cov);  // ascending eigenvalues
  Matrix out(n, 2);
  for (int comp = 0; comp < 2; ++comp) {
    int col = d - 1 - comp;  // largest first
    if (col < 0) continue;   // d == 1: second component stays zero
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < d; ++j)
        s += (z.at(i, j) - mean[j]) * eig.vectors.at(j, col);
      out.at(i, comp) = s;
    }
  }
  return out;
}

void export_embeddings(const Matrix& z, const std::filesystem::path& out_path,
                       bool project2d, const std::vector<std::string>& node_ids) {
  if (!node_ids.empty() && static_cast<int>(node_ids.size()) != z.rows)
    fail(Errc::LengthMismatch, "node id count does not match embedding rows");

  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + out_path.string());

  out << "node_id";
  for (int j = 0; j < z.cols; ++j) out << ",z_" << (j + 1);
  if (project2d) out << ",pc1,pc2";
  out << '\n';

  Matrix pcs;
  if (project2d) pcs = pca_2d(z);

  char buf[40];
  for (int i = 0; i < z.rows; ++i) {
    if (node_ids.empty())
      out << i;
    else
      out << node_ids[i];
    for (int j = 0; j < z.cols; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", z.at(i, j));
      out << ',' << buf;
    }
    if (project2d) {
      for (int c = 0; c < 2; ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", pcs.at(i, c));
        out << ',' << buf;
      }
    }
    out << '\n';
  }
  if (!out) fail(Errc::IoError, "write failed: " + out_path.string());
}

}  // namespace mgahhn
