#pragma once

#include <cstdint>
#include <vector>

#include "mgahhn/matrix.hpp"

namespace mgahhn {

struct KMeansResult {
  std::vector<int> assignment;  // length N, values in [0, k)
  Matrix centroids;             // k x d
  double inertia = 0.0;         // sum of squared distances to assigned centroid
};

// Lloyd's algorithm with k-means++ seeding. Runs `restarts` independent
// seedings and keeps the lowest inertia. Deterministic under seed.
// Throws KTooLarge when k exceeds the number of points.
KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed,
                    int restarts = 10, int max_iters = 100);

}  // namespace mgahhn
