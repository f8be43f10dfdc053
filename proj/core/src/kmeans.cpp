#include "mgahhn/kmeans.hpp"

#include <cmath>
#include <limits>

#include "mgahhn/error.hpp"
#include "mgahhn/rng.hpp"

namespace mgahhn {

namespace {

double sq_dist(const Matrix& pts, int i, const Matrix& centroids, int c) {
  double s = 0.0;
  for (int j = 0; j < pts.cols; ++j) {
    double d = pts.at(i, j) - centroids.at(c, j);
    s += d * d;
  }
  return s;
}

Matrix seed_plus_plus(const Matrix& pts, int k, Rng& rng) {
  const int n = pts.rows;
  Matrix centroids(k, pts.cols);
  int first = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
  for (int j = 0; j < pts.cols; ++j) centroids.at(0, j) = pts.at(first, j);

  std::vector<double> d2(n);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int p = 0; p < c; ++p) best = std::min(best, sq_dist(pts, i, centroids, p));
      d2[i] = best;
      total += best;
    }
    int pick;
    if (total <= 0.0) {
      // All points coincide with chosen centroids; fall back to uniform.
      pick = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    } else {
      double r = rng.uniform() * total;
      pick = n - 1;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (r < acc) {
          pick = i;
          break;
        }
      }
    }
    for (int j = 0; j < pts.cols; ++j) centroids.at(c, j) = pts.at(pick, j);
  }
  return centroids;
}

KMeansResult lloyd(const Matrix& pts, int k, Rng& rng, int max_iters) {
  const int n = pts.rows;
  KMeansResult res;
  res.centroids = seed_plus_plus(pts, k, rng);
  res.assignment.assign(n, -1);

  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(pts, i, res.centroids, 0);
      for (int c = 1; c < k; ++c) {
        double d = sq_dist(pts, i, res.centroids, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (res.assignment[i] != best) {
        res.assignment[i] = best;
        changed = true;
      }
    }
    if (!changed) break;

    Matrix sums(k, pts.cols);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      ++counts[res.assignment[i]];
      for (int j = 0; j < pts.cols; ++j)
        sums.at(res.assignment[i], j) += pts.at(i, j);
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Empty cluster: restart it at the point farthest from its centroid.
        int far = 0;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          double d = sq_dist(pts, i, res.centroids, res.assignment[i]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        for (int j = 0; j < pts.cols; ++j) res.centroids.at(c, j) = pts.at(far, j);
      } else {
        for (int j = 0; j < pts.cols; ++j)
          res.centroids.at(c, j) = sums.at(c, j) / counts[c];
      }
    }
  }

  res.inertia = 0.0;
  for (int i = 0; i < n; ++i)
    res.inertia += sq_dist(pts, i, res.centroids, res.assignment[i]);
  return res;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, std::uint64_t seed,
                    int restarts, int max_iters) {
  if (k < 1) fail(Errc::KTooLarge, "k must be positive");
  if (k > points.rows)
    fail(Errc::KTooLarge, "k = " + std::to_string(k) + " exceeds " +
                              std::to_string(points.rows) + " points");
  Rng rng(seed);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    KMeansResult cur = lloyd(points, k, rng, max_iters);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  return best;
}

}  // namespace mgahhn
