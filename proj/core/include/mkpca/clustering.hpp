#ifndef MKPCA_CLUSTERING_HPP
#define MKPCA_CLUSTERING_HPP

#include "mkpca/types.hpp"

#include <cstdint>
#include <vector>

namespace mkpca {

struct Clustering {
    std::vector<int> assignments;  // cluster index per sample, 0..k-1, every index used
    int k = 0;
    Eigen::MatrixXd centroids;     // k x p
    double inertia = 0.0;          // within-cluster sum of squared distances
    double silhouette = 0.0;       // mean silhouette width of the final assignment
    bool degenerate = false;       // empty-cluster repair had zero spread to work with
};

/// k-means with k-means++ initialization and Lloyd iterations to an assignment fixed
/// point (at most 300 iterations), best inertia over `restarts` runs. Restart r draws
/// from an RNG stream seeded with seed + r, so the result is deterministic for a fixed
/// (seed, restarts) and independent of how restarts are scheduled.
Clustering kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts);

/// Mean silhouette width (b-a)/max(a,b) over all samples, Euclidean distances.
/// Singleton clusters contribute 0. Throws ConfigError with fewer than 2 clusters.
double silhouette_width(const Eigen::MatrixXd& points, const std::vector<int>& assignments);

/// Runs kmeans for every k in [k_min, k_max] (k_max clamped to N-1 with a warning) and
/// returns the clustering with the greatest silhouette width; ties go to the smaller k.
Clustering select_k(const Eigen::MatrixXd& points, int k_min, int k_max, std::uint64_t seed,
                    int restarts);

}  // namespace mkpca

#endif
