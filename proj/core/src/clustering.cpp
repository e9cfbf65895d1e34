#include "mkpca/clustering.hpp"

#include "mkpca/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <set>

namespace mkpca {

namespace {

// mt19937_64 with explicit double conversion; no std distributions, so streams are
// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double next_double() {  // uniform in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::size_t next_index(std::size_t n) {
        auto idx = static_cast<std::size_t>(next_double() * static_cast<double>(n));
        return idx >= n ? n - 1 : idx;
    }

private:
    std::mt19937_64 gen_;
};

struct RestartResult {
    std::vector<int> assignments;
    Eigen::MatrixXd centroids;
    double inertia = std::numeric_limits<double>::infinity();
    bool degenerate = false;
};

Eigen::MatrixXd kmeans_pp_init(const Eigen::MatrixXd& points, int k, Rng& rng) {
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd centroids(k, points.cols());
    centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.next_index(n)));

    Eigen::VectorXd dist2 =
        (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (int j = 1; j < k; ++j) {
        double total = dist2.sum();
        Eigen::Index pick;
        if (total > 0.0) {
            double r = rng.next_double() * total;
            double cum = 0.0;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                cum += dist2[i];
                if (cum > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.next_index(n));  // all spread exhausted
        }
        centroids.row(j) = points.row(pick);
        dist2 = dist2.cwiseMin(
            (points.rowwise() - centroids.row(j)).rowwise().squaredNorm().eval());
    }
    return centroids;
}

RestartResult run_lloyd(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
    const Eigen::Index n = points.rows();
    Rng rng(seed);
    Eigen::MatrixXd centroids = kmeans_pp_init(points, k, rng);

    RestartResult result;
    std::vector<int> assignments(static_cast<std::size_t>(n), -1);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    Eigen::VectorXd point_dist2(n);

    for (int iter = 0; iter < 300; ++iter) {
        std::vector<int> next(static_cast<std::size_t>(n));
        std::fill(counts.begin(), counts.end(), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                double d = (points.row(i) - centroids.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            next[static_cast<std::size_t>(i)] = best;
            point_dist2[i] = best_d;
            ++counts[static_cast<std::size_t>(best)];
        }

        // Empty-cluster repair: hand each empty cluster the point farthest from its
        // centroid, taken from a cluster that keeps at least one member.
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                continue;
            }
            Eigen::Index farthest = -1;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(next[static_cast<std::size_t>(i)])] < 2) {
                    continue;
                }
                if (point_dist2[i] > far_d) {
                    far_d = point_dist2[i];
                    farthest = i;
                }
            }
            if (farthest < 0) {
                continue;  // k > number of points never happens (k <= N enforced)
            }
            if (far_d <= 0.0) {
                result.degenerate = true;
            }
            --counts[static_cast<std::size_t>(next[static_cast<std::size_t>(farthest)])];
            next[static_cast<std::size_t>(farthest)] = c;
            ++counts[static_cast<std::size_t>(c)];
            point_dist2[farthest] = 0.0;
        }

        bool converged = (next == assignments);
        assignments.swap(next);
        if (converged) {
            break;
        }
        centroids.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            centroids.row(assignments[static_cast<std::size_t>(i)]) += points.row(i);
        }
        for (int c = 0; c < k; ++c) {
            centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
    }

    // Recompute centroids and inertia from the final assignment.
    result.centroids = Eigen::MatrixXd::Zero(k, points.cols());
    std::fill(counts.begin(), counts.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        result.centroids.row(assignments[static_cast<std::size_t>(i)]) += points.row(i);
        ++counts[static_cast<std::size_t>(assignments[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
        result.centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
    result.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        result.inertia +=
            (points.row(i) - result.centroids.row(assignments[static_cast<std::size_t>(i)]))
                .squaredNorm();
    }
    result.assignments = std::move(assignments);
    return result;
}

}  // namespace

Clustering kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts) {
    const Eigen::Index n = points.rows();
    if (k < 2) {
        throw ConfigError("kmeans: k must be >= 2");
    }
    if (k > n) {
        throw ConfigError("kmeans: k = " + std::to_string(k) + " exceeds N = " +
                          std::to_string(n));
    }
    if (restarts < 1) {
        throw ConfigError("kmeans: restarts must be >= 1");
    }

    std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
    parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
        results[r] = run_lloyd(points, k, seed + r);
    });

    // Best inertia; ties go to the lower restart index regardless of scheduling.
    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].inertia < results[best].inertia) {
            best = r;
        }
    }

    Clustering clustering;
    clustering.k = k;
    clustering.assignments = std::move(results[best].assignments);
    clustering.centroids = std::move(results[best].centroids);
    clustering.inertia = results[best].inertia;
    clustering.degenerate = results[best].degenerate;
    clustering.silhouette = silhouette_width(points, clustering.assignments);
    return clustering;
}

double silhouette_width(const Eigen::MatrixXd& points, const std::vector<int>& assignments) {
    const Eigen::Index n = points.rows();
    if (static_cast<Eigen::Index>(assignments.size()) != n) {
        throw ConfigError("silhouette_width: assignment count does not match points");
    }
    std::set<int> labels(assignments.begin(), assignments.end());
    if (labels.size() < 2) {
        throw ConfigError("silhouette_width: need at least 2 clusters");
    }

    std::vector<int> label_list(labels.begin(), labels.end());
    std::vector<int> counts(label_list.size(), 0);
    std::vector<int> label_index(assignments.size());
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        auto it = std::lower_bound(label_list.begin(), label_list.end(), assignments[i]);
        label_index[i] = static_cast<int>(it - label_list.begin());
        ++counts[static_cast<std::size_t>(label_index[i])];
    }

    double total = 0.0;
    std::vector<double> mean_dist(label_list.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            mean_dist[static_cast<std::size_t>(label_index[static_cast<std::size_t>(j)])] +=
                (points.row(i) - points.row(j)).norm();
        }
        const int own = label_index[static_cast<std::size_t>(i)];
        const int own_count = counts[static_cast<std::size_t>(own)];
        if (own_count <= 1) {
            continue;  // singleton cluster contributes s(i) = 0
        }
        double a = mean_dist[static_cast<std::size_t>(own)] / (own_count - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < label_list.size(); ++c) {
            if (static_cast<int>(c) == own) {
                continue;
            }
            b = std::min(b, mean_dist[c] / counts[c]);
        }
        double denom = std::max(a, b);
        if (denom > 0.0) {
            total += (b - a) / denom;
        }
    }
    return total / static_cast<double>(n);
}

Clustering select_k(const Eigen::MatrixXd& points, int k_min, int k_max, std::uint64_t seed,
                    int restarts) {
    const Eigen::Index n = points.rows();
    if (k_min < 2) {
        throw ConfigError("select_k: k_min must be >= 2");
    }
    if (k_max > n - 1) {
        std::cerr << "mkpca: warning: clamping k_max from " << k_max << " to N-1 = " << n - 1
                  << "\n";
        k_max = static_cast<int>(n) - 1;
    }
    if (k_max < k_min) {
        throw ConfigError("select_k: k range is empty after clamping");
    }

    Clustering best;
    bool have = false;
    for (int k = k_min; k <= k_max; ++k) {
        Clustering candidate = kmeans(points, k, seed, restarts);
        if (!have || candidate.silhouette > best.silhouette) {
            best = std::move(candidate);  // ties keep the smaller k
            have = true;
        }
    }
    return best;
}

}  // namespace mkpca
