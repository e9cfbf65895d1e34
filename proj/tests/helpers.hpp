#ifndef MKPCA_TESTS_HELPERS_HPP
#define MKPCA_TESTS_HELPERS_HPP

#include "mkpca/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace mkpca::testing {

// mt19937_64 with manual conversions, so generated instances are identical on every
// platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    std::size_t index(std::size_t n) {
        auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i >= n ? n - 1 : i;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index n, Eigen::Index d) {
    Eigen::MatrixXd m(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

// Random PSD matrix G G^T with the given inner rank.
inline Eigen::MatrixXd random_psd(Rng& rng, Eigen::Index n, Eigen::Index rank) {
    Eigen::MatrixXd g = random_matrix(rng, n, rank);
    return g * g.transpose();
}

// Zero-padded IDs so lexicographic order equals numeric order.
inline std::vector<std::string> sample_ids(std::size_t n, const std::string& prefix = "s") {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string num = std::to_string(i);
        ids[i] = prefix + std::string(4 - std::min<std::size_t>(4, num.size()), '0') + num;
    }
    return ids;
}

inline DataMatrix make_view(Rng& rng, Eigen::Index n, Eigen::Index d,
                            const std::string& name) {
    DataMatrix view;
    view.sample_ids = sample_ids(static_cast<std::size_t>(n));
    view.values = random_matrix(rng, n, d);
    view.view_name = name;
    return view;
}

// Four planted clusters (25 each by default). View 1 separates clusters {0,1} from
// {2,3}; view 2 separates {0,2} from {1,3}. Only both views together identify all four.
struct FourClusterData {
    std::vector<DataMatrix> views;
    std::vector<int> labels;
};

inline FourClusterData complementary_views(std::uint64_t seed, int per_cluster = 25,
                                           Eigen::Index d = 4, double separation = 1.5,
                                           double sigma = 1.0) {
    Rng rng(seed);
    const Eigen::Index n = 4 * per_cluster;
    FourClusterData data;
    data.labels.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        data.labels[static_cast<std::size_t>(i)] = static_cast<int>(i / per_cluster);
    }
    auto ids = sample_ids(static_cast<std::size_t>(n));
    for (int v = 0; v < 2; ++v) {
        DataMatrix view;
        view.sample_ids = ids;
        view.view_name = "view" + std::to_string(v + 1);
        view.values.resize(n, d);
        for (Eigen::Index i = 0; i < n; ++i) {
            int label = data.labels[static_cast<std::size_t>(i)];
            int group = (v == 0) ? (label / 2) : (label % 2);
            double mean = (group == 0) ? -separation : separation;
            for (Eigen::Index j = 0; j < d; ++j) {
                view.values(i, j) = mean + sigma * rng.normal();
            }
        }
        data.views.push_back(std::move(view));
    }
    return data;
}

struct BlobData {
    Eigen::MatrixXd points;
    std::vector<int> labels;
};

inline BlobData make_blobs(std::uint64_t seed, const Eigen::MatrixXd& centers, int per_blob,
                           double sigma) {
    Rng rng(seed);
    const Eigen::Index k = centers.rows();
    const Eigen::Index dim = centers.cols();
    BlobData data;
    data.points.resize(k * per_blob, dim);
    data.labels.resize(static_cast<std::size_t>(k * per_blob));
    Eigen::Index row = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
        for (int i = 0; i < per_blob; ++i, ++row) {
            data.labels[static_cast<std::size_t>(row)] = static_cast<int>(c);
            for (Eigen::Index j = 0; j < dim; ++j) {
                data.points(row, j) = centers(c, j) + sigma * rng.normal();
            }
        }
    }
    return data;
}

namespace detail {
inline void best_mapping_rec(const std::vector<std::vector<int>>& hits,
                             std::vector<int>& chosen, std::vector<bool>& used,
                             std::size_t cluster, int current, int& best) {
    if (cluster == hits.size()) {
        best = std::max(best, current);
        return;
    }
    for (std::size_t label = 0; label < hits[cluster].size(); ++label) {
        if (used[label]) {
            continue;
        }
        used[label] = true;
        best_mapping_rec(hits, chosen, used, cluster + 1, current + hits[cluster][label], best);
        used[label] = false;
    }
}
}  // namespace detail

// Fraction of samples matched under the best injective cluster-to-label mapping;
// falls back to majority-label mapping when there are more clusters than labels.
inline double label_accuracy(const std::vector<int>& labels, const std::vector<int>& clusters) {
    int n_labels = *std::max_element(labels.begin(), labels.end()) + 1;
    int n_clusters = *std::max_element(clusters.begin(), clusters.end()) + 1;
    std::vector<std::vector<int>> hits(static_cast<std::size_t>(n_clusters),
                                       std::vector<int>(static_cast<std::size_t>(n_labels), 0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ++hits[static_cast<std::size_t>(clusters[i])][static_cast<std::size_t>(labels[i])];
    }
    int best = 0;
    if (n_clusters <= n_labels) {
        std::vector<int> chosen;
        std::vector<bool> used(static_cast<std::size_t>(n_labels), false);
        detail::best_mapping_rec(hits, chosen, used, 0, 0, best);
    } else {
        for (const auto& row : hits) {
            best += *std::max_element(row.begin(), row.end());
        }
    }
    return static_cast<double>(best) / static_cast<double>(labels.size());
}

// Independent classical PCA oracle: scores from the d x d scatter-matrix eigenvectors,
// a different decomposition route than the N x N kernel path it checks.
inline Eigen::MatrixXd classical_pca_scores(const Eigen::MatrixXd& x, int p) {
    Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    Eigen::MatrixXd scatter = centered.transpose() * centered;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter);
    const Eigen::Index d = scatter.rows();
    Eigen::MatrixXd top(d, p);
    for (int j = 0; j < p; ++j) {
        top.col(j) = solver.eigenvectors().col(d - 1 - j);
    }
    return centered * top;
}

inline void write_view_csv(const std::filesystem::path& path, const DataMatrix& view) {
    std::ofstream out(path);
    out << "sample_id";
    for (Eigen::Index j = 0; j < view.values.cols(); ++j) {
        out << ",f" << j;
    }
    out << '\n';
    out.precision(17);
    for (Eigen::Index i = 0; i < view.values.rows(); ++i) {
        out << view.sample_ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < view.values.cols(); ++j) {
            out << ',' << view.values(i, j);
        }
        out << '\n';
    }
}

inline void write_survival_csv(const std::filesystem::path& path,
                               const std::vector<SurvivalRecord>& records) {
    std::ofstream out(path);
    out << "sample_id,time,event\n";
    out.precision(17);
    for (const auto& rec : records) {
        out << rec.sample_id << ',' << rec.time << ',' << (rec.event ? 1 : 0) << '\n';
    }
}

// Synthetic survival with group-dependent hazards: higher labels live longer.
inline std::vector<SurvivalRecord> synthetic_survival(std::uint64_t seed,
                                                      const std::vector<std::string>& ids,
                                                      const std::vector<int>& labels) {
    Rng rng(seed);
    std::vector<SurvivalRecord> records;
    records.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        double scale = 80.0 * (labels[i] + 1);
        double time = -scale * std::log(1.0 - rng.uniform());
        bool censored = rng.uniform() < 0.2;
        records.push_back(SurvivalRecord{ids[i], std::round(time) + 1.0, !censored});
    }
    return records;
}

}  // namespace mkpca::testing

#endif
