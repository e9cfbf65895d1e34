#ifndef MKPCA_TYPES_HPP
#define MKPCA_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace mkpca {

/// Bad configuration or invalid arguments (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (CLI exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown: failed decomposition, non-PSD kernel, rank deficit (CLI exit code 4).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One omics view: N samples (rows) by d features (columns).
struct DataMatrix {
    std::vector<std::string> sample_ids;
    Eigen::MatrixXd values;
    std::string view_name;

    Eigen::Index n_samples() const { return values.rows(); }
    Eigen::Index n_features() const { return values.cols(); }
};

/// Per-sample follow-up time and event indicator (true = event observed, false = censored).
struct SurvivalRecord {
    std::string sample_id;
    double time = 0.0;
    bool event = false;
};

/// N x N symmetric similarity matrix. Symmetrized to (K + K^T)/2 on construction.
class KernelMatrix {
public:
    KernelMatrix(Eigen::MatrixXd values, bool centered, std::string view_name);

    const Eigen::MatrixXd& values() const { return values_; }
    bool centered() const { return centered_; }
    const std::string& view_name() const { return view_name_; }
    Eigen::Index n() const { return values_.rows(); }

private:
    Eigen::MatrixXd values_;
    bool centered_ = false;
    std::string view_name_;
};

/// Descending eigenvalues (spurious negatives clamped to 0) with matching orthonormal eigenvectors.
struct EigenSystem {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// M nonnegative kernel weights summing to 1.
class WeightVector {
public:
    WeightVector() = default;  // empty placeholder, not a valid weight vector
    explicit WeightVector(std::vector<double> weights);

    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t m) const { return weights_[m]; }
    std::size_t size() const { return weights_.size(); }

    /// Uniform weights 1/M.
    static WeightVector uniform(std::size_t m);
    /// Vertex weight vector: 1 at position m, 0 elsewhere.
    static WeightVector vertex(std::size_t m, std::size_t size);

private:
    std::vector<double> weights_;
};

bool operator==(const WeightVector& a, const WeightVector& b);
bool lex_less(const WeightVector& a, const WeightVector& b);

/// Best weights, score G and per-dimension gains for one projection dimension p.
struct ScoreEntry {
    int p = 0;
    WeightVector best_beta;
    double score = 0.0;
    std::vector<double> gains;
};

/// Score entries for p = 1..p_max.
struct ScoreCurve {
    std::vector<ScoreEntry> per_p;
};

/// First-local-maximum dimension choice over a score curve.
struct DimensionSelection {
    int p_star = 0;
    bool rising_at_boundary = false;  // curve still rising at p_max
    ScoreCurve curve;
};

}  // namespace mkpca

#endif
