#include "mkpca/kernels.hpp"

#include "mkpca/csv.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mkpca {

KernelMatrix::KernelMatrix(Eigen::MatrixXd values, bool centered, std::string view_name)
    : values_(std::move(values)), centered_(centered), view_name_(std::move(view_name)) {
    if (values_.rows() != values_.cols()) {
        throw NumericalError("kernel matrix must be square, got " +
                             std::to_string(values_.rows()) + "x" +
                             std::to_string(values_.cols()));
    }
    if (!values_.allFinite()) {
        throw NumericalError("kernel matrix has non-finite entries");
    }
    values_ = ((values_ + values_.transpose()) * 0.5).eval();
}

double default_gamma(Eigen::Index d) {
    if (d < 1) {
        throw ConfigError("default_gamma: feature count must be >= 1");
    }
    return 1.0 / (2.0 * static_cast<double>(d) * static_cast<double>(d));
}

KernelMatrix gaussian_kernel(const DataMatrix& X, double gamma) {
    if (!(gamma > 0.0)) {
        throw ConfigError("gaussian_kernel: gamma must be positive");
    }
    if (!X.values.allFinite()) {
        throw DataError("gaussian_kernel: non-finite input in view " + X.view_name);
    }
    const Eigen::Index n = X.n_samples();
    Eigen::VectorXd sq = X.values.rowwise().squaredNorm();
    Eigen::MatrixXd dist2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1) -
                            2.0 * X.values * X.values.transpose();
    dist2 = dist2.cwiseMax(0.0);
    dist2.diagonal().setZero();
    Eigen::MatrixXd K = (-gamma * dist2).array().exp();
    return KernelMatrix(std::move(K), false, X.view_name);
}

KernelMatrix center_kernel(const KernelMatrix& K) {
    // H K H expanded entrywise: K_ij - rowmean_i - colmean_j + grandmean.
    const Eigen::MatrixXd& values = K.values();
    Eigen::VectorXd row_means = values.rowwise().mean();
    double grand_mean = values.mean();
    Eigen::MatrixXd centered = values;
    centered.colwise() -= row_means;
    centered.rowwise() -= row_means.transpose();
    centered.array() += grand_mean;
    return KernelMatrix(std::move(centered), true, K.view_name());
}

EigenSystem eigendecompose(const KernelMatrix& K) {
    if (!K.centered()) {
        throw NumericalError("eigendecompose: kernel must be centered");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K.values());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecompose: decomposition failed for view " + K.view_name());
    }

    const Eigen::Index n = K.n();
    EigenSystem eig;
    eig.eigenvalues.resize(n);
    eig.eigenvectors.resize(n, n);
    // Eigen reports ascending order; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        eig.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
        eig.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }

    const double lambda_max = std::max(eig.eigenvalues[0], 0.0);
    const double psd_floor = -std::max(kPsdRelTol * lambda_max, kAbsTol);
    if (eig.eigenvalues[n - 1] < psd_floor) {
        throw NumericalError("eigendecompose: kernel " + K.view_name() +
                             " is not PSD within tolerance (min eigenvalue " +
                             csv::format_double(eig.eigenvalues[n - 1]) + ")");
    }
    const double clamp = std::max(kEigClampRelTol * lambda_max, kAbsTol);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (eig.eigenvalues[i] < clamp) {
            eig.eigenvalues[i] = 0.0;
        }
    }
    return eig;
}

void write_kernel_csv(const KernelMatrix& K, const std::vector<std::string>& sample_ids,
                      std::ostream& out) {
    const Eigen::Index n = K.n();
    if (static_cast<Eigen::Index>(sample_ids.size()) != n) {
        throw ConfigError("write_kernel_csv: sample id count does not match kernel size");
    }
    out << "sample_id";
    for (const auto& id : sample_ids) {
        out << ',' << id;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        out << sample_ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            out << ',' << csv::format_double(K.values()(i, j));
        }
        out << '\n';
    }
}

}  // namespace mkpca
