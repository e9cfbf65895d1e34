#include "mkpca/kpca.hpp"

#include "mkpca/integration.hpp"
#include "mkpca/kernels.hpp"

#include <cmath>
#include <utility>

namespace mkpca {

void fix_eigenvector_signs(EigenSystem& eig) {
    for (Eigen::Index j = 0; j < eig.eigenvectors.cols(); ++j) {
        Eigen::Index argmax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < eig.eigenvectors.rows(); ++i) {
            double mag = std::abs(eig.eigenvectors(i, j));
            if (mag > best) {  // strict: ties keep the first entry
                best = mag;
                argmax = i;
            }
        }
        if (eig.eigenvectors(argmax, j) < 0.0) {
            eig.eigenvectors.col(j) = -eig.eigenvectors.col(j);
        }
    }
}

ProjectionResult project(const KernelMatrix& ensemble, std::vector<std::string> sample_ids,
                         int p) {
    EigenSystem eig = eigendecompose(ensemble);
    int positive = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues[i] > 0.0) {
            ++positive;
        }
    }
    if (p < 1 || p > positive) {
        throw NumericalError("project: p = " + std::to_string(p) + " exceeds the " +
                             std::to_string(positive) + " strictly positive eigenvalues");
    }
    fix_eigenvector_signs(eig);

    ProjectionResult result;
    result.p = p;
    result.sample_ids = std::move(sample_ids);
    result.explained_eigenvalues = eig.eigenvalues.head(p);
    result.coordinates.resize(ensemble.n(), p);
    for (int j = 0; j < p; ++j) {
        result.coordinates.col(j) = eig.eigenvectors.col(j) * std::sqrt(eig.eigenvalues[j]);
    }
    return result;
}

Eigen::VectorXd project_out_of_sample(const std::vector<KernelMatrix>& train_kernels,
                                      const EigenSystem& train_eigs, const WeightVector& beta,
                                      const std::vector<Eigen::VectorXd>& new_kernel_rows,
                                      int p) {
    if (train_kernels.empty() || new_kernel_rows.size() != train_kernels.size()) {
        throw ConfigError("project_out_of_sample: need one kernel row per training kernel");
    }
    if (beta.size() != train_kernels.size()) {
        throw ConfigError("project_out_of_sample: weight count mismatch");
    }
    const Eigen::Index n = train_kernels[0].n();
    for (const auto& k : train_kernels) {
        if (k.centered()) {
            throw NumericalError("project_out_of_sample: training kernels must be uncentered");
        }
        if (k.n() != n) {
            throw ConfigError("project_out_of_sample: kernel dimension mismatch");
        }
    }
    for (const auto& row : new_kernel_rows) {
        if (row.size() != n) {
            throw ConfigError("project_out_of_sample: kernel row length must equal N");
        }
    }
    if (p < 1 || p > train_eigs.eigenvalues.size()) {
        throw ConfigError("project_out_of_sample: p out of range");
    }
    for (int j = 0; j < p; ++j) {
        if (!(train_eigs.eigenvalues[j] > 0.0)) {
            throw NumericalError("project_out_of_sample: zero eigenvalue among the first " +
                                 std::to_string(p) + " components");
        }
    }

    // Combined uncentered row and the training ensemble's row means / grand mean.
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd train_row_means = Eigen::VectorXd::Zero(n);
    double grand_mean = 0.0;
    for (std::size_t m = 0; m < train_kernels.size(); ++m) {
        row.noalias() += beta[m] * new_kernel_rows[m];
        train_row_means.noalias() += beta[m] * train_kernels[m].values().rowwise().mean();
        grand_mean += beta[m] * train_kernels[m].values().mean();
    }

    Eigen::VectorXd centered =
        row.array() - row.mean() - train_row_means.array() + grand_mean;

    EigenSystem eig = train_eigs;  // sign fixing matches project()
    fix_eigenvector_signs(eig);
    Eigen::VectorXd coords(p);
    for (int j = 0; j < p; ++j) {
        coords[j] = eig.eigenvectors.col(j).dot(centered) / std::sqrt(eig.eigenvalues[j]);
    }
    return coords;
}

}  // namespace mkpca
