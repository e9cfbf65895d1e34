#ifndef MKPCA_KPCA_HPP
#define MKPCA_KPCA_HPP

#include "mkpca/types.hpp"

#include <vector>

namespace mkpca {

/// Samples embedded into the leading p kernel principal components.
/// Column j is u_j * sqrt(lambda_j), so squared column norms equal the eigenvalues and
/// Euclidean distances reflect kernel feature-space geometry.
struct ProjectionResult {
    Eigen::MatrixXd coordinates;  // N x p
    Eigen::VectorXd explained_eigenvalues;
    std::vector<std::string> sample_ids;
    int p = 0;
};

/// Deterministic sign convention: flips each eigenvector so its largest-magnitude entry
/// is positive (ties: the first such entry). Applied by project and out-of-sample alike.
void fix_eigenvector_signs(EigenSystem& eig);

/// Projects the training samples onto the top p components of the centered ensemble.
/// Throws NumericalError when p exceeds the number of strictly positive eigenvalues.
ProjectionResult project(const KernelMatrix& ensemble, std::vector<std::string> sample_ids,
                         int p);

/// Projects one new sample given its kernel rows k_m(x_new, x_i) against the training set,
/// the uncentered training kernels, the ensemble eigensystem and the training weights.
/// Applies the training centering correction (subtract training row means and the new-row
/// mean, add the training grand mean), then coord_j = u_j^T row / sqrt(lambda_j).
Eigen::VectorXd project_out_of_sample(const std::vector<KernelMatrix>& train_kernels,
                                      const EigenSystem& train_eigs, const WeightVector& beta,
                                      const std::vector<Eigen::VectorXd>& new_kernel_rows,
                                      int p);

}  // namespace mkpca

#endif
