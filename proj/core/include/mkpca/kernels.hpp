#ifndef MKPCA_KERNELS_HPP
#define MKPCA_KERNELS_HPP

#include "mkpca/types.hpp"

#include <ostream>

namespace mkpca {

// Fixed numerical tolerances. Not configurable so broken kernels fail loudly.
inline constexpr double kPsdRelTol = 1e-8;        // eigenvalue >= -kPsdRelTol * lambda_max
inline constexpr double kEigClampRelTol = 1e-10;  // eigenvalues below this * lambda_max become 0
inline constexpr double kAbsTol = 1e-12;          // absolute floor for degenerate (zero) matrices

/// Kernel width rule of thumb: gamma = 1 / (2 d^2) for d features.
double default_gamma(Eigen::Index d);

/// Gaussian kernel matrix K[i,j] = exp(-gamma * |x_i - x_j|^2). Uncentered, unit diagonal.
KernelMatrix gaussian_kernel(const DataMatrix& X, double gamma);

/// Double-centering K' = H K H with H = I - (1/N) 1 1^T, computed via row/column means.
/// Idempotent: centering an already centered kernel is a no-op within tolerance.
KernelMatrix center_kernel(const KernelMatrix& K);

/// Eigendecomposition of a centered kernel: descending eigenvalues, orthonormal eigenvectors.
/// Validates the PSD tolerance, then clamps numerically-zero eigenvalues to exactly 0.
EigenSystem eigendecompose(const KernelMatrix& K);

/// Optional kernel dump: N x N values with sample IDs as header and first column.
void write_kernel_csv(const KernelMatrix& K, const std::vector<std::string>& sample_ids,
                      std::ostream& out);

}  // namespace mkpca

#endif
