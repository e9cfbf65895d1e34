#ifndef MKPCA_INTEGRATION_HPP
#define MKPCA_INTEGRATION_HPP

#include "mkpca/types.hpp"

#include <vector>

namespace mkpca {

/// Ensemble kernel K = sum_m beta_m K_m over centered, sample-aligned input kernels.
KernelMatrix combine(const std::vector<KernelMatrix>& kernels, const WeightVector& beta);

/// Per-dimension gain g_i = exp(lambda_i(ensemble) / max(max_m lambda_i(K_m), 1) - 1).
/// The baseline is the variance achievable by the best single kernel in that dimension,
/// floored at 1 (the per-direction variance of an equal distribution).
double gain(double ensemble_eig, const std::vector<double>& input_eigs);

/// Score G = (1/p) sum_{i=1..p} g_i for the ensemble against the input kernels.
double score(const EigenSystem& ensemble, const std::vector<EigenSystem>& inputs, int p);

/// All weight vectors with entries that are nonnegative multiples of step (= 1/s) summing
/// to 1, in ascending lexicographic order. Count is C(s+M-1, M-1).
std::vector<WeightVector> enumerate_simplex_grid(int m, double step);

struct WeightSearchResult {
    WeightVector beta;
    double score = 0.0;
    std::vector<double> gains;
};

/// Exhaustive grid search for the beta maximizing the score at dimension p.
/// Ties break to the lexicographically smallest beta, independent of parallelism.
WeightSearchResult optimize_weights(const std::vector<KernelMatrix>& kernels, int p, double step);

/// First-local-maximum rule: the smallest p (1-based) with scores[p-1] >= scores[p].
/// Returns {scores.size(), true} when the sequence is still rising at the end.
std::pair<int, bool> first_local_maximum(const std::vector<double>& scores);

/// Builds Ghat(p) = max_beta G(beta, p) for p = 1..p_max and picks the smallest p with
/// Ghat(p) >= Ghat(p+1). A curve still rising at p_max selects p_max and sets the
/// rising_at_boundary flag.
DimensionSelection select_dimension(const std::vector<KernelMatrix>& kernels, int p_max,
                                    double step);

}  // namespace mkpca

#endif
