#ifndef MKPCA_SURVIVAL_HPP
#define MKPCA_SURVIVAL_HPP

#include "mkpca/types.hpp"

#include <vector>

namespace mkpca {

struct LogRankResult {
    double chi_square = 0.0;
    int degrees_of_freedom = 0;  // number of groups - 1
    double p_value = 1.0;
};

/// Multi-group log-rank test: observed vs expected events per group under the
/// hypergeometric model at each distinct event time, full covariance form with a
/// pseudo-inverse on the first k-1 groups (not the sum-of-squares approximation).
/// Censored samples at an event time remain at risk for the events at that time.
LogRankResult logrank_test(const std::vector<int>& assignments,
                           const std::vector<SurvivalRecord>& records);

/// Upper-tail chi-square probability Q(df/2, x/2) via the regularized incomplete gamma:
/// series expansion for x/2 < df/2 + 1, Lentz continued fraction otherwise, terminated
/// at 1e-14. Absolute accuracy better than 1e-10 for x in [0, 200], df <= 20.
double chi_square_sf(double x, int df);

struct KmPoint {
    double time = 0.0;
    double survival = 1.0;
};

/// Kaplan-Meier product-limit estimator. Starts at (0, 1); one step per distinct event
/// time; monotone non-increasing.
std::vector<KmPoint> kaplan_meier(const std::vector<SurvivalRecord>& records);

}  // namespace mkpca

#endif
