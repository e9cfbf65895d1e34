#include "mkpca/survival.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace mkpca {

namespace {

// Regularized lower incomplete gamma P(a, x) by its power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-14) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by a modified Lentz continued fraction;
// valid for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-14) {
            break;
        }
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Moore-Penrose pseudo-inverse of a symmetric matrix via eigendecomposition.
Eigen::MatrixXd pseudo_inverse_symmetric(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("logrank_test: covariance decomposition failed");
    }
    const Eigen::VectorXd& w = solver.eigenvalues();
    double w_max = w.cwiseAbs().maxCoeff();
    double tol = std::max(1e-12 * w_max, 1e-300);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) > tol) {
            inv[i] = 1.0 / w[i];
        }
    }
    return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace

double chi_square_sf(double x, int df) {
    if (df < 1) {
        throw ConfigError("chi_square_sf: df must be >= 1");
    }
    if (!(x >= 0.0)) {
        throw ConfigError("chi_square_sf: x must be nonnegative");
    }
    if (x == 0.0) {
        return 1.0;
    }
    const double a = static_cast<double>(df) / 2.0;
    const double half_x = x / 2.0;
    if (half_x < a + 1.0) {
        return 1.0 - gamma_p_series(a, half_x);
    }
    return gamma_q_continued_fraction(a, half_x);
}

LogRankResult logrank_test(const std::vector<int>& assignments,
                           const std::vector<SurvivalRecord>& records) {
    if (assignments.size() != records.size()) {
        throw ConfigError("logrank_test: assignments and records differ in length");
    }
    if (records.empty()) {
        throw ConfigError("logrank_test: no records");
    }

    // Map arbitrary group labels to 0..G-1 in ascending label order.
    std::set<int> labels(assignments.begin(), assignments.end());
    if (labels.size() < 2) {
        throw ConfigError("logrank_test: need at least 2 groups");
    }
    std::map<int, int> group_of;
    int next_group = 0;
    for (int label : labels) {
        group_of[label] = next_group++;
    }
    const int n_groups = static_cast<int>(labels.size());
    const std::size_t n = records.size();

    bool any_information = false;
    for (const auto& rec : records) {
        if (rec.time > 0.0 || rec.event) {
            any_information = true;
            break;
        }
    }
    if (!any_information) {
        throw DataError("logrank_test: all samples censored at time 0");
    }

    // Distinct event times, ascending.
    std::set<double> event_times;
    for (const auto& rec : records) {
        if (rec.event) {
            event_times.insert(rec.time);
        }
    }

    LogRankResult result;
    result.degrees_of_freedom = n_groups - 1;
    if (event_times.empty()) {
        result.chi_square = 0.0;
        result.p_value = 1.0;
        return result;
    }

    Eigen::VectorXd observed = Eigen::VectorXd::Zero(n_groups);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(n_groups);
    Eigen::MatrixXd covariance = Eigen::MatrixXd::Zero(n_groups, n_groups);
    Eigen::VectorXd at_risk_total = Eigen::VectorXd::Zero(n_groups);

    Eigen::VectorXd n_g(n_groups);
    Eigen::VectorXd d_g(n_groups);
    for (double t : event_times) {
        n_g.setZero();
        d_g.setZero();
        // Censored samples at t stay at risk for the events at t (events first).
        for (std::size_t i = 0; i < n; ++i) {
            int g = group_of.at(assignments[i]);
            if (records[i].time >= t) {
                n_g[g] += 1.0;
            }
            if (records[i].event && records[i].time == t) {
                d_g[g] += 1.0;
            }
        }
        const double n_t = n_g.sum();
        const double d_t = d_g.sum();
        at_risk_total += n_g;

        observed += d_g;
        expected += d_t / n_t * n_g;
        if (n_t > 1.0) {
            // Multivariate hypergeometric covariance of the d_g vector at this time.
            const double factor = d_t * (n_t - d_t) / (n_t - 1.0);
            for (int g = 0; g < n_groups; ++g) {
                for (int h = 0; h < n_groups; ++h) {
                    double delta = (g == h) ? 1.0 : 0.0;
                    covariance(g, h) +=
                        factor * (delta * n_g[g] / n_t - n_g[g] * n_g[h] / (n_t * n_t));
                }
            }
        }
    }

    for (int g = 0; g < n_groups; ++g) {
        if (at_risk_total[g] == 0.0) {
            throw DataError("logrank_test: group " + std::to_string(g) +
                            " is never at risk at any event time");
        }
    }

    // Quadratic form on the first G-1 groups (the last is determined by the others).
    const int m = n_groups - 1;
    Eigen::VectorXd z = (observed - expected).head(m);
    Eigen::MatrixXd v = covariance.topLeftCorner(m, m);
    result.chi_square = std::max(0.0, z.dot(pseudo_inverse_symmetric(v) * z));
    result.p_value = chi_square_sf(result.chi_square, result.degrees_of_freedom);
    return result;
}

std::vector<KmPoint> kaplan_meier(const std::vector<SurvivalRecord>& records) {
    if (records.empty()) {
        throw ConfigError("kaplan_meier: no records");
    }
    std::set<double> event_times;
    for (const auto& rec : records) {
        if (rec.event) {
            event_times.insert(rec.time);
        }
    }
    std::vector<KmPoint> curve;
    curve.push_back(KmPoint{0.0, 1.0});
    double survival = 1.0;
    for (double t : event_times) {
        double at_risk = 0.0;
        double deaths = 0.0;
        for (const auto& rec : records) {
            if (rec.time >= t) {
                at_risk += 1.0;
            }
            if (rec.event && rec.time == t) {
                deaths += 1.0;
            }
        }
        survival *= 1.0 - deaths / at_risk;
        curve.push_back(KmPoint{t, survival});
    }
    return curve;
}

}  // namespace mkpca
