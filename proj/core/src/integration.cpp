#include "mkpca/integration.hpp"

#include "mkpca/kernels.hpp"
#include "mkpca/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace mkpca {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw ConfigError("weight vector must not be empty");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw ConfigError("weights must be nonnegative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError("weights must sum to 1, got " + std::to_string(sum));
    }
}

WeightVector WeightVector::uniform(std::size_t m) {
    return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

WeightVector WeightVector::vertex(std::size_t m, std::size_t size) {
    std::vector<double> w(size, 0.0);
    w.at(m) = 1.0;
    return WeightVector(std::move(w));
}

bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.weights() == b.weights();
}

bool lex_less(const WeightVector& a, const WeightVector& b) {
    return std::lexicographical_compare(a.weights().begin(), a.weights().end(),
                                        b.weights().begin(), b.weights().end());
}

KernelMatrix combine(const std::vector<KernelMatrix>& kernels, const WeightVector& beta) {
    if (kernels.empty()) {
        throw ConfigError("combine: need at least one kernel");
    }
    if (beta.size() != kernels.size()) {
        throw ConfigError("combine: weight count " + std::to_string(beta.size()) +
                          " does not match kernel count " + std::to_string(kernels.size()));
    }
    const Eigen::Index n = kernels[0].n();
    for (const auto& k : kernels) {
        if (k.n() != n) {
            throw ConfigError("combine: kernel dimension mismatch");
        }
        if (!k.centered()) {
            throw NumericalError("combine: input kernels must be centered");
        }
    }
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t m = 0; m < kernels.size(); ++m) {
        sum.noalias() += beta[m] * kernels[m].values();
    }
    return KernelMatrix(std::move(sum), true, "ensemble");
}

double gain(double ensemble_eig, const std::vector<double>& input_eigs) {
    if (ensemble_eig < 0.0) {
        throw NumericalError("gain: negative ensemble eigenvalue");
    }
    double baseline = 1.0;
    for (double eig : input_eigs) {
        if (eig < 0.0) {
            throw NumericalError("gain: negative input eigenvalue");
        }
        baseline = std::max(baseline, eig);
    }
    return std::exp(ensemble_eig / baseline - 1.0);
}

double score(const EigenSystem& ensemble, const std::vector<EigenSystem>& inputs, int p) {
    const Eigen::Index n = ensemble.eigenvalues.size();
    if (p < 1 || p > n) {
        throw ConfigError("score: p must be in [1, N], got " + std::to_string(p));
    }
    double total = 0.0;
    std::vector<double> input_eigs(inputs.size());
    for (int i = 0; i < p; ++i) {
        for (std::size_t m = 0; m < inputs.size(); ++m) {
            input_eigs[m] = inputs[m].eigenvalues[i];
        }
        total += gain(ensemble.eigenvalues[i], input_eigs);
    }
    return total / static_cast<double>(p);
}

namespace {

void enumerate_rec(int remaining, int positions, int s, std::vector<int>& current,
                   std::vector<WeightVector>& out) {
    if (positions == 1) {
        current.push_back(remaining);
        std::vector<double> w(current.size());
        for (std::size_t i = 0; i < current.size(); ++i) {
            w[i] = static_cast<double>(current[i]) / static_cast<double>(s);
        }
        out.push_back(WeightVector(std::move(w)));
        current.pop_back();
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        current.push_back(k);
        enumerate_rec(remaining - k, positions - 1, s, current, out);
        current.pop_back();
    }
}

int grid_divisions(double step) {
    if (!(step > 0.0) || step > 1.0) {
        throw ConfigError("grid step must lie in (0, 1]");
    }
    int s = static_cast<int>(std::lround(1.0 / step));
    if (s < 1 || std::abs(s * step - 1.0) > 1e-9) {
        throw ConfigError("grid step must be the reciprocal of a positive integer");
    }
    return s;
}

// Per-dimension gains for every grid point, evaluated in parallel. Each grid point is
// one ensemble eigendecomposition; results land in per-index slots so the outcome does
// not depend on scheduling.
struct GridEvaluation {
    std::vector<WeightVector> grid;
    std::vector<std::vector<double>> gains;  // grid point -> gains for i = 1..p_max
};

GridEvaluation evaluate_grid(const std::vector<KernelMatrix>& kernels, int p_max, double step) {
    if (kernels.empty()) {
        throw ConfigError("weight search: need at least one kernel");
    }
    const Eigen::Index n = kernels[0].n();
    if (p_max < 1 || p_max > n) {
        throw ConfigError("weight search: p must be in [1, N], got " + std::to_string(p_max));
    }

    std::vector<EigenSystem> input_eigs;
    input_eigs.reserve(kernels.size());
    for (const auto& k : kernels) {
        input_eigs.push_back(eigendecompose(k));
    }

    GridEvaluation eval;
    eval.grid = enumerate_simplex_grid(static_cast<int>(kernels.size()), step);
    eval.gains.resize(eval.grid.size());

    parallel_for(eval.grid.size(), [&](std::size_t g) {
        EigenSystem ensemble = eigendecompose(combine(kernels, eval.grid[g]));
        std::vector<double> gains(static_cast<std::size_t>(p_max));
        std::vector<double> per_input(kernels.size());
        for (int i = 0; i < p_max; ++i) {
            for (std::size_t m = 0; m < kernels.size(); ++m) {
                per_input[m] = input_eigs[m].eigenvalues[i];
            }
            gains[static_cast<std::size_t>(i)] = gain(ensemble.eigenvalues[i], per_input);
        }
        eval.gains[g] = std::move(gains);
    });
    return eval;
}

// Argmax of the mean of the first p gains over the grid. The grid is in ascending
// lexicographic order and ties keep the earlier point, so the winner is the
// lexicographically smallest maximizer.
ScoreEntry best_entry_for_p(const GridEvaluation& eval, int p) {
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t g = 0; g < eval.grid.size(); ++g) {
        double total = 0.0;
        for (int i = 0; i < p; ++i) {
            total += eval.gains[g][static_cast<std::size_t>(i)];
        }
        double s = total / static_cast<double>(p);
        if (s > best_score) {
            best_score = s;
            best = g;
        }
    }
    ScoreEntry entry;
    entry.p = p;
    entry.best_beta = eval.grid[best];
    entry.score = best_score;
    entry.gains.assign(eval.gains[best].begin(), eval.gains[best].begin() + p);
    return entry;
}

}  // namespace

std::vector<WeightVector> enumerate_simplex_grid(int m, double step) {
    if (m < 1) {
        throw ConfigError("enumerate_simplex_grid: M must be >= 1");
    }
    int s = grid_divisions(step);
    std::vector<WeightVector> out;
    std::vector<int> current;
    enumerate_rec(s, m, s, current, out);
    return out;
}

WeightSearchResult optimize_weights(const std::vector<KernelMatrix>& kernels, int p,
                                    double step) {
    GridEvaluation eval = evaluate_grid(kernels, p, step);
    ScoreEntry entry = best_entry_for_p(eval, p);
    return WeightSearchResult{std::move(entry.best_beta), entry.score, std::move(entry.gains)};
}

std::pair<int, bool> first_local_maximum(const std::vector<double>& scores) {
    if (scores.empty()) {
        throw ConfigError("first_local_maximum: empty score sequence");
    }
    for (std::size_t p = 1; p < scores.size(); ++p) {
        if (scores[p - 1] >= scores[p]) {
            return {static_cast<int>(p), false};
        }
    }
    return {static_cast<int>(scores.size()), true};
}

DimensionSelection select_dimension(const std::vector<KernelMatrix>& kernels, int p_max,
                                    double step) {
    if (p_max < 2) {
        throw ConfigError("select_dimension: p_max must be >= 2");
    }
    GridEvaluation eval = evaluate_grid(kernels, p_max, step);

    DimensionSelection selection;
    selection.curve.per_p.reserve(static_cast<std::size_t>(p_max));
    std::vector<double> best_scores;
    best_scores.reserve(static_cast<std::size_t>(p_max));
    for (int p = 1; p <= p_max; ++p) {
        selection.curve.per_p.push_back(best_entry_for_p(eval, p));
        best_scores.push_back(selection.curve.per_p.back().score);
    }
    auto [p_star, rising] = first_local_maximum(best_scores);
    selection.p_star = p_star;
    selection.rising_at_boundary = rising;
    return selection;
}

}  // namespace mkpca
