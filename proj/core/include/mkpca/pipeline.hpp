#ifndef MKPCA_PIPELINE_HPP
#define MKPCA_PIPELINE_HPP

#include "mkpca/clustering.hpp"
#include "mkpca/survival.hpp"
#include "mkpca/types.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mkpca {

/// The three integration modes compared against each other:
///   kGain        - ensemble weights maximize the gain score
///   kMaxVariance - the single kernel with the largest variance in the first p dimensions
///   kAverage     - uniform weights 1/M
enum class Mode { kGain, kMaxVariance, kAverage };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct RunConfig {
    std::vector<std::filesystem::path> view_paths;
    std::filesystem::path survival_path;
    Mode mode = Mode::kGain;
    double grid_step = 0.05;
    int p_max = 10;
    int k_min = 2;
    int k_max = 15;
    std::uint64_t seed = 42;
    int restarts = 100;
    std::filesystem::path output_dir;
    bool dump_kernels = false;
};

/// Parses a RunConfig from a JSON file (the --config alternative to CLI flags).
RunConfig config_from_json(const std::filesystem::path& path);

struct RunReport {
    Mode mode = Mode::kGain;
    int n_samples = 0;
    std::vector<std::string> view_names;
    std::vector<double> gammas;       // per view
    int chosen_p = 0;
    bool p_at_boundary = false;
    WeightVector chosen_beta;
    ScoreCurve score_curve;           // gain-mode curve; the source of chosen_p in all modes
    int selected_k = 0;
    double silhouette = 0.0;
    bool degenerate_clustering = false;
    LogRankResult logrank;
    std::vector<int> group_sizes;
    std::map<std::string, double> timings;  // seconds per stage
};

/// Runs the two-step pipeline end-to-end for one mode: ingest, align, per-view Gaussian
/// kernels (gamma = 1/(2 d^2)), centering, mode-specific ensemble, projection into the
/// dimension picked by the gain curve's first local maximum, silhouette-selected k-means,
/// and the log-rank evaluation. Writes embedding.csv, clusters.csv, score_curve.csv,
/// km_cluster_<i>.csv and report.json under config.output_dir (when set).
RunReport run_pipeline(const RunConfig& config);

struct ComparisonRow {
    Mode mode = Mode::kGain;
    int p = 0;
    double p_value = 1.0;
    int k = 0;
};

/// Runs all three modes with a shared p (determined once by the gain-mode curve) and
/// writes comparison.csv plus per-mode artifact directories under config.output_dir.
std::vector<ComparisonRow> compare_modes(const RunConfig& config);

}  // namespace mkpca

#endif
