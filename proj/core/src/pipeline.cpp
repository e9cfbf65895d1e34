#include "mkpca/pipeline.hpp"

#include "mkpca/csv.hpp"
#include "mkpca/data_ingest.hpp"
#include "mkpca/integration.hpp"
#include "mkpca/kernels.hpp"
#include "mkpca/kpca.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <utility>

namespace mkpca {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Re-throws module errors with the pipeline stage prepended, preserving the type
// (the type picks the CLI exit code).
template <typename F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const ConfigError& e) {
        throw ConfigError(name + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(name + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(name + ": " + e.what());
    }
}

struct PreparedData {
    AlignedData aligned;
    std::vector<std::string> view_names;
    std::vector<double> gammas;
    std::vector<KernelMatrix> uncentered;
    std::vector<KernelMatrix> centered;
    double ingest_seconds = 0.0;
    double kernel_seconds = 0.0;
};

PreparedData prepare_data(const RunConfig& config) {
    if (config.view_paths.empty()) {
        throw ConfigError("at least one view is required");
    }
    PreparedData data;

    auto t0 = Clock::now();
    std::vector<DataMatrix> views;
    views.reserve(config.view_paths.size());
    for (const auto& path : config.view_paths) {
        views.push_back(
            stage("ingest", [&] { return load_matrix(path, path.stem().string()); }));
    }
    auto survival = stage("ingest", [&] { return load_survival(config.survival_path); });
    data.aligned = stage("align", [&] { return align_samples(views, survival); });
    data.ingest_seconds = seconds_since(t0);

    t0 = Clock::now();
    for (const auto& view : data.aligned.views) {
        double gamma = default_gamma(view.n_features());
        data.view_names.push_back(view.view_name);
        data.gammas.push_back(gamma);
        data.uncentered.push_back(
            stage("kernels", [&] { return gaussian_kernel(view, gamma); }));
        data.centered.push_back(
            stage("kernels", [&] { return center_kernel(data.uncentered.back()); }));
    }
    data.kernel_seconds = seconds_since(t0);
    return data;
}

void write_embedding_csv(const fs::path& path, const ProjectionResult& projection) {
    std::ofstream out(path);
    out << "sample_id";
    for (int j = 1; j <= projection.p; ++j) {
        out << ",pc" << j;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < projection.coordinates.rows(); ++i) {
        out << projection.sample_ids[static_cast<std::size_t>(i)];
        for (int j = 0; j < projection.p; ++j) {
            out << ',' << csv::format_double(projection.coordinates(i, j));
        }
        out << '\n';
    }
}

void write_clusters_csv(const fs::path& path, const std::vector<std::string>& sample_ids,
                        const std::vector<int>& assignments) {
    std::ofstream out(path);
    out << "sample_id,cluster\n";
    for (std::size_t i = 0; i < sample_ids.size(); ++i) {
        out << sample_ids[i] << ',' << assignments[i] << '\n';
    }
}

void write_score_curve_csv(const fs::path& path, const ScoreCurve& curve, std::size_t n_views) {
    std::ofstream out(path);
    const std::size_t p_max = curve.per_p.size();
    out << "p,score";
    for (std::size_t m = 1; m <= n_views; ++m) {
        out << ",beta_" << m;
    }
    for (std::size_t i = 1; i <= p_max; ++i) {
        out << ",g_" << i;
    }
    out << '\n';
    for (const auto& entry : curve.per_p) {
        out << entry.p << ',' << csv::format_double(entry.score);
        for (double b : entry.best_beta.weights()) {
            out << ',' << csv::format_double(b);
        }
        for (std::size_t i = 0; i < p_max; ++i) {
            out << ',';
            if (i < entry.gains.size()) {
                out << csv::format_double(entry.gains[i]);
            }
        }
        out << '\n';
    }
}

void write_km_csv(const fs::path& path, const std::vector<KmPoint>& curve) {
    std::ofstream out(path);
    out << "time,survival\n";
    for (const auto& point : curve) {
        out << csv::format_double(point.time) << ',' << csv::format_double(point.survival)
            << '\n';
    }
}

json logrank_to_json(const LogRankResult& result, const std::vector<int>& group_sizes) {
    return json{{"chi_square", result.chi_square},
                {"df", result.degrees_of_freedom},
                {"p_value", result.p_value},
                {"group_sizes", group_sizes}};
}

json report_to_json(const RunReport& report) {
    json views = json::array();
    for (std::size_t v = 0; v < report.view_names.size(); ++v) {
        views.push_back(json{{"view", report.view_names[v]}, {"gamma", report.gammas[v]}});
    }
    json curve = json::array();
    for (const auto& entry : report.score_curve.per_p) {
        curve.push_back(json{{"p", entry.p},
                             {"score", entry.score},
                             {"beta", entry.best_beta.weights()},
                             {"gains", entry.gains}});
    }
    return json{{"mode", to_string(report.mode)},
                {"n_samples", report.n_samples},
                {"views", views},
                {"chosen_p", report.chosen_p},
                {"p_at_boundary", report.p_at_boundary},
                {"chosen_beta", report.chosen_beta.weights()},
                {"score_curve", curve},
                {"selected_k", report.selected_k},
                {"silhouette", report.silhouette},
                {"degenerate_clustering", report.degenerate_clustering},
                {"logrank", logrank_to_json(report.logrank, report.group_sizes)},
                {"timings", report.timings}};
}

// One mode end-to-end on prepared data with the shared gain-curve dimension choice.
RunReport run_mode(const PreparedData& data, const DimensionSelection& selection, Mode mode,
                   const RunConfig& config, const fs::path& out_dir) {
    RunReport report;
    report.mode = mode;
    report.n_samples = static_cast<int>(data.aligned.survival.size());
    report.view_names = data.view_names;
    report.gammas = data.gammas;
    report.chosen_p = selection.p_star;
    report.p_at_boundary = selection.rising_at_boundary;
    report.score_curve = selection.curve;
    report.timings["ingest"] = data.ingest_seconds;
    report.timings["kernels"] = data.kernel_seconds;

    const std::size_t n_views = data.centered.size();
    const int p = selection.p_star;

    auto t0 = Clock::now();
    switch (mode) {
        case Mode::kGain:
            report.chosen_beta =
                selection.curve.per_p[static_cast<std::size_t>(p - 1)].best_beta;
            break;
        case Mode::kAverage:
            report.chosen_beta = WeightVector::uniform(n_views);
            break;
        case Mode::kMaxVariance: {
            // The single kernel with the largest variance in the first p dimensions:
            // exactly the vertex the naive multiple-kernel objective degenerates to.
            std::size_t best_view = 0;
            double best_sum = -1.0;
            for (std::size_t m = 0; m < n_views; ++m) {
                EigenSystem eig =
                    stage("weight_search", [&] { return eigendecompose(data.centered[m]); });
                double sum = eig.eigenvalues.head(p).sum();
                if (sum > best_sum) {  // ties keep the first view
                    best_sum = sum;
                    best_view = m;
                }
            }
            report.chosen_beta = WeightVector::vertex(best_view, n_views);
            break;
        }
    }
    KernelMatrix ensemble =
        stage("combine", [&] { return combine(data.centered, report.chosen_beta); });
    report.timings["ensemble"] = seconds_since(t0);

    t0 = Clock::now();
    ProjectionResult projection = stage(
        "projection", [&] { return project(ensemble, data.aligned.views[0].sample_ids, p); });
    report.timings["projection"] = seconds_since(t0);

    t0 = Clock::now();
    Clustering clustering = stage("clustering", [&] {
        return select_k(projection.coordinates, config.k_min, config.k_max, config.seed,
                        config.restarts);
    });
    report.selected_k = clustering.k;
    report.silhouette = clustering.silhouette;
    report.degenerate_clustering = clustering.degenerate;
    report.group_sizes.assign(static_cast<std::size_t>(clustering.k), 0);
    for (int a : clustering.assignments) {
        ++report.group_sizes[static_cast<std::size_t>(a)];
    }
    report.timings["clustering"] = seconds_since(t0);

    t0 = Clock::now();
    report.logrank = stage("survival", [&] {
        return logrank_test(clustering.assignments, data.aligned.survival);
    });
    report.timings["survival"] = seconds_since(t0);

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_embedding_csv(out_dir / "embedding.csv", projection);
        write_clusters_csv(out_dir / "clusters.csv", data.aligned.views[0].sample_ids,
                           clustering.assignments);
        write_score_curve_csv(out_dir / "score_curve.csv", report.score_curve, n_views);
        for (int c = 0; c < clustering.k; ++c) {
            std::vector<SurvivalRecord> members;
            for (std::size_t i = 0; i < clustering.assignments.size(); ++i) {
                if (clustering.assignments[i] == c) {
                    members.push_back(data.aligned.survival[i]);
                }
            }
            write_km_csv(out_dir / ("km_cluster_" + std::to_string(c) + ".csv"),
                         kaplan_meier(members));
        }
        if (config.dump_kernels) {
            for (std::size_t m = 0; m < data.uncentered.size(); ++m) {
                std::ofstream out(out_dir / ("kernel_" + data.view_names[m] + ".csv"));
                write_kernel_csv(data.uncentered[m], data.aligned.views[0].sample_ids, out);
            }
        }
        std::ofstream out(out_dir / "report.json");
        out << report_to_json(report).dump(2) << '\n';
    }
    return report;
}

DimensionSelection select_gain_dimension(const PreparedData& data, const RunConfig& config) {
    const auto n = static_cast<int>(data.aligned.survival.size());
    int p_max = std::min(config.p_max, n - 1);
    if (p_max < 2) {
        throw ConfigError("p_max must be >= 2 after clamping to N-1");
    }
    return stage("weight_search",
                 [&] { return select_dimension(data.centered, p_max, config.grid_step); });
}

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::kGain:
            return "gain";
        case Mode::kMaxVariance:
            return "max_variance";
        case Mode::kAverage:
            return "average";
    }
    throw ConfigError("unknown mode");
}

Mode mode_from_string(const std::string& name) {
    if (name == "gain") {
        return Mode::kGain;
    }
    if (name == "max_variance") {
        return Mode::kMaxVariance;
    }
    if (name == "average") {
        return Mode::kAverage;
    }
    throw ConfigError("mode must be one of gain, max_variance, average; got \"" + name + "\"");
}

RunConfig config_from_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("invalid config JSON: " + std::string(e.what()));
    }
    try {
        RunConfig config;
        for (const auto& view : doc.at("views")) {
            config.view_paths.emplace_back(view.get<std::string>());
        }
        config.survival_path = doc.at("survival").get<std::string>();
        if (doc.contains("mode")) {
            config.mode = mode_from_string(doc["mode"].get<std::string>());
        }
        config.grid_step = doc.value("grid_step", config.grid_step);
        config.p_max = doc.value("p_max", config.p_max);
        config.k_min = doc.value("k_min", config.k_min);
        config.k_max = doc.value("k_max", config.k_max);
        config.seed = doc.value("seed", config.seed);
        config.restarts = doc.value("restarts", config.restarts);
        if (doc.contains("out")) {
            config.output_dir = doc["out"].get<std::string>();
        }
        config.dump_kernels = doc.value("dump_kernels", config.dump_kernels);
        return config;
    } catch (const json::exception& e) {
        throw ConfigError("bad config field: " + std::string(e.what()));
    }
}

RunReport run_pipeline(const RunConfig& config) {
    PreparedData data = prepare_data(config);
    DimensionSelection selection = select_gain_dimension(data, config);
    return run_mode(data, selection, config.mode, config, config.output_dir);
}

std::vector<ComparisonRow> compare_modes(const RunConfig& config) {
    PreparedData data = prepare_data(config);
    DimensionSelection selection = select_gain_dimension(data, config);

    std::vector<ComparisonRow> rows;
    for (Mode mode : {Mode::kGain, Mode::kMaxVariance, Mode::kAverage}) {
        fs::path out_dir =
            config.output_dir.empty() ? fs::path{} : config.output_dir / to_string(mode);
        RunReport report = run_mode(data, selection, mode, config, out_dir);
        rows.push_back(ComparisonRow{mode, report.chosen_p, report.logrank.p_value,
                                     report.selected_k});
    }

    if (!config.output_dir.empty()) {
        fs::create_directories(config.output_dir);
        std::ofstream out(config.output_dir / "comparison.csv");
        out << "mode,p,p_value,k\n";
        for (const auto& row : rows) {
            out << to_string(row.mode) << ',' << row.p << ','
                << csv::format_double(row.p_value) << ',' << row.k << '\n';
        }
    }
    return rows;
}

}  // namespace mkpca
