// Command line front end for the multiple-kernel PCA integration pipeline.
//
//   mkpca run     --views a.csv,b.csv,c.csv --survival surv.csv --mode gain --out DIR
//   mkpca compare --views a.csv,b.csv,c.csv --survival surv.csv --out DIR
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical failure.

#include "mkpca/csv.hpp"
#include "mkpca/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliOptions {
    std::string views;
    std::string survival;
    std::string mode = "gain";
    std::string config_path;
    std::string out_dir;
    double grid_step = 0.05;
    int p_max = 10;
    int k_min = 2;
    int k_max = 15;
    std::uint64_t seed = 42;
    int restarts = 100;
    bool dump_kernels = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--views", opt.views, "Comma-separated feature CSV paths, one per view");
    cmd->add_option("--survival", opt.survival, "Survival CSV (sample_id,time,event)");
    cmd->add_option("--config", opt.config_path,
                    "JSON config file; replaces all other options");
    cmd->add_option("--grid-step", opt.grid_step,
                    "Weight grid resolution, reciprocal of an integer");
    cmd->add_option("--p-max", opt.p_max, "Upper bound for the projection dimension search");
    cmd->add_option("--k-min", opt.k_min, "Smallest cluster count tried");
    cmd->add_option("--k-max", opt.k_max, "Largest cluster count tried");
    cmd->add_option("--seed", opt.seed, "Random seed for k-means");
    cmd->add_option("--restarts", opt.restarts, "k-means restarts");
    cmd->add_option("--out", opt.out_dir, "Output directory for the run artifacts");
    cmd->add_flag("--dump-kernels", opt.dump_kernels, "Also write per-view kernel matrices");
}

mkpca::RunConfig build_config(const CliOptions& opt, bool with_mode) {
    if (!opt.config_path.empty()) {
        if (!opt.views.empty() || !opt.survival.empty()) {
            throw mkpca::ConfigError("--config excludes --views/--survival");
        }
        return mkpca::config_from_json(opt.config_path);
    }
    mkpca::RunConfig config;
    if (opt.views.empty()) {
        throw mkpca::ConfigError("--views is required (or use --config)");
    }
    if (opt.survival.empty()) {
        throw mkpca::ConfigError("--survival is required (or use --config)");
    }
    std::stringstream ss(opt.views);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            config.view_paths.emplace_back(item);
        }
    }
    config.survival_path = opt.survival;
    if (with_mode) {
        config.mode = mkpca::mode_from_string(opt.mode);
    }
    config.grid_step = opt.grid_step;
    config.p_max = opt.p_max;
    config.k_min = opt.k_min;
    config.k_max = opt.k_max;
    config.seed = opt.seed;
    config.restarts = opt.restarts;
    config.output_dir = opt.out_dir;
    config.dump_kernels = opt.dump_kernels;
    return config;
}

void print_report(const mkpca::RunReport& report) {
    std::cout << "mode:        " << mkpca::to_string(report.mode) << "\n"
              << "samples:     " << report.n_samples << "\n"
              << "p:           " << report.chosen_p
              << (report.p_at_boundary ? "  (warning: score still rising at p_max)" : "")
              << "\n";
    std::cout << "beta:       ";
    for (double b : report.chosen_beta.weights()) {
        std::cout << ' ' << mkpca::csv::format_double(b);
    }
    std::cout << "\nk:           " << report.selected_k << "\n"
              << "silhouette:  " << mkpca::csv::format_double(report.silhouette) << "\n"
              << "log-rank:    chi2 = " << mkpca::csv::format_double(report.logrank.chi_square)
              << ", df = " << report.logrank.degrees_of_freedom
              << ", p = " << mkpca::csv::format_double(report.logrank.p_value) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple-kernel PCA data integration pipeline"};
    app.require_subcommand(1);

    CliOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "Run the pipeline in one integration mode");
    add_common_flags(run, run_opt);
    run->add_option("--mode", run_opt.mode, "gain|max_variance|average");

    CliOptions cmp_opt;
    CLI::App* compare =
        app.add_subcommand("compare", "Run all three integration modes with a shared p");
    add_common_flags(compare, cmp_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            mkpca::RunConfig config = build_config(run_opt, true);
            mkpca::RunReport report = mkpca::run_pipeline(config);
            print_report(report);
        } else {
            mkpca::RunConfig config = build_config(cmp_opt, false);
            auto rows = mkpca::compare_modes(config);
            std::cout << "mode,p,p_value,k\n";
            for (const auto& row : rows) {
                std::cout << mkpca::to_string(row.mode) << ',' << row.p << ','
                          << mkpca::csv::format_double(row.p_value) << ',' << row.k << "\n";
            }
        }
    } catch (const mkpca::ConfigError& e) {
        std::cerr << "mkpca: config error: " << e.what() << "\n";
        return 2;
    } catch (const mkpca::DataError& e) {
        std::cerr << "mkpca: data error: " << e.what() << "\n";
        return 3;
    } catch (const mkpca::NumericalError& e) {
        std::cerr << "mkpca: numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "mkpca: error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
