#include "mkpca/data_ingest.hpp"

#include "mkpca/csv.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mkpca {

namespace {

// Positions in error messages are 1-based; the header counts as row 1.
std::string cell_pos(std::size_t row_index, std::size_t col_index) {
    return "row " + std::to_string(row_index + 2) + ", column " + std::to_string(col_index + 1);
}

}  // namespace

DataMatrix load_matrix(const std::filesystem::path& path, const std::string& view_name) {
    csv::Table table = csv::read_file(path);
    if (table.header.empty() || table.header[0] != "sample_id") {
        throw DataError(path.string() + ": first header column must be \"sample_id\"");
    }
    const std::size_t d = table.header.size() - 1;
    if (d < 1) {
        throw DataError(path.string() + ": no feature columns");
    }
    if (table.rows.size() < 2) {
        throw DataError(path.string() + ": need at least 2 samples, got " +
                        std::to_string(table.rows.size()));
    }

    DataMatrix matrix;
    matrix.view_name = view_name;
    matrix.values.resize(static_cast<Eigen::Index>(table.rows.size()),
                         static_cast<Eigen::Index>(d));
    matrix.sample_ids.reserve(table.rows.size());

    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != d + 1) {
            throw DataError(path.string() + ": ragged row at row " + std::to_string(r + 2) +
                            " (expected " + std::to_string(d + 1) + " fields, got " +
                            std::to_string(row.size()) + ")");
        }
        if (row[0].empty()) {
            throw DataError(path.string() + ": empty sample id at " + cell_pos(r, 0));
        }
        if (!seen.insert(row[0]).second) {
            throw DataError(path.string() + ": duplicate sample id \"" + row[0] + "\" at " +
                            cell_pos(r, 0));
        }
        matrix.sample_ids.push_back(row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            double value = 0.0;
            if (!csv::parse_double(row[c], value)) {
                throw DataError(path.string() + ": non-numeric cell \"" + row[c] + "\" at " +
                                cell_pos(r, c));
            }
            if (!std::isfinite(value)) {
                throw DataError(path.string() + ": non-finite value at " + cell_pos(r, c));
            }
            matrix.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) = value;
        }
    }
    return matrix;
}

std::vector<SurvivalRecord> load_survival(const std::filesystem::path& path) {
    csv::Table table = csv::read_file(path);
    const std::vector<std::string> expected = {"sample_id", "time", "event"};
    if (table.header != expected) {
        throw DataError(path.string() + ": survival header must be exactly sample_id,time,event");
    }

    std::vector<SurvivalRecord> records;
    records.reserve(table.rows.size());
    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != 3) {
            throw DataError(path.string() + ": ragged row at row " + std::to_string(r + 2));
        }
        if (!seen.insert(row[0]).second) {
            throw DataError(path.string() + ": duplicate sample id \"" + row[0] + "\" at " +
                            cell_pos(r, 0));
        }
        double time = 0.0;
        if (!csv::parse_double(row[1], time) || !std::isfinite(time)) {
            throw DataError(path.string() + ": non-numeric time \"" + row[1] + "\" at " +
                            cell_pos(r, 1));
        }
        if (time < 0.0) {
            throw DataError(path.string() + ": negative time at " + cell_pos(r, 1));
        }
        bool event = false;
        if (row[2] == "0") {
            event = false;
        } else if (row[2] == "1") {
            event = true;
        } else {
            throw DataError(path.string() + ": event must be 0 or 1, got \"" + row[2] + "\" at " +
                            cell_pos(r, 2));
        }
        records.push_back(SurvivalRecord{row[0], time, event});
    }
    return records;
}

AlignedData align_samples(const std::vector<DataMatrix>& views,
                          const std::vector<SurvivalRecord>& survival) {
    if (views.empty()) {
        throw ConfigError("align_samples: need at least one view");
    }

    // Intersection of sample IDs across all views and the survival table.
    std::set<std::string> common(views[0].sample_ids.begin(), views[0].sample_ids.end());
    for (std::size_t v = 1; v < views.size(); ++v) {
        std::set<std::string> ids(views[v].sample_ids.begin(), views[v].sample_ids.end());
        std::set<std::string> kept;
        std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(),
                              std::inserter(kept, kept.begin()));
        common.swap(kept);
    }
    {
        std::set<std::string> ids;
        for (const auto& rec : survival) {
            ids.insert(rec.sample_id);
        }
        std::set<std::string> kept;
        std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(),
                              std::inserter(kept, kept.begin()));
        common.swap(kept);
    }

    if (common.empty()) {
        throw DataError("align_samples: empty intersection of sample ids");
    }
    if (common.size() < 2) {
        throw DataError("align_samples: fewer than 2 samples in the intersection");
    }

    // std::set iterates in ascending lexicographic order, which is the canonical order.
    std::vector<std::string> order(common.begin(), common.end());

    AlignedData out;
    out.views.reserve(views.size());
    for (const auto& view : views) {
        std::unordered_map<std::string, Eigen::Index> row_of;
        row_of.reserve(view.sample_ids.size());
        for (std::size_t i = 0; i < view.sample_ids.size(); ++i) {
            row_of.emplace(view.sample_ids[i], static_cast<Eigen::Index>(i));
        }
        DataMatrix aligned;
        aligned.view_name = view.view_name;
        aligned.sample_ids = order;
        aligned.values.resize(static_cast<Eigen::Index>(order.size()), view.values.cols());
        for (std::size_t i = 0; i < order.size(); ++i) {
            aligned.values.row(static_cast<Eigen::Index>(i)) = view.values.row(row_of.at(order[i]));
        }
        out.views.push_back(std::move(aligned));
    }

    std::unordered_map<std::string, const SurvivalRecord*> rec_of;
    rec_of.reserve(survival.size());
    for (const auto& rec : survival) {
        rec_of.emplace(rec.sample_id, &rec);
    }
    out.survival.reserve(order.size());
    for (const auto& id : order) {
        out.survival.push_back(*rec_of.at(id));
    }
    return out;
}

}  // namespace mkpca
