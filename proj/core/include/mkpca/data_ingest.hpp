#ifndef MKPCA_DATA_INGEST_HPP
#define MKPCA_DATA_INGEST_HPP

#include "mkpca/types.hpp"

#include <filesystem>
#include <vector>

namespace mkpca {

/// Loads a feature CSV (header "sample_id,<feature names...>", one row per sample).
/// Every cell must parse as a finite number; errors name the offending row and column.
DataMatrix load_matrix(const std::filesystem::path& path, const std::string& view_name);

/// Loads a survival CSV with the exact header "sample_id,time,event" (event coded 0/1).
std::vector<SurvivalRecord> load_survival(const std::filesystem::path& path);

struct AlignedData {
    std::vector<DataMatrix> views;
    std::vector<SurvivalRecord> survival;
};

/// Restricts all views and the survival table to the common sample IDs and reorders
/// everything to ascending lexicographic ID order. Samples missing from any input are
/// dropped. Throws DataError when fewer than 2 samples survive the intersection.
AlignedData align_samples(const std::vector<DataMatrix>& views,
                          const std::vector<SurvivalRecord>& survival);

}  // namespace mkpca

#endif
