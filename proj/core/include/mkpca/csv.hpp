#ifndef MKPCA_CSV_HPP
#define MKPCA_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace mkpca::csv {

/// Raw comma-separated file as strings. No quoting support; fields may not contain commas.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a whole CSV file. Throws DataError on a missing file or an empty file.
Table read_file(const std::filesystem::path& path);

/// Splits one line on commas, trimming a trailing '\r'.
std::vector<std::string> split_line(const std::string& line);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Strict double parse; the whole field must be consumed. Returns false for "NA", "", "1x", ...
bool parse_double(const std::string& field, double& out);

}  // namespace mkpca::csv

#endif
