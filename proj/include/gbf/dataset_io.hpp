#pragma once

// CSV datasets: header row, first column named `y`, remaining columns are
// predictors in order; UTF-8, `.` decimal point, no missing values.

#include <string>
#include <vector>

#include "gbf/linalg.hpp"
#include "gbf/regression.hpp"

namespace gbf::io {

struct CsvTable {
    std::vector<std::string> predictor_names;  // header names after `y`
    std::vector<double> y;
    linalg::Matrix x_raw;  // uncentered predictors
};

// Throws ValidationError with line/column diagnostics on malformed input.
CsvTable load_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& origin);

// Maps predictor names to 1-based column indices; unknown names raise
// ValidationError naming the column.
std::vector<int> column_indices(const CsvTable& table,
                                const std::vector<std::string>& names);

inline Dataset to_dataset(const CsvTable& table) {
    return Dataset::from_raw(table.y, table.x_raw);
}

}  // namespace gbf::io
