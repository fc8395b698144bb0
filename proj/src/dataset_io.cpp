#include "gbf/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gbf/errors.hpp"

namespace gbf::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // trim surrounding spaces
        const auto first = field.find_first_not_of(" \t");
        const auto last = field.find_last_not_of(" \t");
        fields.push_back(first == std::string::npos
                             ? std::string{}
                             : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& text, const std::string& origin,
                    std::size_t line, std::size_t column) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError(origin + ":" + std::to_string(line) + ": column " +
                              std::to_string(column) + ": '" + text +
                              "' is not a number");
    }
    return value;
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& origin) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
        while (!lines.empty() && lines.back().empty()) lines.pop_back();
    }
    if (lines.empty()) throw ValidationError(origin + ": empty CSV");

    const std::vector<std::string> header = split_line(lines[0]);
    if (header.empty() || header[0] != "y") {
        throw ValidationError(origin + ":1: first column must be named 'y'");
    }
    if (header.size() < 2) {
        throw ValidationError(origin + ":1: no predictor columns");
    }
    const std::size_t width = header.size();

    CsvTable table;
    table.predictor_names.assign(header.begin() + 1, header.end());
    const std::size_t rows = lines.size() - 1;
    table.y.resize(rows);
    table.x_raw = linalg::Matrix(rows, width - 1);

    for (std::size_t row = 0; row < rows; ++row) {
        const std::size_t line_no = row + 2;
        const std::vector<std::string> fields = split_line(lines[row + 1]);
        if (fields.size() != width) {
            throw ValidationError(origin + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(width) + " fields, found " +
                                  std::to_string(fields.size()));
        }
        table.y[row] = parse_number(fields[0], origin, line_no, 1);
        for (std::size_t c = 1; c < width; ++c) {
            table.x_raw(row, c - 1) = parse_number(fields[c], origin, line_no, c + 1);
        }
    }
    return table;
}

CsvTable load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open dataset: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), path);
}

std::vector<int> column_indices(const CsvTable& table,
                                const std::vector<std::string>& names) {
    std::vector<int> indices;
    indices.reserve(names.size());
    for (const std::string& name : names) {
        const auto it = std::find(table.predictor_names.begin(),
                                  table.predictor_names.end(), name);
        if (it == table.predictor_names.end()) {
            throw ValidationError("unknown column '" + name + "'");
        }
        indices.push_back(
            static_cast<int>(it - table.predictor_names.begin()) + 1);
    }
    return indices;
}

}  // namespace gbf::io
