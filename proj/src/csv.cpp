#include "sindex/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sindex {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

long CsvTable::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] == name) return static_cast<long>(j);
    }
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("CSV file is empty: " + path);
    }
    CsvTable table;
    for (const auto& name : split_line(line)) {
        table.columns.push_back(trim(name));
    }
    const std::size_t ncol = table.columns.size();

    std::vector<double> data;
    long nrow = 0;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != ncol) {
            throw std::invalid_argument(
                "CSV row " + std::to_string(lineno) + ": expected " +
                std::to_string(ncol) + " fields, got " + std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < ncol; ++j) {
            std::string f = trim(fields[j]);
            if (f.empty()) {
                throw std::invalid_argument("CSV row " + std::to_string(lineno) +
                                            ", column '" + table.columns[j] +
                                            "': missing value");
            }
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                throw std::invalid_argument("CSV row " + std::to_string(lineno) +
                                            ", column '" + table.columns[j] +
                                            "': non-numeric value '" + f + "'");
            }
            data.push_back(v);
        }
        ++nrow;
    }
    table.values.resize(nrow, static_cast<long>(ncol));
    for (long i = 0; i < nrow; ++i) {
        for (long j = 0; j < static_cast<long>(ncol); ++j) {
            table.values(i, j) = data[static_cast<std::size_t>(i) * ncol + j];
        }
    }
    return table;
}

Dataset dataset_from_csv(const CsvTable& table, const std::string& outcome,
                         const std::vector<std::string>& target,
                         const std::vector<std::string>& nuisance) {
    auto require = [&](const std::string& name) {
        long idx = table.column_index(name);
        if (idx < 0) throw std::invalid_argument("CSV has no column named '" + name + "'");
        return idx;
    };
    if (target.empty()) throw std::invalid_argument("no target columns given");

    Dataset data;
    data.y = table.values.col(require(outcome));
    data.x_target.resize(table.values.rows(), static_cast<long>(target.size()));
    for (std::size_t j = 0; j < target.size(); ++j) {
        data.x_target.col(static_cast<long>(j)) = table.values.col(require(target[j]));
        data.target_names.push_back(target[j]);
    }
    data.x_nuisance.resize(table.values.rows(), static_cast<long>(nuisance.size()));
    for (std::size_t j = 0; j < nuisance.size(); ++j) {
        data.x_nuisance.col(static_cast<long>(j)) = table.values.col(require(nuisance[j]));
        data.nuisance_names.push_back(nuisance[j]);
    }
    return data;
}

}  // namespace sindex
