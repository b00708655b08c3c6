#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sindex/models.hpp"

namespace sindex {

// Strict numeric CSV: header row required, comma separated, no missing
// values. Errors name the offending row/column.
struct CsvTable {
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  // rows x columns

    long column_index(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::string& path);

Dataset dataset_from_csv(const CsvTable& table, const std::string& outcome,
                         const std::vector<std::string>& target,
                         const std::vector<std::string>& nuisance);

}  // namespace sindex
