#pragma once

#include <string>

#include "lbound/io.hpp"

namespace lbound::test {

inline json data_file(const std::string& name) { return read_json_file(std::string(LBOUND_DATA_DIR) + "/" + name); }

inline CoefficientVector degree32_vector() { return coefficient_vector_from_json(data_file("general_m32.json")); }

/// Row of an order table by d.
inline json order_row(const std::string& file, int d) {
    const auto table = data_file(file);
    for (const auto& row : table.at("rows"))
        if (row.at("d").get<int>() == d) return row;
    throw DomainError("no row for d=" + std::to_string(d));
}

inline CoefficientVector order_vector(const std::string& file, int d) {
    return CoefficientVector(order_row(file, d).at("a").get<std::vector<double>>());
}

}  // namespace lbound::test
