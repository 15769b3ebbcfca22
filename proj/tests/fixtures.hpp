#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "rml/distributions.hpp"

namespace rml::testing {

// Header line then one value per line.
inline Sample load_fixture(const std::string& name) {
    std::ifstream in(std::string(RML_DATA_DIR) + "/" + name);
    std::string line;
    std::getline(in, line);
    std::vector<double> v;
    while (std::getline(in, line)) {
        if (!line.empty()) v.push_back(std::stod(line));
    }
    return Sample(std::span<const double>(v));
}

} // namespace rml::testing
