#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdisp/types.hpp"

// Reference values of E_alpha(z) written by tests/oracle/ml_oracle.
struct MlFixture {
    double alpha = 0.0;
    fracdisp::Complex z{};
    fracdisp::Complex value{};
};

inline std::vector<MlFixture> load_ml_fixtures() {
    const std::string path = std::string(FRACDISP_FIXTURE_DIR) + "/ml_oracle.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::string line;
    std::getline(in, line);
    std::vector<MlFixture> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string c[6];
        for (auto& s : c) std::getline(ss, s, ',');
        out.push_back({std::stod(c[0]), {std::stod(c[1]), std::stod(c[2])}, {std::stod(c[3]), std::stod(c[4])}});
    }
    return out;
}
