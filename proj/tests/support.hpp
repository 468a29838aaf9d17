#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "adtree/dsl.hpp"
#include "adtree/model.hpp"

namespace testing {

inline std::string model_path(const std::string& name) { return std::string(ADTREE_MODELS_DIR) + "/" + name; }
inline std::string data_path(const std::string& name) { return std::string(ADTREE_TEST_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline adtree::Model load(const std::string& name) {
    auto result = adtree::parse_file(model_path(name));
    if (!result.model) throw std::runtime_error("shipped model " + name + " failed to parse");
    return *result.model;
}

// CVSS v3.1 exploitability written out longhand, independent of the library.
inline double longhand_e(double av, double ac, double pr, double ui) { return 8.22 * av * ac * pr * ui; }

namespace w {
inline constexpr double N = 0.85;       // AV:N, PR:N, UI:N
inline constexpr double AV_A = 0.62;
inline constexpr double AV_L = 0.55;
inline constexpr double AV_P = 0.20;
inline constexpr double AC_L = 0.77;
inline constexpr double AC_H = 0.44;
inline constexpr double PR_L = 0.62;
inline constexpr double PR_H = 0.27;
inline constexpr double UI_R = 0.62;
}  // namespace w

}  // namespace testing
