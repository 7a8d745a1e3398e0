#pragma once

#include <fstream>
#include <sstream>
#include <string>

#ifndef FMF_FIXTURES
#error "FMF_FIXTURES must point at tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(FMF_FIXTURES) + "/" + name; }

inline std::string bytes(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures
