#pragma once

#include <cstdio>
#include <string>

namespace qnc {

// All real-valued CLI/report output goes through this: 12 significant digits,
// locale-independent, stable across runs.
inline std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
}

}  // namespace qnc
