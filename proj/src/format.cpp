#include "rrdps/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace rrdps {

std::string format_sig12(double value) {
    char buf[40];
    if (value == 0.0) {
        value = 0.0;  // canonicalize -0
    }
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double quantize_sig12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return std::strtod(buf, nullptr);
}

}  // namespace rrdps
