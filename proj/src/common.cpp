#include "iadsim/common.hpp"

#include <cstdio>

namespace iadsim {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_scalar(const Scalar& s) {
    if (std::holds_alternative<std::int64_t>(s)) {
        return std::to_string(std::get<std::int64_t>(s));
    }
    if (std::holds_alternative<double>(s)) {
        return format_real(std::get<double>(s));
    }
    return std::get<std::string>(s);
}

}  // namespace iadsim
