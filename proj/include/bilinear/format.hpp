#pragma once

#include <cstdio>
#include <string>

namespace bilinear {

// Fixed 12-significant-digit rendering used by every CSV/text surface.
inline std::string fmt_sig(double value, int significant = 12) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", significant, value);
    return buf;
}

}  // namespace bilinear
