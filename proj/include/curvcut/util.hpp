#pragma once

#include <cstdio>
#include <random>
#include <string>

namespace curvcut {

/// Fixed float formatting for all artifacts: 17 significant digits
/// round-trips every double, and identical inputs yield identical bytes.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Uniform double in [0,1) from the top 53 bits of the generator output.
/// Used instead of std::uniform_real_distribution, whose output is not
/// pinned down by the standard and varies across library implementations.
inline double canonical_uniform(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

/// Worker thread cap: CURVCUT_THREADS if set (min 1), else hardware count.
unsigned worker_count();

} // namespace curvcut
