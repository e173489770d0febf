#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace curvcut {

/// Real-valued function on the vertices of a graph, indexed by VertexId.
using ScalarField = std::vector<double>;

inline double sup_norm(const ScalarField& f) {
    double s = 0.0;
    for (double x : f)
        s = std::max(s, std::abs(x));
    return s;
}

inline double max_abs_diff(const ScalarField& f, const ScalarField& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s = std::max(s, std::abs(f[i] - g[i]));
    return s;
}

} // namespace curvcut
