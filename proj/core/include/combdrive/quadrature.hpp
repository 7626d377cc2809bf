#pragma once

#include <vector>

namespace combdrive {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct GaussRule {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Orders 1 to 5. Throws ValidationError otherwise.
GaussRule gauss_rule(int order);

} // namespace combdrive
