#include "combdrive/quadrature.hpp"

#include "combdrive/errors.hpp"

#include <cmath>

namespace combdrive {

GaussRule gauss_rule(int order) {
    // nodes and weights on [-1, 1]
    std::vector<double> x, w;
    switch (order) {
    case 1:
        x = {0.0};
        w = {2.0};
        break;
    case 2: {
        const double a = 1.0 / std::sqrt(3.0);
        x = {-a, a};
        w = {1.0, 1.0};
        break;
    }
    case 3: {
        const double a = std::sqrt(0.6);
        x = {-a, 0.0, a};
        w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        break;
    }
    case 4: {
        const double r = 2.0 / 7.0 * std::sqrt(6.0 / 5.0);
        const double a = std::sqrt(3.0 / 7.0 - r), b = std::sqrt(3.0 / 7.0 + r);
        const double wa = (18.0 + std::sqrt(30.0)) / 36.0, wb = (18.0 - std::sqrt(30.0)) / 36.0;
        x = {-b, -a, a, b};
        w = {wb, wa, wa, wb};
        break;
    }
    case 5: {
        const double r = 2.0 * std::sqrt(10.0 / 7.0);
        const double a = std::sqrt(5.0 - r) / 3.0, b = std::sqrt(5.0 + r) / 3.0;
        const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
        const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
        x = {-b, -a, 0.0, a, b};
        w = {wb, wa, 128.0 / 225.0, wa, wb};
        break;
    }
    default:
        throw ValidationError("quadrature order must be between 1 and 5");
    }
    GaussRule g;
    for (std::size_t i = 0; i < x.size(); ++i) {
        g.points.push_back(0.5 * (x[i] + 1.0));
        g.weights.push_back(0.5 * w[i]);
    }
    return g;
}

} // namespace combdrive
