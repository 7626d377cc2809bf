#pragma once

#include "combdrive/params.hpp"

#include <array>
#include <string>

namespace combdrive {

enum class CutoffVariant { TensorLinear, TensorSmoothstep };

std::string to_string(CutoffVariant v);
CutoffVariant cutoff_variant_from_string(const std::string &s);

/// Periodic cutoff on the rescaled cell, phi*(y, x2) = A(y) B1(x2) + (1 - A(y)) B0(x2).
///
/// A is 1 on the rotor interval and 0 on the stator interval; it crosses over
/// inside the two free gaps, using the central `margin` fraction of each gap.
/// B1 rises from 0 to 1 across the lower gap layer, B0 across the upper one.
/// The ramp profile is linear or the C1 smoothstep 3t^2 - 2t^3.
class CutoffSpec {
public:
    CutoffSpec(CutoffVariant variant, const CombParams &params, double margin = 1.0);

    CutoffVariant variant() const { return variant_; }
    double margin() const { return margin_; }
    const CombParams &params() const { return params_; }

    /// Throws DomainError when x2 lies outside [l1, l2].
    double eval(double y, double x2) const;
    /// (d/dy, d/dx2).
    std::array<double, 2> grad(double y, double x2) const;

    /// phi*(x1/eps, x2) and its chain-ruled gradient.
    double eval_oscillated(double x1, double x2, double eps) const;
    std::array<double, 2> grad_oscillated(double x1, double x2, double eps) const;

    /// Sup norms of the two partial derivatives (attained on the ramps).
    std::array<double, 2> grad_sup() const;

private:
    double ramp(double t) const;
    double ramp_slope(double t) const;
    // A and dA/dy at y in [0,1)
    std::array<double, 2> profile_a(double y) const;
    std::array<double, 2> profile_b(double x2, double lo) const;

    CutoffVariant variant_;
    CombParams params_;
    double margin_;
    // crossover windows in one period: rising across the wrap gap, falling in the middle gap
    double rise_lo_, rise_hi_, fall_lo_, fall_hi_;
};

} // namespace combdrive
