#include "combdrive/cutoff.hpp"

#include "combdrive/errors.hpp"

#include <algorithm>
#include <cmath>

namespace combdrive {

std::string to_string(CutoffVariant v) {
    return v == CutoffVariant::TensorLinear ? "TENSOR_LINEAR" : "TENSOR_SMOOTHSTEP";
}

CutoffVariant cutoff_variant_from_string(const std::string &s) {
    if (s == "TENSOR_LINEAR")
        return CutoffVariant::TensorLinear;
    if (s == "TENSOR_SMOOTHSTEP")
        return CutoffVariant::TensorSmoothstep;
    throw ValidationError("unknown cutoff variant '" + s +
                          "' (expected TENSOR_LINEAR or TENSOR_SMOOTHSTEP)");
}

CutoffSpec::CutoffSpec(CutoffVariant variant, const CombParams &params, double margin)
    : variant_(variant), params_(params), margin_(margin) {
    require_valid(params);
    if (!(margin > 0.0 && margin <= 1.0))
        throw ValidationError("cutoff margin must lie in (0, 1]");
    const auto &z = params.zeta;
    // wrap gap ]z4, 1+z1[, middle gap ]z2, z3[
    const double wrap = z[0] + 1.0 - z[3], mid = z[2] - z[1];
    const double wrap_c = z[3] + 0.5 * wrap, mid_c = z[1] + 0.5 * mid;
    rise_lo_ = wrap_c - 0.5 * margin * wrap;
    rise_hi_ = wrap_c + 0.5 * margin * wrap;
    fall_lo_ = mid_c - 0.5 * margin * mid;
    fall_hi_ = mid_c + 0.5 * margin * mid;
}

double CutoffSpec::ramp(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    return variant_ == CutoffVariant::TensorLinear ? t : t * t * (3.0 - 2.0 * t);
}

double CutoffSpec::ramp_slope(double t) const {
    if (t < 0.0 || t > 1.0)
        return 0.0;
    return variant_ == CutoffVariant::TensorLinear ? 1.0 : 6.0 * t * (1.0 - t);
}

std::array<double, 2> CutoffSpec::profile_a(double y) const {
    // shift into one period [rise_hi - 1, rise_hi) so the rising window is contiguous
    const double base = rise_hi_ - 1.0;
    y = base + (y - base - std::floor(y - base));
    if (y >= fall_lo_ && y <= fall_hi_) {
        const double w = fall_hi_ - fall_lo_, t = (y - fall_lo_) / w;
        return {1.0 - ramp(t), -ramp_slope(t) / w};
    }
    if (y >= rise_lo_ && y <= rise_hi_) {
        const double w = rise_hi_ - rise_lo_, t = (y - rise_lo_) / w;
        return {ramp(t), ramp_slope(t) / w};
    }
    // plateau: 1 between the rising and falling windows, 0 after the fall
    const bool on = y < fall_lo_;
    return {on ? 1.0 : 0.0, 0.0};
}

std::array<double, 2> CutoffSpec::profile_b(double x2, double lo) const {
    const double t = x2 - lo;
    return {ramp(t), ramp_slope(t)};
}

double CutoffSpec::eval(double y, double x2) const {
    const double l1 = params_.l[0], l2 = params_.l[1];
    if (!(x2 >= l1 && x2 <= l2))
        throw DomainError("cutoff evaluated at x2 = " + std::to_string(x2) + " outside [l1, l2]");
    const auto a = profile_a(y);
    const auto b1 = profile_b(x2, l1), b0 = profile_b(x2, l2 - 1.0);
    return a[0] * b1[0] + (1.0 - a[0]) * b0[0];
}

std::array<double, 2> CutoffSpec::grad(double y, double x2) const {
    const double l1 = params_.l[0], l2 = params_.l[1];
    if (!(x2 >= l1 && x2 <= l2))
        throw DomainError("cutoff evaluated at x2 = " + std::to_string(x2) + " outside [l1, l2]");
    const auto a = profile_a(y);
    const auto b1 = profile_b(x2, l1), b0 = profile_b(x2, l2 - 1.0);
    return {a[1] * (b1[0] - b0[0]), a[0] * b1[1] + (1.0 - a[0]) * b0[1]};
}

double CutoffSpec::eval_oscillated(double x1, double x2, double eps) const {
    return eval(x1 / eps, x2);
}

std::array<double, 2> CutoffSpec::grad_oscillated(double x1, double x2, double eps) const {
    auto g = grad(x1 / eps, x2);
    g[0] /= eps;
    return g;
}

std::array<double, 2> CutoffSpec::grad_sup() const {
    const double peak = variant_ == CutoffVariant::TensorLinear ? 1.0 : 1.5;
    const double w = std::min(rise_hi_ - rise_lo_, fall_hi_ - fall_lo_);
    return {peak / w, peak};
}

} // namespace combdrive
