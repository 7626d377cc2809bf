#include "combdrive/geometry.hpp"

#include "combdrive/errors.hpp"

#include <algorithm>
#include <cmath>

namespace combdrive {

std::string_view to_string(Region r) {
    switch (r) {
    case Region::C1: return "C1";
    case Region::C2: return "C2";
    case Region::C3: return "C3";
    }
    return "?";
}

std::string_view to_string(BoundaryTag t) {
    switch (t) {
    case BoundaryTag::DirichletRotor: return "DIRICHLET_ROTOR";
    case BoundaryTag::DirichletStator: return "DIRICHLET_STATOR";
    case BoundaryTag::NeumannLateral: return "NEUMANN_LATERAL";
    }
    return "?";
}

double BoundarySegment::length() const { return std::abs(b.x1 - a.x1) + std::abs(b.x2 - a.x2); }

std::optional<double> BoundarySegment::dirichlet_value() const {
    switch (tag) {
    case BoundaryTag::DirichletRotor: return 1.0;
    case BoundaryTag::DirichletStator: return 0.0;
    case BoundaryTag::NeumannLateral: return std::nullopt;
    }
    return std::nullopt;
}

double RectilinearDomain::area() const {
    double s = 0.0;
    for (const auto &r : rects)
        s += r.area();
    return s;
}

double RectilinearDomain::area(Region region) const {
    double s = 0.0;
    for (const auto &r : rects)
        if (r.region == region)
            s += r.area();
    return s;
}

double RectilinearDomain::boundary_length() const {
    double s = 0.0;
    for (const auto &b : boundary)
        s += b.length();
    return s;
}

double RectilinearDomain::boundary_length(BoundaryTag t) const {
    double s = 0.0;
    for (const auto &b : boundary)
        if (b.tag == t)
            s += b.length();
    return s;
}

bool RectilinearDomain::contains(Point p, double tol) const {
    return std::any_of(rects.begin(), rects.end(),
                       [&](const Rect &r) { return r.contains(p, tol); });
}

namespace {

// Interval indices inside one period: 0 = ]0,z1[, 1 = omega_a, 2 = ]z2,z3[,
// 3 = omega_b, 4 = ]z4,1[.
constexpr int kRotorInterval = 1;
constexpr int kStatorInterval = 3;

RectilinearDomain build_comb(const CombParams &p, double gap, DomainKind kind) {
    require_valid(p);
    const double eps = p.epsilon();
    const double l1 = p.l[0], l2 = p.l[1];

    RectilinearDomain d;
    d.kind = kind;
    d.l3 = p.l[2];
    d.layout.periods = p.n;
    d.layout.period = eps;
    d.layout.x1_local = {0.0, eps * p.zeta[0], eps * p.zeta[1], eps * p.zeta[2], eps * p.zeta[3],
                         eps};
    d.layout.x2_levels = {l1, l1 + gap, l2 - gap, l2};
    d.layout.row_regions = {Region::C1, Region::C2, Region::C3};
    d.layout.gap = p.gap();
    // finger sides; the period boundaries fall mid-channel
    d.layout.x1_corner_lines = {0, 1, 1, 1, 1, 0};
    // finger tips bound the middle layer
    d.layout.x2_corner_lines = {0, 1, 1, 0};
    if (kind == DomainKind::Rescaled)
        d.layout.row_scale = {p.gap(), p.d_eps(), p.gap()};
    else
        d.layout.row_scale = {1.0, 1.0, 1.0};

    const auto &y = d.layout.x2_levels;
    const Region rows[3] = {Region::C1, Region::C2, Region::C3};
    using Tag = BoundaryTag;
    auto seg = [&](Point a, Point b, Tag t, Point nu) { d.boundary.push_back({a, b, t, nu}); };

    for (int k = 0; k < p.n; ++k) {
        const double o = d.layout.period_origin(k);
        double a[6];
        for (int i = 0; i < 5; ++i)
            a[i] = o + d.layout.x1_local[i];
        a[5] = d.layout.period_origin(k + 1);

        for (int row = 0; row < 3; ++row)
            for (int i = 0; i < 5; ++i) {
                if (row == 0 && i == kStatorInterval)
                    continue;
                if (row == 1 && (i == kStatorInterval || i == kRotorInterval))
                    continue;
                if (row == 2 && i == kRotorInterval)
                    continue;
                d.rects.push_back({a[i], a[i + 1], y[row], y[row + 1], rows[row]});
            }

        // stator backbone top, except below the stator finger
        for (int i : {0, 1, 2, 4})
            seg({a[i], y[0]}, {a[i + 1], y[0]}, Tag::DirichletStator, {0.0, -1.0});
        // stator finger
        seg({a[3], y[0]}, {a[3], y[2]}, Tag::DirichletStator, {1.0, 0.0});
        seg({a[4], y[0]}, {a[4], y[2]}, Tag::DirichletStator, {-1.0, 0.0});
        seg({a[3], y[2]}, {a[4], y[2]}, Tag::DirichletStator, {0.0, -1.0});
        // rotor backbone underside, except above the rotor finger
        for (int i : {0, 2, 3, 4})
            seg({a[i], y[3]}, {a[i + 1], y[3]}, Tag::DirichletRotor, {0.0, 1.0});
        // rotor finger
        seg({a[1], y[1]}, {a[1], y[3]}, Tag::DirichletRotor, {1.0, 0.0});
        seg({a[2], y[1]}, {a[2], y[3]}, Tag::DirichletRotor, {-1.0, 0.0});
        seg({a[1], y[1]}, {a[2], y[1]}, Tag::DirichletRotor, {0.0, 1.0});
    }
    const double right = d.layout.width();
    seg({0.0, y[0]}, {0.0, y[3]}, Tag::NeumannLateral, {-1.0, 0.0});
    seg({right, y[0]}, {right, y[3]}, Tag::NeumannLateral, {1.0, 0.0});
    return d;
}

} // namespace

RectilinearDomain build_physical_domain(const CombParams &p) {
    return build_comb(p, p.gap(), DomainKind::Physical);
}

RectilinearDomain build_rescaled_domain(const CombParams &p) {
    return build_comb(p, 1.0, DomainKind::Rescaled);
}

RectilinearDomain strip_domain(double width, double x2min, double x2max, Region region) {
    if (!(width > 0.0) || !(x2max > x2min))
        throw ValidationError("strip needs positive width and height");
    RectilinearDomain d;
    d.kind = DomainKind::Custom;
    d.layout.periods = 1;
    d.layout.period = width;
    d.layout.x1_local = {0.0, width};
    d.layout.x2_levels = {x2min, x2max};
    d.layout.row_regions = {region};
    d.layout.row_scale = {1.0};
    d.rects.push_back({0.0, width, x2min, x2max, region});
    using Tag = BoundaryTag;
    d.boundary.push_back({{0.0, x2min}, {width, x2min}, Tag::DirichletStator, {0.0, -1.0}});
    d.boundary.push_back({{0.0, x2max}, {width, x2max}, Tag::DirichletRotor, {0.0, 1.0}});
    d.boundary.push_back({{0.0, x2min}, {0.0, x2max}, Tag::NeumannLateral, {-1.0, 0.0}});
    d.boundary.push_back({{width, x2min}, {width, x2max}, Tag::NeumannLateral, {1.0, 0.0}});
    return d;
}

RescaleMap::RescaleMap(const CombParams &p)
    : params_(p), d_eps_(p.d_eps()), gap_(p.gap()), rescaled_(build_rescaled_domain(p)),
      physical_(build_physical_domain(p)) {}

Region RescaleMap::region_rescaled(double x2) const {
    if (x2 < params_.l[0] + 1.0)
        return Region::C1;
    if (x2 > params_.l[1] - 1.0)
        return Region::C3;
    return Region::C2;
}

Region RescaleMap::region_physical(double x2) const {
    if (x2 < params_.l[0] + gap_)
        return Region::C1;
    if (x2 > params_.l[1] - gap_)
        return Region::C3;
    return Region::C2;
}

namespace {
double membership_tol(const CombParams &p) { return 1e-12 * std::max(p.L, p.l[2]); }
} // namespace

Point RescaleMap::forward(Point p) const {
    if (!rescaled_.contains(p, membership_tol(params_)))
        throw DomainError("point (" + std::to_string(p.x1) + ", " + std::to_string(p.x2) +
                          ") is not in the rescaled vacuum");
    const double l1 = params_.l[0], l2 = params_.l[1];
    switch (region_rescaled(p.x2)) {
    case Region::C1: return {p.x1, (p.x2 - l1) * gap_ + l1};
    case Region::C2: return {p.x1, d_eps_ * (p.x2 - l1 - 1.0) + l1 + gap_};
    case Region::C3: return {p.x1, (p.x2 - l2 + 1.0) * gap_ + l2 - gap_};
    }
    return p;
}

Point RescaleMap::inverse(Point p) const {
    if (!physical_.contains(p, membership_tol(params_)))
        throw DomainError("point (" + std::to_string(p.x1) + ", " + std::to_string(p.x2) +
                          ") is not in the physical vacuum");
    const double l1 = params_.l[0], l2 = params_.l[1];
    switch (region_physical(p.x2)) {
    case Region::C1: return {p.x1, (p.x2 - l1) / gap_ + l1};
    case Region::C2: return {p.x1, (p.x2 - l1 - gap_) / d_eps_ + l1 + 1.0};
    case Region::C3: return {p.x1, (p.x2 - l2 + gap_) / gap_ + l2 - 1.0};
    }
    return p;
}

} // namespace combdrive
