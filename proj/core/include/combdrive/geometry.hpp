#pragma once

#include "combdrive/params.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace combdrive {

struct Point {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Horizontal layer of the vacuum: lower gap, middle channel, upper gap.
enum class Region { C1, C2, C3 };

enum class BoundaryTag { DirichletRotor, DirichletStator, NeumannLateral };

std::string_view to_string(Region r);
std::string_view to_string(BoundaryTag t);

struct Rect {
    double x1min = 0.0, x1max = 0.0, x2min = 0.0, x2max = 0.0;
    Region region = Region::C2;

    double area() const { return (x1max - x1min) * (x2max - x2min); }
    bool contains(Point p, double tol = 0.0) const {
        return p.x1 >= x1min - tol && p.x1 <= x1max + tol && p.x2 >= x2min - tol &&
               p.x2 <= x2max + tol;
    }
};

/// Axis-aligned piece of the vacuum boundary. The normal points out of the
/// vacuum into the electrode (or out of the comb on the lateral sides).
struct BoundarySegment {
    Point a, b;
    BoundaryTag tag = BoundaryTag::NeumannLateral;
    Point normal;

    double length() const;
    bool horizontal() const { return a.x2 == b.x2; }
    /// Dirichlet datum: 1 on the rotor, 0 on the stator, none on Neumann sides.
    std::optional<double> dirichlet_value() const;
};

/// Tensor structure shared by every rectangle of a comb domain: `periods`
/// copies of the local x1 breakpoints (offsets within one period, including
/// 0 and the period width) and the horizontal levels with their regions.
struct DomainLayout {
    int periods = 1;
    double period = 1.0;
    std::vector<double> x1_local;
    std::vector<double> x2_levels;
    std::vector<Region> row_regions; // size x2_levels.size() - 1
    std::vector<double> row_scale;   // physical length per coordinate unit, per row
    double gap = 0.0;                // physical rotor/stator gap, 0 when there is none
    // breakpoints that carry reentrant finger corners (empty: all of them)
    std::vector<std::uint8_t> x1_corner_lines;
    std::vector<std::uint8_t> x2_corner_lines;

    double period_origin(int k) const { return period * k; }
    double width() const { return period_origin(periods); }
};

enum class DomainKind { Physical, Rescaled, Custom };

/// Vacuum as a union of closed axis-aligned rectangles with disjoint interiors.
struct RectilinearDomain {
    DomainKind kind = DomainKind::Custom;
    std::vector<Rect> rects;
    std::vector<BoundarySegment> boundary;
    DomainLayout layout;
    double l3 = 0.0; // rotor backbone top; metadata only, never meshed

    double area() const;
    double area(Region r) const;
    double boundary_length() const;
    double boundary_length(BoundaryTag t) const;
    bool contains(Point p, double tol = 0.0) const;
};

/// Physical vacuum with gaps of thickness eps^alpha.
RectilinearDomain build_physical_domain(const CombParams &p);

/// Rescaled vacuum with unit-thickness gap layers (alpha = 0 geometry at the same eps).
RectilinearDomain build_rescaled_domain(const CombParams &p);

/// Fingerless strip ]0,width[ x ]x2min,x2max[: rotor on top, stator at the
/// bottom, lateral Neumann sides. Used for exactness fixtures.
RectilinearDomain strip_domain(double width, double x2min, double x2max,
                               Region region = Region::C2);

/// Piecewise-affine map from the rescaled vacuum onto the physical one.
/// Each layer is stretched vertically; x1 is untouched.
class RescaleMap {
public:
    explicit RescaleMap(const CombParams &p);

    const CombParams &params() const { return params_; }
    double d_eps() const { return d_eps_; }

    Point forward(Point p) const;
    Point inverse(Point p) const;

    /// Region of a rescaled point (C1 below l1+1, C3 above l2-1).
    Region region_rescaled(double x2) const;
    Region region_physical(double x2) const;

private:
    CombParams params_;
    double d_eps_;
    double gap_;
    RectilinearDomain rescaled_;
    RectilinearDomain physical_;
};

} // namespace combdrive
