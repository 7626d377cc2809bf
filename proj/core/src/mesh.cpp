#include "combdrive/mesh.hpp"

#include "combdrive/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace combdrive {

Refinement Refinement::uniform(int cells) {
    Refinement r;
    r.zeta_cells = r.gap_cells = r.middle_cells = cells;
    r.zeta_grading = r.middle_grading = 1.0;
    r.corner_cell = 0.0;
    return r;
}

Refinement Refinement::nested(int level) const {
    Refinement r = *this;
    r.subdivide = subdivide * level;
    return r;
}

double TensorMesh::h() const {
    double dx = 0.0, dy = 0.0;
    for (int i = 0; i + 1 < nodes_x1(); ++i)
        dx = std::max(dx, x1[i + 1] - x1[i]);
    for (int j = 0; j + 1 < nodes_x2(); ++j)
        dy = std::max(dy, x2[j + 1] - x2[j]);
    return std::hypot(dx, dy);
}

double TensorMesh::active_area() const {
    double s = 0.0;
    for (int j = 0; j < cells_x2(); ++j)
        for (int i = 0; i < cells_x1(); ++i)
            if (active[cell(i, j)])
                s += (x1[i + 1] - x1[i]) * (x2[j + 1] - x2[j]);
    return s;
}

std::size_t TensorMesh::count(NodeClass c) const {
    return static_cast<std::size_t>(std::count(node_class.begin(), node_class.end(), c));
}

namespace {

// Relative base-cell sizes of one interval (unnormalised).
// Without a corner size, cells grow by `grading` from both ends toward the
// middle. With a corner size h0 (fraction of the interval), cells start at h0
// at the flagged ends and grow by `grading` until they reach 1/cells; the
// rest is filled uniformly at that cap.
std::vector<double> base_sizes(int cells, double grading, double h0, bool left, bool right) {
    std::vector<double> size;
    const double cap = 1.0 / cells;
    const int ends = int(left) + int(right);
    if (h0 <= 0.0 || h0 >= cap || grading == 1.0 || ends == 0) {
        for (int i = 0; i < cells; ++i)
            size.push_back(std::pow(grading, std::min(i, cells - 1 - i)));
        return size;
    }
    std::vector<double> ramp;
    double acc = 0.0;
    for (double s = h0; s < cap && ends * (acc + s) <= 1.0 - cap; s *= grading) {
        ramp.push_back(s);
        acc += s;
    }
    const double middle = 1.0 - ends * acc;
    const int m = std::max(1, static_cast<int>(std::ceil(middle / cap - 1e-9)));
    if (left)
        size = ramp;
    for (int i = 0; i < m; ++i)
        size.push_back(middle / m);
    if (right)
        size.insert(size.end(), ramp.rbegin(), ramp.rend());
    return size;
}

// Fractions 0 = t_0 < ... < t_N = 1 of one interval; every base cell split
// into `subdivide` equal children.
std::vector<double> interval_fractions(int cells, double grading, double h0, bool left,
                                       bool right, int subdivide) {
    if (cells < 1 || subdivide < 1)
        throw ValidationError("refinement counts must be >= 1");
    if (!(grading >= 1.0))
        throw ValidationError("grading ratio must be >= 1");
    const auto size = base_sizes(cells, grading, h0, left, right);
    double total = 0.0;
    for (double s : size)
        total += s;
    std::vector<double> t{0.0};
    double acc = 0.0;
    const std::size_t nb = size.size();
    for (std::size_t i = 0; i < nb; ++i) {
        const double lo = acc / total;
        acc += size[i];
        const double hi = i + 1 == nb ? 1.0 : acc / total;
        for (int q = 1; q <= subdivide; ++q)
            t.push_back(q == subdivide ? hi : lo + (hi - lo) * q / subdivide);
    }
    return t;
}

// Subdivides consecutive breakpoints; the final breakpoint is not appended.
// `corner[f]` is the absolute corner cell size of interval f (0 = none);
// `is_corner[k]` flags breakpoints that carry reentrant corners.
std::vector<double> subdivide_levels(const std::vector<double> &levels,
                                     const std::vector<int> &cells,
                                     const std::vector<double> &grading,
                                     const std::vector<double> &corner,
                                     const std::vector<std::uint8_t> &is_corner, int subdivide) {
    std::vector<double> out;
    for (std::size_t f = 0; f + 1 < levels.size(); ++f) {
        const double a = levels[f], b = levels[f + 1];
        const auto t = interval_fractions(cells[f], grading[f], corner[f] / (b - a),
                                          is_corner[f] != 0, is_corner[f + 1] != 0, subdivide);
        for (std::size_t q = 0; q + 1 < t.size(); ++q)
            out.push_back(q == 0 ? a : a + (b - a) * t[q]);
    }
    return out;
}

} // namespace

TensorMesh generate_mesh(const RectilinearDomain &domain, const Refinement &refine,
                         std::size_t node_budget) {
    const auto &lay = domain.layout;
    if (lay.x1_local.size() < 2 || lay.x2_levels.size() < 2 ||
        lay.row_regions.size() + 1 != lay.x2_levels.size())
        throw ConsistencyError("domain layout is incomplete");

    if (refine.corner_cell < 0.0)
        throw ValidationError("corner cell size must be >= 0");
    const double h0 = refine.corner_cell * lay.gap;
    const std::size_t x1_intervals = lay.x1_local.size() - 1;
    std::vector<int> x1_cells(x1_intervals, refine.zeta_cells);
    std::vector<double> x1_grading(x1_intervals, refine.zeta_grading);
    std::vector<double> x1_corner(x1_intervals, h0);
    std::vector<int> x2_cells;
    std::vector<double> x2_grading, x2_corner;
    for (std::size_t f = 0; f < lay.row_regions.size(); ++f) {
        const bool middle = lay.row_regions[f] == Region::C2;
        const double scale = f < lay.row_scale.size() ? lay.row_scale[f] : 1.0;
        x2_cells.push_back(middle ? refine.middle_cells : refine.gap_cells);
        x2_grading.push_back(middle ? refine.middle_grading : 1.0);
        x2_corner.push_back(middle ? h0 / scale : 0.0);
    }

    // breakpoints first: their count is what the budget limits
    auto flags = [](const std::vector<std::uint8_t> &given, std::size_t n) {
        return given.size() == n ? given : std::vector<std::uint8_t>(n, 1);
    };
    const auto local = subdivide_levels(lay.x1_local, x1_cells, x1_grading, x1_corner,
                                        flags(lay.x1_corner_lines, lay.x1_local.size()),
                                        refine.subdivide);
    auto x2 = subdivide_levels(lay.x2_levels, x2_cells, x2_grading, x2_corner,
                               flags(lay.x2_corner_lines, lay.x2_levels.size()),
                               refine.subdivide);
    x2.push_back(lay.x2_levels.back());
    const std::size_t per_period = local.size();
    const std::size_t required = (per_period * lay.periods + 1) * x2.size();
    if (required > node_budget)
        throw BudgetError(required, node_budget);

    TensorMesh m;
    m.kind = domain.kind;
    m.periods = lay.periods;
    m.cells_per_period = static_cast<int>(per_period);

    m.x1.reserve(per_period * lay.periods + 1);
    for (int k = 0; k < lay.periods; ++k) {
        const double o = lay.period_origin(k);
        for (double t : local)
            m.x1.push_back(o + t);
    }
    m.x1.push_back(lay.width());

    m.x2 = std::move(x2);

    // Rectangles bucketed by period so activity does not depend on input order.
    std::vector<std::vector<const Rect *>> bucket(lay.periods);
    for (const auto &r : domain.rects) {
        const double c = 0.5 * (r.x1min + r.x1max);
        int k = static_cast<int>(std::floor(c / lay.period));
        k = std::clamp(k, 0, lay.periods - 1);
        bucket[k].push_back(&r);
    }

    const int nc1 = m.cells_x1(), nc2 = m.cells_x2();
    m.active.assign(static_cast<std::size_t>(nc1) * nc2, 0);
    m.cell_region.assign(m.active.size(), Region::C2);
    std::vector<Region> row_region(nc2);
    for (int j = 0, f = 0; j < nc2; ++j) {
        const double c = 0.5 * (m.x2[j] + m.x2[j + 1]);
        while (f + 1 < static_cast<int>(lay.row_regions.size()) && c > lay.x2_levels[f + 1])
            ++f;
        row_region[j] = lay.row_regions[f];
    }
    for (int j = 0; j < nc2; ++j) {
        for (int i = 0; i < nc1; ++i) {
            const Point c{0.5 * (m.x1[i] + m.x1[i + 1]), 0.5 * (m.x2[j] + m.x2[j + 1])};
            const int k = std::min(i / m.cells_per_period, lay.periods - 1);
            const int idx = m.cell(i, j);
            m.cell_region[idx] = row_region[j];
            for (const Rect *r : bucket[k])
                if (r->contains(c)) {
                    m.active[idx] = 1;
                    m.cell_region[idx] = r->region;
                    break;
                }
        }
    }

    m.node_class = node_classification(m, domain);
    return m;
}

std::vector<NodeClass> node_classification(const TensorMesh &m, const RectilinearDomain &domain) {
    struct Span {
        double lo, hi;
        BoundaryTag tag;
    };
    std::map<double, std::vector<Span>> horizontal, vertical;
    for (const auto &s : domain.boundary) {
        if (s.horizontal())
            horizontal[s.a.x2].push_back(
                {std::min(s.a.x1, s.b.x1), std::max(s.a.x1, s.b.x1), s.tag});
        else
            vertical[s.a.x1].push_back(
                {std::min(s.a.x2, s.b.x2), std::max(s.a.x2, s.b.x2), s.tag});
    }

    std::vector<NodeClass> cls(m.node_count(), NodeClass::Exterior);
    for (int j = 0; j < m.nodes_x2(); ++j) {
        for (int i = 0; i < m.nodes_x1(); ++i) {
            const bool a00 = m.is_active(i - 1, j - 1), a10 = m.is_active(i, j - 1);
            const bool a01 = m.is_active(i - 1, j), a11 = m.is_active(i, j);
            const int touching = a00 + a10 + a01 + a11;
            auto &c = cls[m.node(i, j)];
            if (touching == 0)
                continue;
            if (touching == 4) {
                c = NodeClass::Free;
                continue;
            }
            bool rotor = false, stator = false, lateral = false;
            auto mark = [&](const std::map<double, std::vector<Span>> &lines, double key,
                            double along) {
                auto it = lines.find(key);
                if (it == lines.end())
                    return;
                for (const auto &sp : it->second)
                    if (along >= sp.lo && along <= sp.hi) {
                        rotor |= sp.tag == BoundaryTag::DirichletRotor;
                        stator |= sp.tag == BoundaryTag::DirichletStator;
                        lateral |= sp.tag == BoundaryTag::NeumannLateral;
                    }
            };
            mark(horizontal, m.x2[j], m.x1[i]);
            mark(vertical, m.x1[i], m.x2[j]);
            if (rotor)
                c = NodeClass::DirichletRotor;
            else if (stator)
                c = NodeClass::DirichletStator;
            else if (lateral)
                c = NodeClass::Free;
            else
                throw ConsistencyError("untagged boundary node at (" + std::to_string(m.x1[i]) +
                                       ", " + std::to_string(m.x2[j]) + ")");
        }
    }
    return cls;
}

} // namespace combdrive
