#pragma once

#include "combdrive/geometry.hpp"

#include <cstdint>
#include <vector>

namespace combdrive {

/// Cells per feature interval. `subdivide` splits every base cell into
/// subdivide x subdivide equal children, so meshes at levels 1, 2, 4 are
/// nested.
///
/// With `corner_cell` > 0 the x1 intervals and the middle rows start at
/// corner_cell * eps^alpha (physical length) next to every line carrying a
/// finger corner and grow by the grading ratio until they reach the uniform
/// size set by the cell counts, which then act as caps. With corner_cell = 0
/// a grading > 1 shrinks cells toward both interval ends instead.
///
/// The defaults keep cells near the corners close to square in the scaled
/// metric; coarser ramps let bilinear overshoot break 0 <= phi <= 1.
struct Refinement {
    int zeta_cells = 8;    // every x1 interval between feature lines
    int gap_cells = 4;     // C1 and C3 rows
    int middle_cells = 16; // C2 rows
    double zeta_grading = 1.3;
    double middle_grading = 1.1;
    double corner_cell = 0.25;
    int subdivide = 1;

    static Refinement uniform(int cells); // ungraded
    Refinement nested(int level) const;
};

enum class NodeClass : std::uint8_t { Free, DirichletRotor, DirichletStator, Exterior };

/// Tensor-product grid over the bounding box of a comb domain, snapped to
/// every feature line. Node (i, j) has index j * nodes_x1() + i; cell
/// (i, j) has index j * cells_x1() + i.
struct TensorMesh {
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<std::uint8_t> active;   // per cell
    std::vector<Region> cell_region;    // per cell
    std::vector<NodeClass> node_class;  // per node
    int periods = 1;
    int cells_per_period = 0;
    DomainKind kind = DomainKind::Custom;

    int nodes_x1() const { return static_cast<int>(x1.size()); }
    int nodes_x2() const { return static_cast<int>(x2.size()); }
    int cells_x1() const { return nodes_x1() - 1; }
    int cells_x2() const { return nodes_x2() - 1; }
    std::size_t node_count() const { return x1.size() * x2.size(); }
    std::size_t cell_count() const { return active.size(); }

    int node(int i, int j) const { return j * nodes_x1() + i; }
    int cell(int i, int j) const { return j * cells_x1() + i; }
    bool is_active(int i, int j) const {
        return i >= 0 && j >= 0 && i < cells_x1() && j < cells_x2() && active[cell(i, j)];
    }
    Point node_point(int i, int j) const { return {x1[i], x2[j]}; }

    /// Largest cell diameter.
    double h() const;
    double active_area() const;
    std::size_t count(NodeClass c) const;
};

constexpr std::size_t kDefaultNodeBudget = 2000000;

/// Meshes the domain. Throws BudgetError when the grid would exceed
/// `node_budget` nodes, ConsistencyError when a boundary node carries no tag.
TensorMesh generate_mesh(const RectilinearDomain &domain, const Refinement &refine,
                         std::size_t node_budget = kDefaultNodeBudget);

/// Classifies every node against the tagged boundary of `domain`: Dirichlet
/// nodes lie on rotor or stator segments (rotor wins on shared corners),
/// interior and lateral-Neumann nodes are free, nodes touching no active
/// cell are exterior.
std::vector<NodeClass> node_classification(const TensorMesh &mesh,
                                           const RectilinearDomain &domain);

} // namespace combdrive
