#pragma once

#include "combdrive/mesh.hpp"
#include "combdrive/sparse.hpp"

#include <array>
#include <iosfwd>
#include <memory>

namespace combdrive {

/// Diagonal diffusion (a1, a2) per layer.
struct AnisotropicCoeffs {
    struct Pair {
        double a1 = 1.0;
        double a2 = 1.0;
    };
    std::array<Pair, 3> by_region{}; // indexed by Region

    const Pair &operator[](Region r) const { return by_region[static_cast<int>(r)]; }

    /// Jacobian-weighted Laplace of the rescaled problem: gap layers get
    /// (eps^alpha, eps^-alpha), the middle layer (D, 1/D).
    static AnisotropicCoeffs rescaled(const CombParams &p);
    /// Plain Laplace, (1, 1) everywhere.
    static AnisotropicCoeffs physical();
};

/// Closed-form bilinear stiffness of an a x b rectangle with coefficients
/// (a1, a2); local node order (0,0), (1,0), (1,1), (0,1).
std::array<std::array<double, 4>, 4> element_stiffness(double a, double b, double a1, double a2);

/// Linear system over the free nodes after Dirichlet elimination.
struct SparseSystem {
    std::shared_ptr<const TensorMesh> mesh;
    AnisotropicCoeffs coeffs;
    CsrMatrix A;
    std::vector<double> rhs;
    std::vector<long> dof_of_node; // -1 for Dirichlet and exterior nodes
    std::vector<std::size_t> node_of_dof;
    std::vector<double> dirichlet; // per node: boundary value, NaN when not Dirichlet
};

SparseSystem assemble(std::shared_ptr<const TensorMesh> mesh, const AnisotropicCoeffs &coeffs);

/// Stiffness over every node, before elimination (rows of exterior nodes empty).
CsrMatrix assemble_full_stiffness(const TensorMesh &mesh, const AnisotropicCoeffs &coeffs);

/// Nodal potential. Exterior nodes hold NaN.
struct DiscreteField {
    std::shared_ptr<const TensorMesh> mesh;
    std::vector<double> values;
    SolveStats stats;

    double at(int i, int j) const { return values[mesh->node(i, j)]; }
    /// Bilinear gradient in cell (i, j) at local coordinates (s, t) in [0,1]^2.
    std::array<double, 2> gradient(int i, int j, double s, double t) const;
    /// Bilinear interpolation in cell (i, j).
    double interpolate(int i, int j, double s, double t) const;
    double min_value() const;
    double max_value() const;
};

DiscreteField solve(const SparseSystem &system, const SolverSettings &settings = {});

/// Discrete energy x' K x with the coefficients the system was built with.
double discrete_energy(const DiscreteField &field, const AnisotropicCoeffs &coeffs);

/// geometry -> mesh -> assemble -> solve on the rescaled vacuum.
DiscreteField solve_rescaled(const CombParams &p, const Refinement &refine,
                             const SolverSettings &settings = {},
                             std::size_t node_budget = kDefaultNodeBudget);
/// Same pipeline on the physical vacuum with the plain Laplacian.
DiscreteField solve_physical(const CombParams &p, const Refinement &refine,
                             const SolverSettings &settings = {},
                             std::size_t node_budget = kDefaultNodeBudget);

/// CSV `x1,x2,value` over non-exterior nodes.
void write_field_csv(std::ostream &os, const DiscreteField &field);

} // namespace combdrive
