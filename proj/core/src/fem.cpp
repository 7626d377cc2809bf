#include "combdrive/fem.hpp"

#include "combdrive/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace combdrive {

AnisotropicCoeffs AnisotropicCoeffs::rescaled(const CombParams &p) {
    require_valid(p);
    const double g = p.gap(), d = p.d_eps();
    AnisotropicCoeffs c;
    c.by_region[static_cast<int>(Region::C1)] = {g, 1.0 / g};
    c.by_region[static_cast<int>(Region::C2)] = {d, 1.0 / d};
    c.by_region[static_cast<int>(Region::C3)] = {g, 1.0 / g};
    return c;
}

AnisotropicCoeffs AnisotropicCoeffs::physical() { return {}; }

std::array<std::array<double, 4>, 4> element_stiffness(double a, double b, double a1, double a2) {
    static constexpr double kx[4][4] = {
        {2, -2, -1, 1}, {-2, 2, 1, -1}, {-1, 1, 2, -2}, {1, -1, -2, 2}};
    static constexpr double ky[4][4] = {
        {2, 1, -1, -2}, {1, 2, -2, -1}, {-1, -2, 2, 1}, {-2, -1, 1, 2}};
    const double cx = a1 * (b / a) / 6.0, cy = a2 * (a / b) / 6.0;
    std::array<std::array<double, 4>, 4> k{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            k[r][c] = cx * kx[r][c] + cy * ky[r][c];
    return k;
}

namespace {

constexpr int kLocalDi[4] = {0, 1, 1, 0};
constexpr int kLocalDj[4] = {0, 0, 1, 1};

void check_inputs(const TensorMesh &m, const AnisotropicCoeffs &coeffs) {
    for (const auto &pr : coeffs.by_region)
        if (!(pr.a1 > 0.0) || !(pr.a2 > 0.0) || !std::isfinite(pr.a1) || !std::isfinite(pr.a2))
            throw AssemblyError("diffusion coefficients must be positive and finite");
    if (m.active.size() != static_cast<std::size_t>(m.cells_x1()) * m.cells_x2() ||
        m.cell_region.size() != m.active.size() || m.node_class.size() != m.node_count())
        throw AssemblyError("mesh arrays are inconsistent with its breakpoints");
}

// 3x3 stencil row of node (i, j): entry [dj+1][di+1] couples to node (i+di, j+dj).
using Stencil = std::array<std::array<double, 3>, 3>;

Stencil node_stencil(const TensorMesh &m, const AnisotropicCoeffs &coeffs, int i, int j,
                     int &touching) {
    Stencil s{};
    touching = 0;
    for (int cj = j - 1; cj <= j; ++cj)
        for (int ci = i - 1; ci <= i; ++ci) {
            if (!m.is_active(ci, cj))
                continue;
            ++touching;
            const auto &pr = coeffs[m.cell_region[m.cell(ci, cj)]];
            const auto k = element_stiffness(m.x1[ci + 1] - m.x1[ci], m.x2[cj + 1] - m.x2[cj],
                                             pr.a1, pr.a2);
            int self = 0;
            for (int q = 0; q < 4; ++q)
                if (ci + kLocalDi[q] == i && cj + kLocalDj[q] == j)
                    self = q;
            for (int q = 0; q < 4; ++q)
                s[cj + kLocalDj[q] - j + 1][ci + kLocalDi[q] - i + 1] += k[self][q];
        }
    return s;
}

double boundary_value(NodeClass c) {
    switch (c) {
    case NodeClass::DirichletRotor: return 1.0;
    case NodeClass::DirichletStator: return 0.0;
    default: return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

SparseSystem assemble(std::shared_ptr<const TensorMesh> mesh, const AnisotropicCoeffs &coeffs) {
    if (!mesh)
        throw AssemblyError("no mesh");
    const TensorMesh &m = *mesh;
    check_inputs(m, coeffs);

    SparseSystem sys;
    sys.mesh = mesh;
    sys.coeffs = coeffs;
    const std::size_t nn = m.node_count();
    sys.dof_of_node.assign(nn, -1);
    sys.dirichlet.resize(nn);
    for (std::size_t v = 0; v < nn; ++v) {
        sys.dirichlet[v] = boundary_value(m.node_class[v]);
        if (m.node_class[v] == NodeClass::Free) {
            sys.dof_of_node[v] = static_cast<long>(sys.node_of_dof.size());
            sys.node_of_dof.push_back(v);
        }
    }

    const std::size_t nd = sys.node_of_dof.size();
    CsrMatrix &A = sys.A;
    A.rows = A.cols = nd;
    A.row_ptr.assign(1, 0);
    A.col.reserve(9 * nd);
    A.val.reserve(9 * nd);
    sys.rhs.assign(nd, 0.0);
    const int nx = m.nodes_x1();
    for (std::size_t r = 0; r < nd; ++r) {
        const int v = static_cast<int>(sys.node_of_dof[r]);
        const int i = v % nx, j = v / nx;
        int touching = 0;
        const Stencil s = node_stencil(m, coeffs, i, j, touching);
        if (touching == 0)
            throw AssemblyError("free node touches no active cell");
        // stencil traversal in (dj, di) order gives increasing node and dof index
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                const int ii = i + di, jj = j + dj;
                if (ii < 0 || jj < 0 || ii >= nx || jj >= m.nodes_x2())
                    continue;
                const double k = s[dj + 1][di + 1];
                const bool coupled = k != 0.0 || (di == 0 && dj == 0);
                if (!coupled)
                    continue;
                const int w = m.node(ii, jj);
                const long d = sys.dof_of_node[w];
                if (d >= 0) {
                    A.col.push_back(static_cast<std::size_t>(d));
                    A.val.push_back(k);
                } else {
                    const double g = sys.dirichlet[w];
                    if (std::isnan(g))
                        throw AssemblyError("free node couples to an exterior node");
                    sys.rhs[r] -= k * g;
                }
            }
        A.row_ptr.push_back(A.col.size());
    }
    return sys;
}

CsrMatrix assemble_full_stiffness(const TensorMesh &m, const AnisotropicCoeffs &coeffs) {
    check_inputs(m, coeffs);
    CsrMatrix A;
    A.rows = A.cols = m.node_count();
    const int nx = m.nodes_x1();
    for (int j = 0; j < m.nodes_x2(); ++j)
        for (int i = 0; i < nx; ++i) {
            int touching = 0;
            const Stencil s = node_stencil(m, coeffs, i, j, touching);
            if (touching > 0)
                for (int dj = -1; dj <= 1; ++dj)
                    for (int di = -1; di <= 1; ++di) {
                        const int ii = i + di, jj = j + dj;
                        if (ii < 0 || jj < 0 || ii >= nx || jj >= m.nodes_x2())
                            continue;
                        const double k = s[dj + 1][di + 1];
                        if (k == 0.0 && (di != 0 || dj != 0))
                            continue;
                        A.col.push_back(static_cast<std::size_t>(m.node(ii, jj)));
                        A.val.push_back(k);
                    }
            A.row_ptr.push_back(A.col.size());
        }
    return A;
}

std::array<double, 2> DiscreteField::gradient(int i, int j, double s, double t) const {
    const double v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1), v01 = at(i, j + 1);
    const double a = mesh->x1[i + 1] - mesh->x1[i], b = mesh->x2[j + 1] - mesh->x2[j];
    return {((1.0 - t) * (v10 - v00) + t * (v11 - v01)) / a,
            ((1.0 - s) * (v01 - v00) + s * (v11 - v10)) / b};
}

double DiscreteField::interpolate(int i, int j, double s, double t) const {
    return (1.0 - s) * (1.0 - t) * at(i, j) + s * (1.0 - t) * at(i + 1, j) +
           s * t * at(i + 1, j + 1) + (1.0 - s) * t * at(i, j + 1);
}

double DiscreteField::min_value() const {
    double v = std::numeric_limits<double>::infinity();
    for (double x : values)
        if (!std::isnan(x))
            v = std::min(v, x);
    return v;
}

double DiscreteField::max_value() const {
    double v = -std::numeric_limits<double>::infinity();
    for (double x : values)
        if (!std::isnan(x))
            v = std::max(v, x);
    return v;
}

DiscreteField solve(const SparseSystem &sys, const SolverSettings &settings) {
    std::vector<double> x(sys.A.rows, 0.0);
    DiscreteField f;
    f.mesh = sys.mesh;
    f.stats = pcg(sys.A, sys.rhs, x, settings);
    f.values = sys.dirichlet;
    for (std::size_t d = 0; d < x.size(); ++d)
        f.values[sys.node_of_dof[d]] = x[d];
    return f;
}

double discrete_energy(const DiscreteField &field, const AnisotropicCoeffs &coeffs) {
    const CsrMatrix K = assemble_full_stiffness(*field.mesh, coeffs);
    std::vector<double> x = field.values;
    for (double &v : x)
        if (std::isnan(v))
            v = 0.0;
    std::vector<double> y;
    K.multiply(x, y);
    return deterministic_dot(x, y);
}

DiscreteField solve_rescaled(const CombParams &p, const Refinement &refine,
                             const SolverSettings &settings, std::size_t node_budget) {
    auto mesh = std::make_shared<const TensorMesh>(
        generate_mesh(build_rescaled_domain(p), refine, node_budget));
    return solve(assemble(mesh, AnisotropicCoeffs::rescaled(p)), settings);
}

DiscreteField solve_physical(const CombParams &p, const Refinement &refine,
                             const SolverSettings &settings, std::size_t node_budget) {
    auto mesh = std::make_shared<const TensorMesh>(
        generate_mesh(build_physical_domain(p), refine, node_budget));
    return solve(assemble(mesh, AnisotropicCoeffs::physical()), settings);
}

void write_field_csv(std::ostream &os, const DiscreteField &field) {
    const auto &m = *field.mesh;
    char buf[96];
    os << "x1,x2,value\n";
    for (int j = 0; j < m.nodes_x2(); ++j)
        for (int i = 0; i < m.nodes_x1(); ++i) {
            const double v = field.at(i, j);
            if (std::isnan(v))
                continue;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", m.x1[i], m.x2[j], v);
            os << buf;
        }
}

} // namespace combdrive
