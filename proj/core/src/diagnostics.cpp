#include "combdrive/diagnostics.hpp"

#include "combdrive/errors.hpp"
#include "combdrive/quadrature.hpp"

#include <cmath>
#include <map>

namespace combdrive {

std::string to_string(ForceMethod m) { return m == ForceMethod::Volume ? "VOLUME" : "BOUNDARY"; }

ForceResult make_force(double scaled, ForceMethod method, const PhysicsSettings &physics) {
    ForceResult r;
    r.scaled_integral = scaled;
    r.physical_force = -0.5 * physics.epsilon0 * physics.V * physics.V * scaled;
    r.method = method;
    r.epsilon0 = physics.epsilon0;
    r.V = physics.V;
    return r;
}

void require_matching_mesh(const DiscreteField &field, const CombParams &params,
                           DomainKind expected) {
    if (!field.mesh || field.values.size() != field.mesh->node_count())
        throw ConsistencyError("field values do not match their mesh");
    const auto &m = *field.mesh;
    if (m.kind != expected && m.kind != DomainKind::Custom)
        throw ConsistencyError(expected == DomainKind::Rescaled
                                   ? "expected a field on the rescaled vacuum"
                                   : "expected a field on the physical vacuum");
    const double tol = 1e-12 * std::max(params.L, params.l[2]);
    if (std::abs(m.x1.front()) > tol || std::abs(m.x1.back() - params.L) > tol ||
        std::abs(m.x2.front() - params.l[0]) > tol || std::abs(m.x2.back() - params.l[1]) > tol)
        throw ConsistencyError("mesh extent does not match the comb parameters");
}

ForceResult force_volume(const DiscreteField &field, const CutoffSpec &cutoff,
                         const CombParams &params, const PhysicsSettings &physics,
                         int quad_order) {
    require_matching_mesh(field, params, DomainKind::Rescaled);
    if (!(cutoff.params() == params))
        throw ConsistencyError("cutoff was built for different parameters");
    const auto &m = *field.mesh;
    const auto q = gauss_rule(quad_order);
    const double eps = params.epsilon(), e2a = std::pow(params.gap(), 2.0);
    const double d = params.d_eps(), dinv2 = 1.0 / (d * d);

    std::vector<double> per_cell;
    per_cell.reserve(m.cell_count());
    for (int j = 0; j < m.cells_x2(); ++j)
        for (int i = 0; i < m.cells_x1(); ++i) {
            if (!m.is_active(i, j))
                continue;
            const double a = m.x1[i + 1] - m.x1[i], b = m.x2[j + 1] - m.x2[j];
            const bool middle = m.cell_region[m.cell(i, j)] == Region::C2;
            double s = 0.0;
            for (std::size_t qi = 0; qi < q.points.size(); ++qi)
                for (std::size_t qj = 0; qj < q.points.size(); ++qj) {
                    const double u = q.points[qi], v = q.points[qj];
                    const double x1 = m.x1[i] + u * a, x2 = m.x2[j] + v * b;
                    const auto g = field.gradient(i, j, u, v);
                    const auto c = cutoff.grad_oscillated(x1, x2, eps);
                    const double g1 = g[0] * g[0], g2 = g[1] * g[1];
                    double f;
                    if (middle)
                        f = e2a * (-c[1] * (g1 - dinv2 * g2) + 2.0 * g[1] * c[0] * g[0]);
                    else
                        f = -c[1] * (e2a * g1 - g2) + 2.0 * e2a * g[1] * c[0] * g[0];
                    s += q.weights[qi] * q.weights[qj] * f;
                }
            per_cell.push_back(s * a * b);
        }
    return make_force(deterministic_sum(per_cell), ForceMethod::Volume, physics);
}

ForceResult force_boundary(const DiscreteField &field, const CombParams &params,
                           const PhysicsSettings &physics) {
    return force_boundary(field, build_physical_domain(params), params, physics);
}

ForceResult force_boundary(const DiscreteField &field, const RectilinearDomain &domain,
                           const CombParams &params, const PhysicsSettings &physics) {
    require_matching_mesh(field, params, DomainKind::Physical);
    const auto &m = *field.mesh;
    const double e2a = std::pow(params.gap(), 2.0);
    const auto q = gauss_rule(2);

    std::map<double, int> row_of;
    for (int j = 0; j < m.nodes_x2(); ++j)
        row_of[m.x2[j]] = j;
    std::map<double, int> col_of;
    for (int i = 0; i < m.nodes_x1(); ++i)
        col_of[m.x1[i]] = i;

    std::vector<double> per_face;
    for (const auto &seg : domain.boundary) {
        if (seg.tag != BoundaryTag::DirichletRotor || !seg.horizontal() || seg.normal.x2 == 0.0)
            continue;
        const auto jt = row_of.find(seg.a.x2);
        const auto i0 = col_of.find(std::min(seg.a.x1, seg.b.x1));
        const auto i1 = col_of.find(std::max(seg.a.x1, seg.b.x1));
        if (jt == row_of.end() || i0 == col_of.end() || i1 == col_of.end())
            throw ConsistencyError("rotor face is not aligned with the mesh");
        const int jf = jt->second;
        // vacuum lies opposite to the normal: below for nu2 = +1
        const bool below = seg.normal.x2 > 0.0;
        const int r1 = below ? jf - 1 : jf, r2 = below ? jf - 2 : jf + 1;
        for (int i = i0->second; i < i1->second; ++i) {
            if (!m.is_active(i, r1))
                continue;
            const double a = m.x1[i + 1] - m.x1[i];
            const double h1 = m.x2[r1 + 1] - m.x2[r1];
            const bool second = m.is_active(i, r2);
            const double h2 = second ? m.x2[r2 + 1] - m.x2[r2] : 0.0;
            const double tangential = (field.at(i + 1, jf) - field.at(i, jf)) / a;
            double s = 0.0;
            for (std::size_t k = 0; k < q.points.size(); ++k) {
                const double u = q.points[k];
                const double g1 = field.gradient(i, r1, u, 0.5)[1];
                double gn = g1;
                if (second) {
                    const double g2 = field.gradient(i, r2, u, 0.5)[1];
                    const double d1 = 0.5 * h1, d2 = h1 + 0.5 * h2;
                    gn = g1 + (g1 - g2) * d1 / (d2 - d1);
                }
                s += q.weights[k] * (tangential * tangential + gn * gn);
            }
            per_face.push_back(e2a * s * a * seg.normal.x2);
        }
    }
    return make_force(deterministic_sum(per_face), ForceMethod::Boundary, physics);
}

NormReport apriori_norms(const DiscreteField &field, const CombParams &params, int quad_order) {
    require_matching_mesh(field, params, DomainKind::Rescaled);
    const auto &m = *field.mesh;
    const auto q = gauss_rule(quad_order);
    const double ea = params.gap(), eh = std::sqrt(ea);
    const double scale_phi = std::pow(params.epsilon(), 0.5 * (params.alpha - 2.0));
    const double d = params.d_eps();

    enum { kDx1, kDx2, kGrad2, kPhi, kPhi2, kEnergy, kCount };
    std::array<std::vector<double>, kCount> parts;
    for (int j = 0; j < m.cells_x2(); ++j)
        for (int i = 0; i < m.cells_x1(); ++i) {
            if (!m.is_active(i, j))
                continue;
            const double area = (m.x1[i + 1] - m.x1[i]) * (m.x2[j + 1] - m.x2[j]);
            const bool middle = m.cell_region[m.cell(i, j)] == Region::C2;
            std::array<double, kCount> s{};
            for (std::size_t qi = 0; qi < q.points.size(); ++qi)
                for (std::size_t qj = 0; qj < q.points.size(); ++qj) {
                    const double u = q.points[qi], v = q.points[qj];
                    const double w = q.weights[qi] * q.weights[qj];
                    const auto g = field.gradient(i, j, u, v);
                    const double phi = field.interpolate(i, j, u, v);
                    s[kPhi] += w * phi * phi;
                    if (middle) {
                        const double d1 = eh * g[0], d2 = eh * g[1];
                        s[kGrad2] += w * (d1 * d1 + d2 * d2);
                        s[kPhi2] += w * scale_phi * scale_phi * phi * phi;
                        s[kEnergy] += w * (d * d1 * d1 + d2 * d2 / d);
                    } else {
                        const double d1 = ea * g[0];
                        s[kDx1] += w * d1 * d1;
                        s[kDx2] += w * g[1] * g[1];
                        s[kEnergy] += w * (d1 * d1 + g[1] * g[1]);
                    }
                }
            for (int k = 0; k < kCount; ++k)
                parts[k].push_back(s[k] * area);
        }
    NormReport r;
    r.norm_eps_dx1_c13 = std::sqrt(deterministic_sum(parts[kDx1]));
    r.norm_dx2_c13 = std::sqrt(deterministic_sum(parts[kDx2]));
    r.norm_grad_c2 = std::sqrt(deterministic_sum(parts[kGrad2]));
    r.norm_phi = std::sqrt(deterministic_sum(parts[kPhi]));
    r.norm_phi_scaled_c2 = std::sqrt(deterministic_sum(parts[kPhi2]));
    r.energy = deterministic_sum(parts[kEnergy]);
    return r;
}

} // namespace combdrive
