#include "combdrive/homogenized.hpp"

#include "combdrive/diagnostics.hpp"
#include "combdrive/errors.hpp"
#include "combdrive/quadrature.hpp"

#include <cmath>

namespace combdrive {

LimitProfiles::LimitProfiles(const CombParams &p) : p_(p) { require_valid(p); }

double LimitProfiles::frac(double y) { return y - std::floor(y); }

bool LimitProfiles::in_rotor(double y) const {
    y = frac(y);
    return y >= p_.zeta[0] && y < p_.zeta[1];
}

bool LimitProfiles::in_stator(double y) const {
    y = frac(y);
    return y >= p_.zeta[2] && y < p_.zeta[3];
}

double LimitProfiles::phi2(double y) const {
    const auto &z = p_.zeta;
    y = frac(y);
    const double wrap = z[0] - z[3] + 1.0;
    if (y <= z[0])
        return (y + 1.0 - z[3]) / wrap;
    if (y <= z[1])
        return 1.0;
    if (y <= z[2])
        return (y - z[2]) / (z[1] - z[2]);
    if (y <= z[3])
        return 0.0;
    return (y - z[3]) / wrap;
}

double LimitProfiles::dphi2(double y) const {
    const auto &z = p_.zeta;
    y = frac(y);
    const double wrap = z[0] - z[3] + 1.0;
    if (y < z[0] || y >= z[3])
        return 1.0 / wrap;
    if (y >= z[1] && y < z[2])
        return 1.0 / (z[1] - z[2]);
    return 0.0;
}

double LimitProfiles::phi1(double x2, double y) const { return in_rotor(y) ? x2 - p_.l[0] : 0.0; }
double LimitProfiles::dx2_phi1(double y) const { return in_rotor(y) ? 1.0 : 0.0; }
double LimitProfiles::phi3(double x2, double y) const {
    return in_stator(y) ? x2 + 1.0 - p_.l[1] : 1.0;
}
double LimitProfiles::dx2_phi3(double y) const { return in_stator(y) ? 1.0 : 0.0; }

namespace {
void require_regime(const CombParams &p) {
    require_valid(p);
    if (!p.in_proven_regime())
        throw RegimeError(regime_note(p));
}
} // namespace

double limit_force(const CombParams &p) {
    require_regime(p);
    return p.L * (p.meas_omega_a() + p.meas_omega_b());
}

double limit_energy(const CombParams &p) {
    require_regime(p);
    double e = p.L * p.meas_omega_a() + p.L * p.meas_omega_b();
    if (p.alpha == 2.0) {
        const auto &z = p.zeta;
        e += p.height() * p.L * (1.0 / (z[0] + 1.0 - z[3]) + 1.0 / (z[2] - z[1]));
    }
    return e;
}

WeakAverages weak_averages(const CombParams &p) {
    require_valid(p);
    WeakAverages w;
    const double ma = p.meas_omega_a(), mb = p.meas_omega_b();
    w.mean_phi_c2 = p.alpha == 2.0 ? 0.5 * (1.0 + ma - mb) : 0.0;
    w.mean_dx2_c1 = ma;
    w.mean_dx2_c3 = mb;
    const double l1 = p.l[0], l2 = p.l[1];
    w.mean_phi_c1 = [l1, ma](double x2) { return (x2 - l1) * ma; };
    w.mean_phi_c3 = [l2, mb](double x2) { return (x2 - l2) * mb + 1.0; };
    return w;
}

namespace {

int find_row(const TensorMesh &m, double level) {
    for (int j = 0; j < m.nodes_x2(); ++j)
        if (m.x2[j] == level)
            return j;
    throw ConsistencyError("layer interface is not a mesh line");
}

std::pair<int, int> region_rows(const TensorMesh &m, const CombParams &p, Region r) {
    const double l1 = p.l[0], l2 = p.l[1];
    switch (r) {
    case Region::C1: return {find_row(m, l1), find_row(m, l1 + 1.0)};
    case Region::C2: return {find_row(m, l1 + 1.0), find_row(m, l2 - 1.0)};
    case Region::C3: return {find_row(m, l2 - 1.0), find_row(m, l2)};
    }
    return {0, 0};
}

} // namespace

ExtendedField extend(const DiscreteField &field, const CombParams &p, Region region) {
    require_matching_mesh(field, p, DomainKind::Rescaled);
    const auto &m = *field.mesh;
    const LimitProfiles prof(p);
    const auto [j0, j1] = region_rows(m, p, region);
    ExtendedField e;
    e.mesh = field.mesh;
    e.region = region;
    e.row_begin = j0;
    e.row_end = j1 + 1;
    const double eps = p.epsilon();
    for (int j = j0; j <= j1; ++j)
        for (int i = 0; i < m.nodes_x1(); ++i) {
            double v = field.at(i, j);
            if (std::isnan(v)) {
                const double y = m.x1[i] / eps;
                const bool rotor_side = region != Region::C1 && prof.in_rotor(y);
                const bool stator_side = region != Region::C3 && prof.in_stator(y);
                if (rotor_side)
                    v = 1.0;
                else if (stator_side)
                    v = 0.0;
                else
                    throw ConsistencyError("exterior node outside every finger footprint");
            }
            e.values.push_back(v);
        }
    return e;
}

double ExtendedField::mean() const {
    const auto &m = *mesh;
    std::vector<double> parts;
    for (int j = row_begin; j + 1 < row_end; ++j)
        for (int i = 0; i < m.cells_x1(); ++i) {
            const double area = (m.x1[i + 1] - m.x1[i]) * (m.x2[j + 1] - m.x2[j]);
            parts.push_back(0.25 * area * (at(i, j) + at(i + 1, j) + at(i, j + 1) + at(i + 1, j + 1)));
        }
    const double total = (m.x1.back() - m.x1.front()) * (m.x2[row_end - 1] - m.x2[row_begin]);
    return deterministic_sum(parts) / total;
}

double ExtendedField::mean_dx2() const {
    const auto &m = *mesh;
    std::vector<double> parts;
    for (int j = row_begin; j + 1 < row_end; ++j)
        for (int i = 0; i < m.cells_x1(); ++i) {
            const double a = m.x1[i + 1] - m.x1[i];
            parts.push_back(0.5 * a * ((at(i, j + 1) + at(i + 1, j + 1)) - (at(i, j) + at(i + 1, j))));
        }
    const double total = (m.x1.back() - m.x1.front()) * (m.x2[row_end - 1] - m.x2[row_begin]);
    return deterministic_sum(parts) / total;
}

CorrectorNorms corrector_norms(const DiscreteField &field, const CombParams &p, int quad_order) {
    require_regime(p);
    require_matching_mesh(field, p, DomainKind::Rescaled);
    const auto &m = *field.mesh;
    const LimitProfiles prof(p);
    const auto q = gauss_rule(quad_order);
    const double eps = p.epsilon(), ea = p.gap(), eh = std::sqrt(ea);
    const bool critical = p.alpha == 2.0;

    std::array<std::vector<double>, 3> parts;
    for (int j = 0; j < m.cells_x2(); ++j)
        for (int i = 0; i < m.cells_x1(); ++i) {
            if (!m.is_active(i, j))
                continue;
            const double a = m.x1[i + 1] - m.x1[i], b = m.x2[j + 1] - m.x2[j];
            const Region r = m.cell_region[m.cell(i, j)];
            double s = 0.0;
            for (std::size_t qi = 0; qi < q.points.size(); ++qi) {
                const double y = (m.x1[i] + q.points[qi] * a) / eps;
                for (std::size_t qj = 0; qj < q.points.size(); ++qj) {
                    const double w = q.weights[qi] * q.weights[qj];
                    const auto g = field.gradient(i, j, q.points[qi], q.points[qj]);
                    double e1, e2;
                    switch (r) {
                    case Region::C1:
                        e1 = ea * g[0];
                        e2 = g[1] - prof.dx2_phi1(y);
                        break;
                    case Region::C3:
                        e1 = ea * g[0];
                        e2 = g[1] - prof.dx2_phi3(y);
                        break;
                    default:
                        e1 = eh * g[0] - (critical ? prof.dphi2(y) : 0.0);
                        e2 = eh * g[1];
                        break;
                    }
                    s += w * (e1 * e1 + e2 * e2);
                }
            }
            parts[static_cast<int>(r)].push_back(s * a * b);
        }
    return {deterministic_sum(parts[0]), deterministic_sum(parts[1]), deterministic_sum(parts[2])};
}

DiscreteAverages discrete_weak_averages(const DiscreteField &field, const CombParams &p) {
    DiscreteAverages d;
    const double scale = std::pow(p.epsilon(), 0.5 * (p.alpha - 2.0));
    d.avg_phi_c2 = scale * extend(field, p, Region::C2).mean();
    d.avg_dx2_c1 = extend(field, p, Region::C1).mean_dx2();
    d.avg_dx2_c3 = extend(field, p, Region::C3).mean_dx2();
    return d;
}

} // namespace combdrive
