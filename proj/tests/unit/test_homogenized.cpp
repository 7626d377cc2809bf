#include "doctest.h"

#include "combdrive/errors.hpp"
#include "combdrive/homogenized.hpp"

#include <cmath>
#include <memory>

using namespace combdrive;

namespace {

// Integral of f over [0,1] by the midpoint rule on pieces split at the
// breakpoints; exact for functions constant on each piece.
template <class F> double piecewise_integral(const std::array<double, 4> &z, F f, int sub = 64) {
    const double b[6] = {0.0, z[0], z[1], z[2], z[3], 1.0};
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
        const double h = (b[k + 1] - b[k]) / sub;
        for (int i = 0; i < sub; ++i)
            s += h * f(b[k] + (i + 0.5) * h);
    }
    return s;
}

CombParams skewed() {
    CombParams p;
    p.zeta = {0.1, 0.35, 0.5, 0.85};
    p.L = 2.0;
    p.l = {0.5, 4.0, 6.0};
    return p;
}

} // namespace

TEST_SUITE("homogenized") {
TEST_CASE("reference limits") {
    CombParams p;
    CHECK(limit_force(p) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(limit_energy(p) == doctest::Approx(22.9).epsilon(1e-14));
    p.alpha = 3.0;
    CHECK(limit_force(p) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(limit_energy(p) == doctest::Approx(0.4).epsilon(1e-14));
    // independent of n
    p.n = 3;
    CHECK(limit_force(p) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("energy limit equals the integral of the limit profiles") {
    for (double alpha : {2.0, 2.5}) {
        CombParams p = skewed();
        p.alpha = alpha;
        const LimitProfiles prof(p);
        const double c1 = p.L * piecewise_integral(p.zeta, [&](double y) {
            const double d = prof.dx2_phi1(y);
            return d * d;
        });
        const double c3 = p.L * piecewise_integral(p.zeta, [&](double y) {
            const double d = prof.dx2_phi3(y);
            return d * d;
        });
        const double c2 = alpha == 2.0 ? p.height() * p.L * piecewise_integral(p.zeta, [&](double y) {
            const double d = prof.dphi2(y);
            return d * d;
        })
                                       : 0.0;
        CAPTURE(alpha);
        CHECK(limit_energy(p) == doctest::Approx(c1 + c2 + c3).epsilon(1e-12));
        CHECK(limit_force(p) == doctest::Approx(c1 + c3).epsilon(1e-12));
    }
}

TEST_CASE("limits are symmetric under exchanging the electrodes") {
    CombParams p = skewed();
    CombParams q = p;
    q.zeta = {1 - p.zeta[3], 1 - p.zeta[2], 1 - p.zeta[1], 1 - p.zeta[0]};
    CHECK(limit_energy(q) == doctest::Approx(limit_energy(p)).epsilon(1e-14));
    CHECK(limit_force(q) == doctest::Approx(limit_force(p)).epsilon(1e-14));
    CHECK(weak_averages(q).mean_phi_c2 == doctest::Approx(1.0 - weak_averages(p).mean_phi_c2));
}

TEST_CASE("limits need alpha >= 2") {
    CombParams p;
    p.alpha = 1.5;
    CHECK_THROWS_AS(limit_force(p), RegimeError);
    CHECK_THROWS_AS(limit_energy(p), RegimeError);
    CHECK_NOTHROW(weak_averages(p));
    p.alpha = 2.0;
    p.n = 1;
    const auto f = solve_rescaled(p, Refinement::uniform(1));
    p.alpha = 1.5;
    CHECK_THROWS_AS(corrector_norms(f, p), RegimeError);
}

TEST_CASE("middle profile: values, continuity, periodicity, piecewise affine") {
    const CombParams p = skewed();
    const LimitProfiles prof(p);
    const auto &z = p.zeta;
    CHECK(prof.phi2(0.5 * (z[0] + z[1])) == 1.0);
    CHECK(prof.phi2(0.5 * (z[2] + z[3])) == 0.0);
    for (double b : {z[0], z[1], z[2], z[3], 0.0, 1.0}) {
        CHECK(prof.phi2(b - 1e-12) == doctest::Approx(prof.phi2(b + 1e-12)).epsilon(1e-9));
    }
    for (double y = 0.01; y < 1.0; y += 0.0731) {
        CHECK(prof.phi2(y + 2.0) == doctest::Approx(prof.phi2(y)).epsilon(1e-14));
        CHECK(prof.phi2(y) >= 0.0);
        CHECK(prof.phi2(y) <= 1.0);
        // zero second difference away from breakpoints
        const double h = 1e-4;
        bool near = false;
        for (double b : {0.0, z[0], z[1], z[2], z[3], 1.0})
            near = near || std::abs(y - b) < 2 * h;
        if (!near) {
            CHECK(std::abs(prof.phi2(y + h) - 2 * prof.phi2(y) + prof.phi2(y - h)) <= 1e-12);
            CHECK((prof.phi2(y + h) - prof.phi2(y - h)) / (2 * h) ==
                  doctest::Approx(prof.dphi2(y)).epsilon(1e-8));
        }
    }
}

TEST_CASE("gap-layer profiles") {
    const CombParams p = skewed();
    const LimitProfiles prof(p);
    const double yr = 0.2, ys = 0.7, yf = 0.4;
    CHECK(prof.in_rotor(yr));
    CHECK(prof.in_stator(ys));
    CHECK(prof.phi1(p.l[0] + 0.3, yr) == doctest::Approx(0.3));
    CHECK(prof.phi1(p.l[0] + 0.3, yf) == 0.0);
    CHECK(prof.phi3(p.l[1] - 0.3, ys) == doctest::Approx(0.7));
    CHECK(prof.phi3(p.l[1] - 0.3, yf) == 1.0);
    // traces match the electrodes and the middle profile
    CHECK(prof.phi1(p.l[0], yr) == 0.0);
    CHECK(prof.phi1(p.l[0] + 1.0, yr) == prof.phi2(yr));
    CHECK(prof.phi3(p.l[1] - 1.0, ys) == prof.phi2(ys));
    CHECK(prof.phi3(p.l[1], ys) == 1.0);
}

TEST_CASE("weak averages") {
    const CombParams p = skewed();
    const LimitProfiles prof(p);
    const auto w = weak_averages(p);
    const double mean_phi2 = piecewise_integral(p.zeta, [&](double y) { return prof.phi2(y); });
    CHECK(w.mean_phi_c2 == doctest::Approx(mean_phi2).epsilon(1e-12));
    CHECK(w.mean_phi_c2 == doctest::Approx(0.45));
    CHECK(w.mean_dx2_c1 == doctest::Approx(0.25));
    CHECK(w.mean_dx2_c3 == doctest::Approx(0.35));
    CHECK(w.mean_phi_c1(p.l[0] + 0.5) == doctest::Approx(0.125));
    CHECK(w.mean_phi_c3(p.l[1]) == doctest::Approx(1.0));
    CombParams q = p;
    q.alpha = 3.0;
    CHECK(weak_averages(q).mean_phi_c2 == 0.0);
    CHECK(weak_averages(q).mean_dx2_c1 == doctest::Approx(0.25));
}

TEST_CASE("extension fills finger footprints with the electrode values") {
    CombParams p;
    p.n = 2;
    const auto f = solve_rescaled(p, Refinement::uniform(2));
    const auto &m = *f.mesh;
    const LimitProfiles prof(p);
    for (Region r : {Region::C1, Region::C2, Region::C3}) {
        const auto e = extend(f, p, r);
        CHECK(e.row_end > e.row_begin);
        for (int j = e.row_begin; j < e.row_end; ++j)
            for (int i = 0; i < m.nodes_x1(); ++i) {
                const double v = e.at(i, j);
                CHECK(std::isfinite(v));
                if (!std::isnan(f.at(i, j)))
                    CHECK(v == f.at(i, j));
                else
                    CHECK(v == (prof.in_rotor(m.x1[i] / p.epsilon()) ? 1.0 : 0.0));
            }
    }
    // constant rows average to their value, the C1 rise is bounded by one
    const auto c1 = extend(f, p, Region::C1);
    CHECK(c1.mean_dx2() >= 0.0);
    CHECK(c1.mean_dx2() <= 1.0);
}

TEST_CASE("corrector of the interpolated limit profile") {
    // phi = phi2(x1/eps) everywhere: exact in the middle layer at alpha = 2,
    // off by the missing rise in the gap layers
    CombParams p;
    p.n = 4;
    auto mesh = std::make_shared<const TensorMesh>(
        generate_mesh(build_rescaled_domain(p), Refinement{}));
    const LimitProfiles prof(p);
    DiscreteField f;
    f.mesh = mesh;
    f.values.assign(mesh->node_count(), std::nan(""));
    for (int j = 0; j < mesh->nodes_x2(); ++j)
        for (int i = 0; i < mesh->nodes_x1(); ++i)
            if (mesh->node_class[mesh->node(i, j)] != NodeClass::Exterior)
                f.values[mesh->node(i, j)] = prof.phi2(mesh->x1[i] / p.epsilon());
    const auto c = corrector_norms(f, p, 3);
    const auto &z = p.zeta;
    const double eps2 = p.epsilon() * p.epsilon();
    const double slope_sq = 1.0 / (z[0] + 1.0 - z[3]) + 1.0 / (z[2] - z[1]);
    CHECK(c.c2 <= 1e-20);
    CHECK(c.c1 == doctest::Approx(p.L * p.meas_omega_a() + eps2 * p.L * slope_sq).epsilon(1e-10));
    CHECK(c.c3 == doctest::Approx(p.L * p.meas_omega_b() + eps2 * p.L * slope_sq).epsilon(1e-10));
}

TEST_CASE("discrete averages approach their limits") {
    SolverSettings s;
    s.tol = 1e-13;
    CombParams p;
    double prev = INFINITY;
    for (int n : {4, 8, 16}) {
        p.n = n;
        const auto d = discrete_weak_averages(solve_rescaled(p, Refinement{}, s), p);
        CHECK(d.avg_phi_c2 == doctest::Approx(0.5).epsilon(1e-6));
        const double err = std::abs(d.avg_dx2_c1 - 0.2);
        CHECK(err < prev);
        prev = err;
        CHECK(d.avg_dx2_c3 == doctest::Approx(d.avg_dx2_c1).epsilon(1e-8));
    }
}
}
