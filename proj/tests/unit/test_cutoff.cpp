#include "doctest.h"

#include "combdrive/cutoff.hpp"
#include "combdrive/errors.hpp"

#include <cmath>
#include <random>

using namespace combdrive;

namespace {

constexpr CutoffVariant kVariants[] = {CutoffVariant::TensorLinear,
                                       CutoffVariant::TensorSmoothstep};

// Distance of y (mod 1) to the nearest of the given period positions.
double periodic_distance(double y, std::initializer_list<double> marks) {
    double best = 1.0;
    for (double m : marks) {
        double d = std::abs(y - m);
        d -= std::floor(d);
        best = std::min({best, d, 1.0 - d});
    }
    return best;
}

} // namespace

TEST_SUITE("cutoff") {
TEST_CASE("plateaus and traces") {
    CombParams p;
    p.zeta = {0.15, 0.3, 0.55, 0.9};
    const double l1 = p.l[0], l2 = p.l[1];
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto v : kVariants) {
        const CutoffSpec c(v, p);
        for (int k = 0; k < 2000; ++k) {
            const double y = -3.0 + 6.0 * u(rng);
            const double x2 = l1 + (l2 - l1) * u(rng);
            const double val = c.eval(y, x2);
            CHECK(val >= 0.0);
            CHECK(val <= 1.0);
            CHECK(c.eval(y, l1) == 0.0);
            CHECK(c.eval(y, l2) == 1.0);
            const double yr = p.zeta[0] + (p.zeta[1] - p.zeta[0]) * u(rng);
            const double ys = p.zeta[2] + (p.zeta[3] - p.zeta[2]) * u(rng);
            CHECK(c.eval(yr, l1 + 1.0 + (l2 - l1 - 1.0) * u(rng)) == 1.0);
            CHECK(c.eval(ys, l1 + (l2 - l1 - 1.0) * u(rng)) == 0.0);
        }
    }
}

TEST_CASE("periodic in y") {
    CombParams p;
    const CutoffSpec c(CutoffVariant::TensorSmoothstep, p);
    for (double y : {0.0, 0.05, 0.31, 0.5, 0.77, 0.95})
        for (double x2 : {1.0, 1.4, 2.5, 3.7, 4.0}) {
            CHECK(c.eval(y + 1.0, x2) == doctest::Approx(c.eval(y, x2)).epsilon(1e-14));
            CHECK(c.eval(y - 7.0, x2) == doctest::Approx(c.eval(y, x2)).epsilon(1e-14));
            CHECK(c.grad(y + 3.0, x2)[0] == doctest::Approx(c.grad(y, x2)[0]).epsilon(1e-12));
        }
}

TEST_CASE("gradient agrees with central differences") {
    CombParams p;
    p.zeta = {0.1, 0.35, 0.5, 0.85};
    const double l1 = p.l[0], l2 = p.l[1], h = 1e-5;
    for (auto v : kVariants)
        for (double margin : {1.0, 0.5}) {
            const CutoffSpec c(v, p, margin);
            // window ends of the crossover ramps
            const double wrap = p.zeta[0] + 1.0 - p.zeta[3], mid = p.zeta[2] - p.zeta[1];
            const double wc = p.zeta[3] + 0.5 * wrap, mc = p.zeta[1] + 0.5 * mid;
            std::mt19937_64 rng(4242);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            int tested = 0;
            double worst = 0.0;
            while (tested < 1000) {
                const double y = 2.0 * u(rng) - 0.5;
                const double x2 = l1 + (l2 - l1) * u(rng);
                if (periodic_distance(y, {wc - 0.5 * margin * wrap, wc + 0.5 * margin * wrap,
                                          mc - 0.5 * margin * mid, mc + 0.5 * margin * mid}) <
                        10 * h ||
                    std::min({x2 - l1, std::abs(x2 - l1 - 1.0), std::abs(x2 - l2 + 1.0),
                              l2 - x2}) < 10 * h)
                    continue;
                const auto g = c.grad(y, x2);
                const double dy = (c.eval(y + h, x2) - c.eval(y - h, x2)) / (2 * h);
                const double dx = (c.eval(y, x2 + h) - c.eval(y, x2 - h)) / (2 * h);
                worst = std::max({worst, std::abs(g[0] - dy), std::abs(g[1] - dx)});
                const auto sup = c.grad_sup();
                CHECK(std::abs(g[0]) <= sup[0] + 1e-12);
                CHECK(std::abs(g[1]) <= sup[1] + 1e-12);
                ++tested;
            }
            CAPTURE(to_string(v));
            CHECK(worst <= 1e-6);
        }
}

TEST_CASE("oscillated form follows the chain rule") {
    CombParams p;
    const CutoffSpec c(CutoffVariant::TensorSmoothstep, p);
    const double eps = p.epsilon();
    for (double x1 : {0.01, 0.0625, 0.3, 0.71}) {
        const double x2 = 1.6;
        const auto g = c.grad(x1 / eps, x2);
        const auto go = c.grad_oscillated(x1, x2, eps);
        CHECK(go[0] == doctest::Approx(g[0] / eps));
        CHECK(go[1] == g[1]);
        CHECK(c.eval_oscillated(x1, x2, eps) == c.eval(x1 / eps, x2));
    }
}

TEST_CASE("variants differ inside the ramps and agree at their ends") {
    CombParams p;
    const CutoffSpec lin(CutoffVariant::TensorLinear, p), smooth(CutoffVariant::TensorSmoothstep, p);
    // centre of the middle gap, lower gap layer: A = 1/2, B1 ramp at 0.25
    const double y = 0.5 * (p.zeta[1] + p.zeta[2]);
    CHECK(lin.eval(y, p.l[0] + 0.25) == doctest::Approx(0.5 * 0.25));
    CHECK(smooth.eval(y, p.l[0] + 0.25) == doctest::Approx(0.5 * (3 * 0.0625 - 2 * 0.015625)));
    CHECK(lin.eval(y, p.l[0] + 0.25) != smooth.eval(y, p.l[0] + 0.25));
    CHECK(lin.eval(0.3, 2.5) == smooth.eval(0.3, 2.5));
    CHECK(lin.grad_sup()[1] == 1.0);
    CHECK(smooth.grad_sup()[1] == 1.5);
}

TEST_CASE("invalid use raises") {
    CombParams p;
    const CutoffSpec c(CutoffVariant::TensorLinear, p);
    CHECK_THROWS_AS(c.eval(0.3, p.l[0] - 1e-9), DomainError);
    CHECK_THROWS_AS(c.grad(0.3, p.l[1] + 0.5), DomainError);
    CHECK_THROWS_AS(CutoffSpec(CutoffVariant::TensorLinear, p, 0.0), ValidationError);
    CHECK_THROWS_AS(CutoffSpec(CutoffVariant::TensorLinear, p, 1.5), ValidationError);
    CHECK(cutoff_variant_from_string(to_string(CutoffVariant::TensorSmoothstep)) ==
          CutoffVariant::TensorSmoothstep);
    CHECK_THROWS_AS(cutoff_variant_from_string("RADIAL"), ValidationError);
}
}
