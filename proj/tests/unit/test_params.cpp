#include "doctest.h"

#include "combdrive/errors.hpp"
#include "combdrive/params.hpp"

#include <algorithm>
#include <cmath>

using namespace combdrive;

namespace {
bool has(const std::vector<std::string> &v, const std::string &s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}
} // namespace

TEST_SUITE("params") {
TEST_CASE("reference parameters are admissible") {
    CombParams p;
    CHECK(validate(p).empty());
    CHECK_NOTHROW(require_valid(p));
    CHECK(p.epsilon() == doctest::Approx(1.0 / 8));
    CHECK(p.gap() == doctest::Approx(1.0 / 64));
    CHECK(p.meas_omega_a() == doctest::Approx(0.2));
    CHECK(p.meas_omega_b() == doctest::Approx(0.2));
}

TEST_CASE("each ordering rule is reported by name") {
    CombParams p;
    p.zeta = {0.4, 0.2, 0.6, 0.8};
    const auto v = validate(p);
    CHECK(v.size() == 1);
    CHECK(has(v, "zeta1 < zeta2 violated"));

    CombParams q;
    q.l = {1.0, 2.5, 5.0};
    CHECK(validate(q) == std::vector<std::string>{"l1+2 < l2 violated"});

    CombParams r;
    r.zeta = {0.0, 0.4, 0.6, 1.0};
    r.L = -1.0;
    r.n = 0;
    const auto w = validate(r);
    CHECK(has(w, "0 < zeta1 violated"));
    CHECK(has(w, "zeta4 < 1 violated"));
    CHECK(has(w, "L > 0 violated"));
    CHECK(has(w, "n >= 1 violated"));
    CHECK_THROWS_AS(require_valid(r), ValidationError);
}

TEST_CASE("validation error keeps every violation") {
    CombParams p;
    p.zeta = {0.5, 0.4, 0.3, 0.2};
    try {
        require_valid(p);
        FAIL("expected a throw");
    } catch (const ValidationError &e) {
        CHECK(e.violations().size() == 3);
    }
}

TEST_CASE("gap layers must fit inside the channel") {
    CombParams p;
    p.l = {1.0, 3.5, 5.0};
    p.L = 4.0;
    p.alpha = 1.0;
    p.n = 1;
    CHECK(has(validate(p), "l2-l1-2*epsilon^alpha > 0 violated"));
}

TEST_CASE("d_eps tends monotonically to its limit") {
    CombParams p;
    double prev = INFINITY;
    for (int n : {2, 4, 8, 16, 32, 64}) {
        p.n = n;
        const double err = std::abs(p.d_eps() - p.d_eps_limit());
        CHECK(err < prev);
        prev = err;
    }
    CHECK(p.d_eps_limit() == doctest::Approx(3.0));
}

TEST_CASE("regime note only outside alpha >= 2") {
    CombParams p;
    CHECK(regime_note(p).empty());
    p.alpha = 1.5;
    CHECK_FALSE(p.in_proven_regime());
    CHECK(regime_note(p).find("outside proven regime") != std::string::npos);
}
}
