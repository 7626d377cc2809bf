#include "doctest.h"

#include "combdrive/errors.hpp"
#include "combdrive/mesh.hpp"

#include <algorithm>
#include <cmath>

using namespace combdrive;

TEST_SUITE("mesh") {
TEST_CASE("one period with one cell per interval") {
    CombParams p;
    p.n = 1;
    const auto m = generate_mesh(build_rescaled_domain(p), Refinement::uniform(1));
    CHECK(m.nodes_x1() == 6);
    CHECK(m.nodes_x2() == 4);
    CHECK(m.cells_per_period == 5);
    // C1 loses the stator column, C2 both fingers, C3 the rotor column
    CHECK(std::count(m.active.begin(), m.active.end(), 1) == 11);
}

TEST_CASE("active area equals the domain area") {
    for (int n : {1, 3, 8}) {
        CombParams p;
        p.n = n;
        for (const auto &d : {build_rescaled_domain(p), build_physical_domain(p)}) {
            CAPTURE(n);
            CHECK(generate_mesh(d, Refinement{}).active_area() ==
                  doctest::Approx(d.area()).epsilon(1e-12));
            CHECK(generate_mesh(d, Refinement::uniform(3)).active_area() ==
                  doctest::Approx(d.area()).epsilon(1e-12));
        }
    }
}

TEST_CASE("every feature line is a mesh line") {
    CombParams p;
    p.n = 4;
    const auto d = build_physical_domain(p);
    const auto m = generate_mesh(d, Refinement{});
    auto on = [](const std::vector<double> &lines, double v) {
        return std::any_of(lines.begin(), lines.end(),
                           [&](double x) { return std::abs(x - v) <= 1e-13; });
    };
    for (const auto &s : d.boundary) {
        CHECK(on(m.x1, s.a.x1));
        CHECK(on(m.x1, s.b.x1));
        CHECK(on(m.x2, s.a.x2));
        CHECK(on(m.x2, s.b.x2));
    }
    CHECK(std::is_sorted(m.x1.begin(), m.x1.end()));
    CHECK(std::adjacent_find(m.x1.begin(), m.x1.end()) == m.x1.end());
}

TEST_CASE("nested levels halve h and keep the coarse lines") {
    CombParams p;
    p.n = 2;
    const auto d = build_rescaled_domain(p);
    const Refinement base;
    const auto m1 = generate_mesh(d, base.nested(1));
    const auto m2 = generate_mesh(d, base.nested(2));
    const auto m4 = generate_mesh(d, base.nested(4));
    CHECK(m2.h() == doctest::Approx(m1.h() / 2).epsilon(1e-9));
    CHECK(m4.h() == doctest::Approx(m1.h() / 4).epsilon(1e-9));
    CHECK(m2.nodes_x1() == 2 * m1.nodes_x1() - 1);
    CHECK(m2.nodes_x2() == 2 * m1.nodes_x2() - 1);
    for (int i = 0; i < m1.nodes_x1(); ++i)
        CHECK(m2.x1[2 * i] == doctest::Approx(m1.x1[i]).epsilon(1e-14));
    for (int j = 0; j < m1.nodes_x2(); ++j)
        CHECK(m4.x2[4 * j] == doctest::Approx(m1.x2[j]).epsilon(1e-14));
}

TEST_CASE("graded cells are smallest at the finger corners") {
    CombParams p;
    p.n = 16;
    const auto m = generate_mesh(build_physical_domain(p), Refinement{});
    const double target = Refinement{}.corner_cell * p.gap();
    // first cell right of the first finger side
    const double z1 = p.epsilon() * p.zeta[0];
    const auto it = std::lower_bound(m.x1.begin(), m.x1.end(), z1 - 1e-15);
    REQUIRE(it + 1 != m.x1.end());
    CHECK(*(it + 1) - *it == doctest::Approx(target).epsilon(1e-9));
}

TEST_CASE("budget is enforced") {
    CombParams p;
    p.n = 32;
    p.alpha = 3.0;
    try {
        generate_mesh(build_rescaled_domain(p), Refinement{}, 1000);
        FAIL("expected BudgetError");
    } catch (const BudgetError &e) {
        CHECK(e.budget() == 1000);
        CHECK(e.required() > 1000);
    }
}

TEST_CASE("node classes follow the tagged boundary") {
    CombParams p;
    p.n = 2;
    const auto m = generate_mesh(build_rescaled_domain(p), Refinement::uniform(2));
    const int top = m.nodes_x2() - 1;
    for (int i = 0; i < m.nodes_x1(); ++i) {
        const auto t = m.node_class[m.node(i, top)];
        CHECK((t == NodeClass::DirichletRotor || t == NodeClass::Exterior));
        const auto b = m.node_class[m.node(i, 0)];
        CHECK((b == NodeClass::DirichletStator || b == NodeClass::Exterior));
    }
    // lateral walls are Neumann: their middle nodes stay free
    const int mid = m.nodes_x2() / 2;
    CHECK(m.node_class[m.node(0, mid)] == NodeClass::Free);
    CHECK(m.node_class[m.node(m.nodes_x1() - 1, mid)] == NodeClass::Free);
    // nodes strictly inside a finger touch no active cell
    for (int j = 1; j < m.nodes_x2() - 1; ++j)
        for (int i = 1; i < m.nodes_x1() - 1; ++i) {
            const bool any = m.is_active(i - 1, j - 1) || m.is_active(i, j - 1) ||
                             m.is_active(i - 1, j) || m.is_active(i, j);
            CHECK((m.node_class[m.node(i, j)] == NodeClass::Exterior) == !any);
        }
    CHECK(m.count(NodeClass::Free) + m.count(NodeClass::DirichletRotor) +
              m.count(NodeClass::DirichletStator) + m.count(NodeClass::Exterior) ==
          m.node_count());
    CHECK(m.count(NodeClass::Exterior) > 0);
}

TEST_CASE("rotor wins on shared corners") {
    CombParams p;
    p.n = 1;
    const auto m = generate_mesh(build_rescaled_domain(p), Refinement::uniform(1));
    // the top-left corner touches the lateral wall and the rotor backbone
    CHECK(m.node_class[m.node(0, m.nodes_x2() - 1)] == NodeClass::DirichletRotor);
    CHECK(m.node_class[m.node(0, 0)] == NodeClass::DirichletStator);
}
}
