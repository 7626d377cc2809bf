#include "doctest.h"

#include "combdrive/errors.hpp"
#include "combdrive/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace combdrive;

namespace {

Config small_config(int workers = 1) {
    return parse_config("{}", {"sweep.alphas=[2,3]", "sweep.n_values=[1,2,4]",
                               "sweep.study.n=2", "sweep.workers=" + std::to_string(workers)});
}

SweepRow ideal_row(double alpha, int n, int refine, CutoffVariant cut) {
    SweepRow r;
    r.c = {alpha, n, refine, cut};
    r.epsilon = 1.0 / n;
    r.dofs = 100;
    r.iters = 10;
    r.force_volume = 0.4 * (1.0 + 0.4 / n);
    r.force_boundary = r.force_volume * (1.0 + 0.05 / refine);
    if (cut == CutoffVariant::TensorSmoothstep)
        r.force_volume *= 1.0 + 0.01 / refine;
    r.limit_force = 0.4;
    r.limit_energy = alpha == 2.0 ? 22.9 : 0.4;
    r.energy = r.limit_energy * (1.0 + 0.1 / n);
    r.corr_c1 = r.corr_c2 = r.corr_c3 = 1.0 / n;
    r.avg_phi_c2 = r.limit_avg_phi_c2 = alpha == 2.0 ? 0.5 : 0.0;
    r.avg_dx2_c1 = r.limit_avg_dx2_c1 = 0.2;
    r.avg_dx2_c3 = r.limit_avg_dx2_c3 = 0.2;
    r.norm_eps_dx1_c13 = r.norm_dx2_c13 = r.norm_grad_c2 = r.norm_phi = 1.0 + 0.1 / n;
    r.phi_min = 0.0;
    r.phi_max = 1.0;
    return r;
}

// A report that meets every rule with the default criteria.
SweepReport ideal_report() {
    SweepReport rep;
    for (double a : {2.0, 3.0})
        for (int n : {4, 8, 16, 32})
            rep.rows.push_back(ideal_row(a, n, 1, CutoffVariant::TensorLinear));
    for (int lv : {1, 2, 4})
        for (auto c : {CutoffVariant::TensorLinear, CutoffVariant::TensorSmoothstep})
            if (lv != 1 || c != CutoffVariant::TensorLinear)
                rep.rows.push_back(ideal_row(2.0, 8, lv, c));
    return rep;
}

CheckExtras full_extras() {
    CheckExtras e;
    e.linear_fixture_error = 1e-13;
    e.have_extrema = true;
    e.repeat_identical = true;
    return e;
}

const Verdict &find(const std::vector<Verdict> &v, const std::string &name) {
    for (const auto &x : v)
        if (x.name == name)
            return x;
    FAIL("no verdict " << name);
    return v.front();
}

SweepRow *row(SweepReport &rep, double alpha, int n) {
    for (auto &r : rep.rows)
        if (r.c.alpha == alpha && r.c.n == n && r.c.refine == 1 &&
            r.c.cutoff == CutoffVariant::TensorLinear)
            return &r;
    return nullptr;
}

} // namespace

TEST_SUITE("harness") {
TEST_CASE("cases are deduplicated and ordered") {
    const auto cases = sweep_cases(parse_config("{}"));
    // 2 alphas x 4 n, plus 5 extra study cases at n = 8
    CHECK(cases.size() == 13);
    CHECK(std::is_sorted(cases.begin(), cases.end()));
    CHECK(std::adjacent_find(cases.begin(), cases.end()) == cases.end());
    const auto off = sweep_cases(parse_config("{}", {"sweep.study.enabled=false"}));
    CHECK(off.size() == 8);
}

TEST_CASE("ideal report passes every rule") {
    const auto v = check_report(ideal_report(), Criteria{}, full_extras());
    for (const auto &x : v) {
        CAPTURE(x.name);
        CAPTURE(x.detail);
        CHECK(x.pass);
    }
    CHECK(v.size() == 14);
    CHECK(all_pass(v));
}

TEST_CASE("each rule can fail on its own") {
    const Criteria cr;
    SUBCASE("growing corrector") {
        auto rep = ideal_report();
        row(rep, 3.0, 32)->corr_c2 = 1.0;
        const auto v = check_report(rep, cr, full_extras());
        CHECK_FALSE(find(v, "c3_corrector_decay").pass);
        CHECK(find(v, "c1_force_alpha2").pass);
    }
    SUBCASE("force error not decreasing") {
        auto rep = ideal_report();
        row(rep, 2.0, 16)->force_volume = 0.4;
        CHECK_FALSE(find(check_report(rep, cr, full_extras()), "c1_force_alpha2").pass);
    }
    SUBCASE("failed case") {
        auto rep = ideal_report();
        row(rep, 2.0, 8)->error = "boom";
        const auto v = check_report(rep, cr, full_extras());
        CHECK_FALSE(find(v, "c0_report_complete").pass);
        CHECK_FALSE(find(v, "c1_force_alpha2").pass);
    }
    SUBCASE("missing final n") {
        auto rep = ideal_report();
        std::erase_if(rep.rows, [](const SweepRow &r) { return r.c.n == 32; });
        const auto v = check_report(rep, cr, full_extras());
        CHECK(find(v, "c0_report_complete").pass);
        CHECK_FALSE(find(v, "c1_force_alpha2").pass);
        CHECK(std::isnan(find(v, "c1_force_alpha2").measured));
        CHECK_FALSE(find(v, "c4_energy_alpha2").pass);
    }
    SUBCASE("energy off") {
        auto rep = ideal_report();
        row(rep, 2.0, 32)->energy = 30.0;
        CHECK_FALSE(find(check_report(rep, cr, full_extras()), "c4_energy_alpha2").pass);
    }
    SUBCASE("weak average off") {
        auto rep = ideal_report();
        row(rep, 2.0, 32)->avg_dx2_c3 = 0.25;
        const auto v = check_report(rep, cr, full_extras());
        CHECK_FALSE(find(v, "c5_avg_dx2_c3").pass);
        CHECK(find(v, "c5_avg_dx2_c1").pass);
    }
    SUBCASE("study gaps") {
        auto rep = ideal_report();
        for (auto &r : rep.rows)
            if (r.c.refine == 4 && r.c.cutoff == CutoffVariant::TensorLinear)
                r.force_boundary = 2.0 * r.force_volume;
        CHECK_FALSE(find(check_report(rep, cr, full_extras()), "c6_proposition_equality").pass);
    }
    SUBCASE("overshoot and fixture") {
        auto rep = ideal_report();
        row(rep, 3.0, 4)->phi_max = 1.0 + 1e-6;
        auto e = full_extras();
        e.linear_fixture_error = 1e-6;
        const auto v = check_report(rep, cr, e);
        CHECK_FALSE(find(v, "c8_max_principle").pass);
        CHECK_FALSE(find(v, "c8_linear_fixture").pass);
    }
    SUBCASE("norm band") {
        auto rep = ideal_report();
        row(rep, 2.0, 32)->norm_eps_dx1_c13 = 0.1;
        CHECK_FALSE(find(check_report(rep, cr, full_extras()), "c9_norm_boundedness").pass);
    }
    SUBCASE("determinism") {
        auto e = full_extras();
        e.repeat_identical = false;
        CHECK_FALSE(find(check_report(ideal_report(), cr, e), "c10_determinism").pass);
        e.repeat_identical.reset();
        const auto v = check_report(ideal_report(), cr, e);
        CHECK(std::none_of(v.begin(), v.end(),
                           [](const Verdict &x) { return x.name == "c10_determinism"; }));
    }
    SUBCASE("no extrema") {
        auto e = full_extras();
        e.have_extrema = false;
        CHECK_FALSE(find(check_report(ideal_report(), cr, e), "c8_max_principle").pass);
    }
}

TEST_CASE("report CSV round trips bit for bit") {
    auto rep = ideal_report();
    rep.rows[2].error = "mesh needs 9 nodes, budget is 3";
    rep.rows[2].force_volume = std::nan("");
    rep.rows[3].force_volume = 0.1 + 0.2; // needs all 17 digits
    const std::string text = to_csv(rep);
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_report_csv(in);
    REQUIRE(back.rows.size() == rep.rows.size());
    CHECK(to_csv(back) == text);
    CHECK(back.rows[3].force_volume == 0.1 + 0.2);
    CHECK(std::isnan(back.rows[2].force_volume));
    // commas would split the field
    CHECK(back.rows[2].error == "mesh needs 9 nodes; budget is 3");
}

TEST_CASE("error text cannot break the CSV") {
    auto rep = ideal_report();
    rep.rows[0].error = "bad, very bad\nreally";
    std::istringstream in(to_csv(rep));
    const auto back = read_report_csv(in);
    CHECK(back.rows.size() == rep.rows.size());
    CHECK_FALSE(back.rows[0].error.empty());
}

TEST_CASE("malformed CSV is rejected") {
    std::istringstream wrong_header("alpha,n\n2,4\n");
    CHECK_THROWS_AS(read_report_csv(wrong_header), ValidationError);
    std::istringstream short_row(std::string(kCsvHeader) + "\n2,4,1\n");
    CHECK_THROWS_AS(read_report_csv(short_row), ValidationError);
}

TEST_CASE("extrema sidecar") {
    auto rep = ideal_report();
    rep.rows[1].phi_min = -1e-12;
    std::ostringstream os;
    write_extrema_header(os);
    for (const auto &r : rep.rows)
        write_extrema_row(os, r);
    auto back = ideal_report();
    for (auto &r : back.rows)
        r.phi_min = r.phi_max = 7.0;
    back.rows.push_back(ideal_row(5.0, 4, 1, CutoffVariant::TensorLinear));
    std::istringstream in(os.str());
    read_extrema_csv(in, back);
    CHECK(back.rows[1].phi_min == -1e-12);
    CHECK(back.rows[0].phi_max == 1.0);
    CHECK(std::isnan(back.rows.back().phi_min));
}

TEST_CASE("criteria JSON") {
    const Criteria c = load_criteria(COMBDRIVE_CONFIG_DIR "/criteria.json");
    CHECK(c.limit_energy == 22.9);
    CHECK(c.final_n == 32);
    CHECK(c.max_principle_slack == kMaxPrincipleSlack);
    CHECK(parse_criteria("{}").force_rel_tol == Criteria{}.force_rel_tol);
    CHECK(parse_criteria(R"({"force_rel_tol": 0.2})").force_rel_tol == 0.2);
    CHECK_THROWS_AS(parse_criteria(R"({"force_tol": 0.2})"), ValidationError);
}

TEST_CASE("verdict JSON writes NaN as null") {
    const std::vector<Verdict> v{{"a", std::nan(""), 1.0, false, "x"}, {"b", 0.5, 1.0, true, ""}};
    const std::string j = verdicts_json(v, -1);
    CHECK(j.find("\"measured\":null") != std::string::npos);
    CHECK(j.find("\"measured\":0.5") != std::string::npos);
    CHECK_FALSE(all_pass(v));
    CHECK_FALSE(all_pass({}));
}

TEST_CASE("linear fixture is exact") {
    CHECK(linear_fixture_error(SolverSettings{}) <= 1e-10);
}

TEST_CASE("sweep output does not depend on the worker count") {
    std::ostringstream csv1, ext1, csv2, ext2;
    const auto r1 = run_sweep(small_config(1), {&csv1, &ext1, nullptr});
    const auto r2 = run_sweep(small_config(2), {&csv2, &ext2, nullptr});
    CHECK(r1.rows.size() == sweep_cases(small_config()).size());
    CHECK(csv1.str() == csv2.str());
    CHECK(ext1.str() == ext2.str());
    CHECK(csv1.str() == to_csv(r1));
    for (const auto &r : r1.rows) {
        CHECK(r.error.empty());
        CHECK(r.walltime_s == 0.0);
        CHECK(r.force_volume > 0.0);
    }
}

TEST_CASE("a failing case is recorded, not thrown") {
    const Config cfg = parse_config("{}", {"mesh.node_budget=50"});
    const auto r = run_case(cfg, {2.0, 4, 1, CutoffVariant::TensorLinear});
    CHECK(r.error.find("budget") != std::string::npos);
    CHECK(std::isnan(r.force_volume));
    CHECK(std::isnan(r.norm_phi));
    CHECK(r.epsilon == 0.25);
}

TEST_CASE("exploratory exponents leave the limit columns empty") {
    const Config cfg = parse_config("{}");
    const auto r = run_case(cfg, {1.5, 2, 1, CutoffVariant::TensorLinear});
    CHECK(r.error.empty());
    CHECK(std::isnan(r.limit_force));
    CHECK(std::isnan(r.corr_c1));
    CHECK(std::isfinite(r.force_volume));
}

TEST_CASE("invalid sweep config throws before running") {
    Config cfg = parse_config("{}");
    cfg.sweep.n_values = {4};
    CHECK_THROWS_AS(run_sweep(cfg), ValidationError);
}
}
