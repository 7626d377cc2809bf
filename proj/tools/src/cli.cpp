#include "combdrive_cli/cli.hpp"

#include "combdrive/config.hpp"
#include "combdrive/errors.hpp"
#include "combdrive/harness.hpp"
#include "combdrive/homogenized.hpp"
#include "combdrive/plot.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace combdrive::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
    std::string config;
    std::string out = ".";
    std::vector<std::string> sets;
};

Config load(const Common &c) {
    return c.config.empty() ? parse_config("{}", c.sets) : load_config(c.config, c.sets);
}

fs::path out_dir(const std::string &dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec)
        throw ValidationError("cannot create output directory " + dir + ": " + ec.message());
    return p;
}

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot write " + path.string());
    f << text;
}

json limits_json(const CombParams &p) {
    const auto w = weak_averages(p);
    json j = {{"epsilon", p.epsilon()},
              {"gap", p.gap()},
              {"d_eps", p.d_eps()},
              {"d_eps_limit", p.d_eps_limit()},
              {"limit_avg_phi_c2", w.mean_phi_c2},
              {"limit_avg_dx2_c1", w.mean_dx2_c1},
              {"limit_avg_dx2_c3", w.mean_dx2_c3}};
    if (p.in_proven_regime()) {
        j["limit_force"] = limit_force(p);
        j["limit_energy"] = limit_energy(p);
    } else {
        j["limit_force"] = nullptr;
        j["limit_energy"] = nullptr;
        j["regime_note"] = regime_note(p);
    }
    return j;
}

int cmd_limits(const Common &c, std::ostream &out) {
    const Config cfg = load(c);
    out << limits_json(cfg.params).dump(2) << '\n';
    return kOk;
}

int cmd_solve(const Common &c, bool dump_field, bool dump_mesh, std::ostream &out,
              std::ostream &err) {
    const Config cfg = load(c);
    const auto &p = cfg.params;
    if (!p.in_proven_regime())
        err << "note: " << regime_note(p) << '\n';
    const auto field = solve_rescaled(p, cfg.refine, cfg.solver, cfg.node_budget);
    const CutoffSpec cutoff(cfg.cutoff, p, cfg.cutoff_margin);
    const auto fv = force_volume(field, cutoff, p, cfg.physics, cfg.quadrature);
    const auto norms = apriori_norms(field, p, cfg.quadrature);
    const auto avg = discrete_weak_averages(field, p);

    json j = {{"params",
               {{"zeta", p.zeta}, {"L", p.L}, {"l", p.l}, {"alpha", p.alpha}, {"n", p.n}}},
              {"dofs", field.stats.dofs},
              {"iterations", field.stats.iterations},
              {"residual", field.stats.residual},
              {"phi_min", field.min_value()},
              {"phi_max", field.max_value()},
              {"force_volume",
               {{"scaled_integral", fv.scaled_integral},
                {"physical_force", fv.physical_force},
                {"cutoff", to_string(cfg.cutoff)}}},
              {"energy", norms.energy},
              {"norms",
               {{"norm_eps_dx1_c13", norms.norm_eps_dx1_c13},
                {"norm_dx2_c13", norms.norm_dx2_c13},
                {"norm_grad_c2", norms.norm_grad_c2},
                {"norm_phi", norms.norm_phi},
                {"norm_phi_scaled_c2", norms.norm_phi_scaled_c2}}},
              {"averages",
               {{"avg_phi_c2", avg.avg_phi_c2},
                {"avg_dx2_c1", avg.avg_dx2_c1},
                {"avg_dx2_c3", avg.avg_dx2_c3}}},
              {"limits", limits_json(p)}};
    if (cfg.boundary_force) {
        const auto phys = solve_physical(p, cfg.refine, cfg.solver, cfg.node_budget);
        const auto fb = force_boundary(phys, p, cfg.physics);
        j["force_boundary"] = {{"scaled_integral", fb.scaled_integral},
                               {"physical_force", fb.physical_force}};
    }
    if (p.in_proven_regime()) {
        const auto corr = corrector_norms(field, p, cfg.quadrature);
        j["correctors"] = {{"c1", corr.c1}, {"c2", corr.c2}, {"c3", corr.c3}};
    }
    if (field.min_value() < -kMaxPrincipleSlack || field.max_value() > 1.0 + kMaxPrincipleSlack)
        err << "warning: maximum principle violated (min " << field.min_value() << ", max "
            << field.max_value() << ")\n";

    if (dump_field || dump_mesh) {
        const auto dir = out_dir(c.out);
        if (dump_field) {
            std::ofstream f(dir / "field.csv");
            write_field_csv(f, field);
            err << "wrote " << (dir / "field.csv").string() << '\n';
        }
        if (dump_mesh) {
            write_file(dir / "domain.json", domain_json(build_rescaled_domain(p), 1) + "\n");
            write_file(dir / "mesh.json", mesh_json(*field.mesh) + "\n");
            err << "wrote " << (dir / "domain.json").string() << " and "
                << (dir / "mesh.json").string() << '\n';
        }
    }
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_sweep(const Common &c, std::ostream &err) {
    const Config cfg = load(c);
    const auto dir = out_dir(c.out);
    std::ofstream csv(dir / "sweep.csv", std::ios::binary);
    std::ofstream ext(dir / "extrema.csv", std::ios::binary);
    if (!csv || !ext)
        throw ValidationError("cannot write into " + dir.string());
    const auto rep = run_sweep(cfg, {&csv, &ext, &err});
    std::size_t failed = 0;
    for (const auto &r : rep.rows)
        failed += !r.error.empty();
    err << "wrote " << rep.rows.size() << " rows to " << (dir / "sweep.csv").string() << '\n';
    if (failed) {
        err << failed << " cases failed\n";
        return kNumerical;
    }
    return kOk;
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_check(const std::string &report_path, const std::string &criteria_path,
              const std::string &repeat_path, const Common &c, bool write_out, std::ostream &out,
              std::ostream &err) {
    const Criteria cr = criteria_path.empty() ? Criteria{} : load_criteria(criteria_path);
    auto rep = read_report_csv_file(report_path);
    CheckExtras extras;
    const fs::path extrema = fs::path(report_path).parent_path() / "extrema.csv";
    if (fs::exists(extrema)) {
        std::ifstream in(extrema);
        read_extrema_csv(in, rep);
        extras.have_extrema = true;
    } else {
        err << "note: no extrema.csv beside the report; maximum principle not checked\n";
    }
    const Config cfg = load(c);
    extras.linear_fixture_error = linear_fixture_error(cfg.solver);
    if (!repeat_path.empty())
        extras.repeat_identical = read_text(report_path) == read_text(repeat_path);

    const auto verdicts = check_report(rep, cr, extras);
    const std::string text = verdicts_json(verdicts) + "\n";
    out << text;
    if (write_out)
        write_file(out_dir(c.out) / "verdicts.json", text);
    for (const auto &v : verdicts)
        err << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
    return all_pass(verdicts) ? kOk : kCheckFailed;
}

int cmd_plot(const std::string &report_path, const Common &c, std::ostream &err) {
    const auto rep = read_report_csv_file(report_path);
    const auto dir = out_dir(c.out);
    write_file(dir / "force.svg", force_plot_svg(rep));
    write_file(dir / "correctors.svg", corrector_plot_svg(rep));
    err << "wrote force.svg and correctors.svg to " << dir.string() << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Comb-drive homogenization simulator"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App *sub, bool with_out) {
        sub->add_option("--config", common.config, "JSON config (defaults when omitted)")
            ->check(CLI::ExistingFile);
        sub->add_option("--set", common.sets, "override, dotted key=value (repeatable)");
        if (with_out)
            sub->add_option("--out", common.out, "output directory");
    };

    bool dump_field = false, dump_mesh = false;
    auto *solve = app.add_subcommand("solve", "solve one case and print diagnostics as JSON");
    add_common(solve, true);
    solve->add_flag("--dump-field", dump_field, "write field.csv (x1,x2,value) into --out");
    solve->add_flag("--dump-mesh", dump_mesh, "write domain.json and mesh.json into --out");

    auto *sweep = app.add_subcommand("sweep", "run the configured sweep into --out/sweep.csv");
    add_common(sweep, true);

    auto *limits = app.add_subcommand("limits", "print the closed-form limits");
    add_common(limits, false);

    std::string report, criteria, repeat;
    auto *check = app.add_subcommand("check", "apply the acceptance criteria to a report");
    check->add_option("report", report, "sweep.csv")->required()->check(CLI::ExistingFile);
    check->add_option("--criteria", criteria, "criteria JSON")->check(CLI::ExistingFile);
    check->add_option("--repeat", repeat, "second report of the same sweep (determinism)")
        ->check(CLI::ExistingFile);
    add_common(check, true);

    auto *plot = app.add_subcommand("plot", "write SVG convergence plots from a report");
    plot->add_option("report", report, "sweep.csv")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", common.out, "output directory");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    try {
        if (*solve)
            return cmd_solve(common, dump_field, dump_mesh, out, err);
        if (*sweep)
            return cmd_sweep(common, err);
        if (*limits)
            return cmd_limits(common, out);
        if (*check)
            return cmd_check(report, criteria, repeat, common, check->count("--out") > 0, out, err);
        if (*plot)
            return cmd_plot(report, common, err);
    } catch (const ValidationError &e) {
        err << "validation error:\n";
        for (const auto &v : e.violations())
            err << "  " << v << '\n';
        return kValidation;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const RegimeError &e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const BudgetError &e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const Error &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception &e) {
        err << "failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kValidation;
}

} // namespace combdrive::cli
