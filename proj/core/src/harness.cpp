#include "combdrive/harness.hpp"

#include "combdrive/errors.hpp"
#include "combdrive/homogenized.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace combdrive {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<SweepCase> sweep_cases(const Config &cfg) {
    std::set<SweepCase> cases;
    for (double a : cfg.sweep.alphas)
        for (int n : cfg.sweep.n_values)
            for (int lv : cfg.sweep.levels)
                for (auto cut : cfg.sweep.cutoffs)
                    cases.insert({a, n, lv, cut});
    const auto &st = cfg.sweep.study;
    if (st.enabled)
        for (int lv : st.levels)
            for (auto cut : st.cutoffs)
                cases.insert({st.alpha, st.n, lv, cut});
    return {cases.begin(), cases.end()};
}

SweepRow run_case(const Config &cfg, const SweepCase &c) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow r;
    r.c = c;
    CombParams p = cfg.params;
    p.alpha = c.alpha;
    p.n = c.n;
    r.epsilon = p.epsilon();
    try {
        const Refinement refine = cfg.refine.nested(c.refine);
        const auto field = solve_rescaled(p, refine, cfg.solver, cfg.node_budget);
        r.dofs = field.stats.dofs;
        r.iters = field.stats.iterations;
        r.phi_min = field.min_value();
        r.phi_max = field.max_value();

        const CutoffSpec cutoff(c.cutoff, p, cfg.cutoff_margin);
        r.force_volume =
            force_volume(field, cutoff, p, cfg.physics, cfg.quadrature).scaled_integral;
        if (cfg.boundary_force) {
            const auto phys = solve_physical(p, refine, cfg.solver, cfg.node_budget);
            r.force_boundary = force_boundary(phys, p, cfg.physics).scaled_integral;
        } else {
            r.force_boundary = kNaN;
        }

        const auto norms = apriori_norms(field, p, cfg.quadrature);
        r.energy = norms.energy;
        r.norm_eps_dx1_c13 = norms.norm_eps_dx1_c13;
        r.norm_dx2_c13 = norms.norm_dx2_c13;
        r.norm_grad_c2 = norms.norm_grad_c2;
        r.norm_phi = norms.norm_phi;

        const auto avg = discrete_weak_averages(field, p);
        const auto lim = weak_averages(p);
        r.avg_phi_c2 = avg.avg_phi_c2;
        r.avg_dx2_c1 = avg.avg_dx2_c1;
        r.avg_dx2_c3 = avg.avg_dx2_c3;
        r.limit_avg_phi_c2 = lim.mean_phi_c2;
        r.limit_avg_dx2_c1 = lim.mean_dx2_c1;
        r.limit_avg_dx2_c3 = lim.mean_dx2_c3;

        if (p.in_proven_regime()) {
            r.limit_force = limit_force(p);
            r.limit_energy = limit_energy(p);
            const auto corr = corrector_norms(field, p, cfg.quadrature);
            r.corr_c1 = corr.c1;
            r.corr_c2 = corr.c2;
            r.corr_c3 = corr.c3;
        } else {
            r.limit_force = r.limit_energy = kNaN;
            r.corr_c1 = r.corr_c2 = r.corr_c3 = kNaN;
        }
    } catch (const std::exception &e) {
        const auto keep = r;
        r = SweepRow{};
        r.c = keep.c;
        r.epsilon = keep.epsilon;
        r.dofs = keep.dofs;
        r.iters = keep.iters;
        for (double *v : {&r.force_volume, &r.force_boundary, &r.limit_force, &r.energy,
                          &r.limit_energy, &r.corr_c1, &r.corr_c2, &r.corr_c3, &r.avg_phi_c2,
                          &r.limit_avg_phi_c2, &r.avg_dx2_c1, &r.limit_avg_dx2_c1,
                          &r.avg_dx2_c3, &r.limit_avg_dx2_c3, &r.norm_eps_dx1_c13,
                          &r.norm_dx2_c13, &r.norm_grad_c2, &r.norm_phi, &r.phi_min,
                          &r.phi_max})
            *v = kNaN;
        r.error = e.what();
        if (r.error.empty())
            r.error = "unknown failure";
    }
    if (cfg.sweep.record_walltime)
        r.walltime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

std::string case_label(const SweepCase &c) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "alpha=%g n=%d refine=%d %s", c.alpha, c.n, c.refine,
                  to_string(c.cutoff).c_str());
    return buf;
}

void report_row(const SweepSinks &sinks, const SweepRow &row) {
    if (sinks.csv) {
        write_csv_row(*sinks.csv, row);
        sinks.csv->flush();
    }
    if (sinks.extrema) {
        write_extrema_row(*sinks.extrema, row);
        sinks.extrema->flush();
    }
    if (!sinks.log)
        return;
    auto &log = *sinks.log;
    if (!row.error.empty()) {
        log << "case " << case_label(row.c) << " failed: " << row.error << '\n';
        return;
    }
    log << "case " << case_label(row.c) << ": dofs " << row.dofs << ", " << row.iters
        << " iterations\n";
    if (row.phi_min < -kMaxPrincipleSlack || row.phi_max > 1.0 + kMaxPrincipleSlack)
        log << "warning: maximum principle violated in " << case_label(row.c) << " (min "
            << row.phi_min << ", max " << row.phi_max << ")\n";
}

} // namespace

SweepReport run_sweep(const Config &cfg, const SweepSinks &sinks) {
    auto v = validate(cfg);
    if (!v.empty())
        throw ValidationError(std::move(v));
    const auto cases = sweep_cases(cfg);
    if (sinks.csv)
        write_csv_header(*sinks.csv);
    if (sinks.extrema)
        write_extrema_header(*sinks.extrema);

    std::vector<std::optional<SweepRow>> done(cases.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cases.size())
                return;
            SweepRow row = run_case(cfg, cases[k]);
            {
                std::lock_guard lock(mu);
                done[k] = std::move(row);
            }
            cv.notify_one();
        }
    };
    const int nworkers = std::max(1, std::min<int>(cfg.sweep.workers, cases.size()));
    std::vector<std::thread> pool;
    for (int t = 0; t < nworkers; ++t)
        pool.emplace_back(worker);

    // single ordered writer
    SweepReport report;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return done[k].has_value(); });
        SweepRow row = std::move(*done[k]);
        lock.unlock();
        report_row(sinks, row);
        report.rows.push_back(std::move(row));
    }
    for (auto &t : pool)
        t.join();
    return report;
}

const char *const kCsvHeader =
    "epsilon,alpha,n,refine,cutoff,dofs,iters,force_volume,force_boundary,limit_force,energy,"
    "limit_energy,corr_c1,corr_c2,corr_c3,avg_phi_c2,limit_avg_phi_c2,avg_dx2_c1,"
    "limit_avg_dx2_c1,avg_dx2_c3,limit_avg_dx2_c3,norm_eps_dx1_c13,norm_dx2_c13,norm_grad_c2,"
    "norm_phi,walltime_s,error";

namespace {

void put(std::ostream &os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

std::string sanitize(std::string s) {
    for (char &ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r')
            ch = ch == ',' ? ';' : ' ';
    return s;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double num(const std::string &s, const std::string &what) {
    if (s.empty())
        throw ValidationError("empty value in column " + what);
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ValidationError("column " + what + ": '" + s + "' is not a number");
    return v;
}

} // namespace

void write_csv_header(std::ostream &os) { os << kCsvHeader << '\n'; }

void write_csv_row(std::ostream &os, const SweepRow &r) {
    put(os, r.epsilon);
    os << ',';
    put(os, r.c.alpha);
    os << ',' << r.c.n << ',' << r.c.refine << ',' << to_string(r.c.cutoff) << ',' << r.dofs
       << ',' << r.iters;
    for (double v : {r.force_volume, r.force_boundary, r.limit_force, r.energy, r.limit_energy,
                     r.corr_c1, r.corr_c2, r.corr_c3, r.avg_phi_c2, r.limit_avg_phi_c2,
                     r.avg_dx2_c1, r.limit_avg_dx2_c1, r.avg_dx2_c3, r.limit_avg_dx2_c3,
                     r.norm_eps_dx1_c13, r.norm_dx2_c13, r.norm_grad_c2, r.norm_phi,
                     r.walltime_s}) {
        os << ',';
        put(os, v);
    }
    os << ',' << sanitize(r.error) << '\n';
}

std::string to_csv(const SweepReport &report) {
    std::ostringstream os;
    write_csv_header(os);
    for (const auto &r : report.rows)
        write_csv_row(os, r);
    return os.str();
}

SweepReport read_report_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line))
        throw ValidationError("report is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw ValidationError("report header does not match the sweep schema");
    const auto names = split(kCsvHeader);
    SweepReport rep;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        const auto f = split(line);
        if (f.size() != names.size())
            throw ValidationError("report line " + std::to_string(lineno) + " has " +
                                  std::to_string(f.size()) + " fields, expected " +
                                  std::to_string(names.size()));
        SweepRow r;
        std::size_t k = 0;
        auto next = [&] {
            const double v = num(f[k], names[k]);
            ++k;
            return v;
        };
        r.epsilon = next();
        r.c.alpha = next();
        r.c.n = static_cast<int>(next());
        r.c.refine = static_cast<int>(next());
        r.c.cutoff = cutoff_variant_from_string(f[k++]);
        r.dofs = static_cast<std::size_t>(next());
        r.iters = static_cast<int>(next());
        for (double *v : {&r.force_volume, &r.force_boundary, &r.limit_force, &r.energy,
                          &r.limit_energy, &r.corr_c1, &r.corr_c2, &r.corr_c3, &r.avg_phi_c2,
                          &r.limit_avg_phi_c2, &r.avg_dx2_c1, &r.limit_avg_dx2_c1,
                          &r.avg_dx2_c3, &r.limit_avg_dx2_c3, &r.norm_eps_dx1_c13,
                          &r.norm_dx2_c13, &r.norm_grad_c2, &r.norm_phi, &r.walltime_s})
            *v = next();
        r.error = f[k];
        r.phi_min = r.phi_max = kNaN;
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

SweepReport read_report_csv_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read report " + path);
    return read_report_csv(in);
}

void write_extrema_header(std::ostream &os) { os << "alpha,n,refine,cutoff,phi_min,phi_max\n"; }

void write_extrema_row(std::ostream &os, const SweepRow &r) {
    put(os, r.c.alpha);
    os << ',' << r.c.n << ',' << r.c.refine << ',' << to_string(r.c.cutoff) << ',';
    put(os, r.phi_min);
    os << ',';
    put(os, r.phi_max);
    os << '\n';
}

void read_extrema_csv(std::istream &is, SweepReport &report) {
    std::string line;
    std::getline(is, line);
    if (line.rfind("alpha,n,refine,cutoff,phi_min,phi_max", 0) != 0)
        throw ValidationError("extrema header does not match");
    std::map<SweepCase, std::pair<double, double>> got;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 6)
            throw ValidationError("malformed extrema line");
        SweepCase c{num(f[0], "alpha"), static_cast<int>(num(f[1], "n")),
                    static_cast<int>(num(f[2], "refine")), cutoff_variant_from_string(f[3])};
        got[c] = {num(f[4], "phi_min"), num(f[5], "phi_max")};
    }
    for (auto &r : report.rows) {
        const auto it = got.find(r.c);
        r.phi_min = it == got.end() ? kNaN : it->second.first;
        r.phi_max = it == got.end() ? kNaN : it->second.second;
    }
}

// ---------------------------------------------------------------- criteria

Criteria parse_criteria(const std::string &json_text) {
    using nlohmann::json;
    const json t = json::parse(json_text, nullptr, false, true);
    if (t.is_discarded() || !t.is_object())
        throw ValidationError("criteria file is not a JSON object");
    Criteria c;
    std::map<std::string, double *> reals{
        {"alpha_critical", &c.alpha_critical},   {"alpha_super", &c.alpha_super},
        {"limit_force", &c.limit_force},         {"limit_energy", &c.limit_energy},
        {"force_rel_tol", &c.force_rel_tol},     {"corrector_ratio", &c.corrector_ratio},
        {"energy_rel_tol", &c.energy_rel_tol},   {"avg_phi_tol", &c.avg_phi_tol},
        {"avg_dx2_tol", &c.avg_dx2_tol},         {"study_alpha", &c.study_alpha},
        {"equality_tol", &c.equality_tol},       {"cutoff_gap_tol", &c.cutoff_gap_tol},
        {"linear_tol", &c.linear_tol},           {"max_principle_slack", &c.max_principle_slack},
        {"norm_band", &c.norm_band}};
    std::map<std::string, int *> ints{{"final_n", &c.final_n},
                                      {"ratio_n", &c.ratio_n},
                                      {"base_refine", &c.base_refine},
                                      {"study_n", &c.study_n}};
    std::vector<std::string> errors;
    for (const auto &[key, val] : t.items()) {
        if (auto it = reals.find(key); it != reals.end()) {
            if (val.is_number())
                *it->second = val.get<double>();
            else
                errors.push_back(key + ": expected number");
        } else if (auto jt = ints.find(key); jt != ints.end()) {
            if (val.is_number_integer())
                *jt->second = val.get<int>();
            else
                errors.push_back(key + ": expected integer");
        } else if (key == "base_cutoff") {
            if (val.is_string())
                c.base_cutoff = cutoff_variant_from_string(val.get<std::string>());
            else
                errors.push_back(key + ": expected string");
        } else {
            errors.push_back(key + ": unknown key");
        }
    }
    if (!errors.empty())
        throw ValidationError(std::move(errors));
    return c;
}

Criteria load_criteria(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read criteria " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_criteria(ss.str());
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool strictly_decreasing_tail(const std::vector<double> &v, std::size_t tail) {
    if (v.size() < tail)
        return false;
    for (std::size_t i = v.size() - tail + 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1]))
            return false;
    return true;
}

bool row_ok(const SweepRow &r) { return r.error.empty(); }

// Base rows of one alpha sorted by n.
std::vector<const SweepRow *> series(const SweepReport &rep, const Criteria &cr, double alpha) {
    std::vector<const SweepRow *> out;
    for (const auto &r : rep.rows)
        if (r.c.alpha == alpha && r.c.refine == cr.base_refine && r.c.cutoff == cr.base_cutoff)
            out.push_back(&r);
    std::sort(out.begin(), out.end(), [](auto *a, auto *b) { return a->c.n < b->c.n; });
    return out;
}

const SweepRow *find_n(const std::vector<const SweepRow *> &s, int n) {
    for (auto *r : s)
        if (r->c.n == n)
            return r;
    return nullptr;
}

Verdict missing(const std::string &name, double threshold, const std::string &what) {
    return {name, kNaN, threshold, false, "missing or failed rows: " + what};
}

// Verdict on a series: |value - target| strictly decreasing over the last
// three n and relative error at the final n within tol.
Verdict convergence(const std::string &name, const std::vector<const SweepRow *> &s,
                    const Criteria &cr, double SweepRow::*field, double target, double tol) {
    if (s.size() < 3 || !find_n(s, cr.final_n))
        return missing(name, tol, "need 3 n values ending at n=" + std::to_string(cr.final_n));
    std::vector<double> err;
    for (auto *r : s) {
        if (!row_ok(*r))
            return missing(name, tol, "n=" + std::to_string(r->c.n) + " failed");
        err.push_back(std::abs(r->*field - target));
    }
    const double rel = std::abs(find_n(s, cr.final_n)->*field - target) / std::abs(target);
    const bool mono = strictly_decreasing_tail(err, 3);
    std::string d = "errors over n:";
    for (std::size_t i = 0; i < s.size(); ++i)
        d += " " + std::to_string(s[i]->c.n) + ":" + fmt(err[i]);
    d += mono ? "; last three strictly decreasing" : "; last three NOT strictly decreasing";
    return {name, rel, tol, mono && rel <= tol, d};
}

} // namespace

std::vector<Verdict> check_report(const SweepReport &rep, const Criteria &cr,
                                  const CheckExtras &extras) {
    std::vector<Verdict> out;

    // completeness: every row solved and finite in the columns it must carry
    {
        std::size_t bad = 0;
        std::string first;
        for (const auto &r : rep.rows) {
            bool ok = row_ok(r) && std::isfinite(r.force_volume) && std::isfinite(r.energy);
            if (!ok && first.empty())
                first = case_label(r.c) + (r.error.empty() ? "" : ": " + r.error);
            bad += !ok;
        }
        const bool ok = bad == 0 && !rep.rows.empty();
        out.push_back({"c0_report_complete", static_cast<double>(bad), 0.0, ok,
                       rep.rows.empty() ? "report has no rows"
                       : ok             ? std::to_string(rep.rows.size()) + " rows, none failed"
                                        : std::to_string(bad) + " incomplete rows, first " + first});
    }

    const auto crit = series(rep, cr, cr.alpha_critical);
    const auto sup = series(rep, cr, cr.alpha_super);

    out.push_back(convergence("c1_force_alpha" + fmt(cr.alpha_critical), crit, cr,
                              &SweepRow::force_volume, cr.limit_force, cr.force_rel_tol));
    out.push_back(convergence("c2_force_alpha" + fmt(cr.alpha_super), sup, cr,
                              &SweepRow::force_volume, cr.limit_force, cr.force_rel_tol));

    // 3: correctors
    {
        const std::string name = "c3_corrector_decay";
        bool ok = true;
        double worst = 0.0;
        std::string d;
        for (const auto *s : {&crit, &sup}) {
            const auto *fin = find_n(*s, cr.final_n), *base = find_n(*s, cr.ratio_n);
            if (s->size() < 3 || !fin || !base) {
                ok = false;
                worst = kNaN;
                d += "missing rows; ";
                continue;
            }
            for (auto m : {&SweepRow::corr_c1, &SweepRow::corr_c2, &SweepRow::corr_c3}) {
                std::vector<double> v;
                for (auto *r : *s)
                    v.push_back(r->*m);
                const double ratio = fin->*m / base->*m;
                const bool mono = strictly_decreasing_tail(v, 3);
                ok = ok && mono && ratio <= cr.corrector_ratio && std::isfinite(ratio);
                worst = std::isnan(worst) ? worst : std::max(worst, ratio);
                const char *label = m == &SweepRow::corr_c1   ? "c1"
                                    : m == &SweepRow::corr_c2 ? "c2"
                                                              : "c3";
                d += "alpha=" + fmt(s->front()->c.alpha) + " " + label + " ratio " + fmt(ratio) +
                     (mono ? "" : " (not decreasing)") + "; ";
            }
        }
        out.push_back({name, worst, cr.corrector_ratio, ok, d});
    }

    // 4: energy
    {
        const std::string name = "c4_energy_alpha" + fmt(cr.alpha_critical);
        const auto *fin = find_n(crit, cr.final_n);
        if (!fin || !row_ok(*fin)) {
            out.push_back(missing(name, cr.energy_rel_tol, "final n"));
        } else {
            const double rel = std::abs(fin->energy - cr.limit_energy) / cr.limit_energy;
            out.push_back({name, rel, cr.energy_rel_tol, rel <= cr.energy_rel_tol,
                           "energy " + fmt(fin->energy) + " vs " + fmt(cr.limit_energy) +
                               " (report limit column " + fmt(fin->limit_energy) + ")"});
        }
    }

    // 5: weak averages
    {
        const auto *fin = find_n(crit, cr.final_n);
        struct Part {
            const char *name;
            double SweepRow::*value;
            double SweepRow::*limit;
            double tol;
        };
        for (const Part &p :
             {Part{"c5_avg_phi_c2", &SweepRow::avg_phi_c2, &SweepRow::limit_avg_phi_c2,
                   cr.avg_phi_tol},
              Part{"c5_avg_dx2_c1", &SweepRow::avg_dx2_c1, &SweepRow::limit_avg_dx2_c1,
                   cr.avg_dx2_tol},
              Part{"c5_avg_dx2_c3", &SweepRow::avg_dx2_c3, &SweepRow::limit_avg_dx2_c3,
                   cr.avg_dx2_tol}}) {
            if (!fin || !row_ok(*fin)) {
                out.push_back(missing(p.name, p.tol, "final n"));
                continue;
            }
            const double err = std::abs(fin->*p.value - fin->*p.limit);
            out.push_back({p.name, err, p.tol, err <= p.tol,
                           fmt(fin->*p.value) + " vs limit " + fmt(fin->*p.limit)});
        }
    }

    // 6 and 7: fixed-epsilon refinement study
    {
        std::map<int, std::map<CutoffVariant, const SweepRow *>> study;
        for (const auto &r : rep.rows)
            if (r.c.n == cr.study_n && r.c.alpha == cr.study_alpha)
                study[r.c.refine][r.c.cutoff] = &r;
        std::vector<int> levels;
        std::vector<double> eq_gap, cut_gap;
        bool complete = true;
        for (const auto &[lv, by] : study) {
            const auto lin = by.find(CutoffVariant::TensorLinear);
            const auto smo = by.find(CutoffVariant::TensorSmoothstep);
            if (lin == by.end() || smo == by.end() || !row_ok(*lin->second) ||
                !row_ok(*smo->second)) {
                complete = false;
                continue;
            }
            const double fv = lin->second->force_volume;
            levels.push_back(lv);
            eq_gap.push_back(std::abs(fv - lin->second->force_boundary) / std::abs(fv));
            cut_gap.push_back(std::abs(fv - smo->second->force_volume) / std::abs(fv));
        }
        auto verdict = [&](const std::string &name, const std::vector<double> &g, double tol) {
            if (!complete || levels.size() < 3)
                return missing(name, tol, "study needs 3 levels with both cutoffs");
            const bool mono = strictly_decreasing_tail(g, g.size());
            std::string d = "gap over levels:";
            for (std::size_t i = 0; i < g.size(); ++i)
                d += " " + std::to_string(levels[i]) + ":" + fmt(g[i]);
            d += mono ? "; decreasing" : "; NOT decreasing";
            return Verdict{name, g.back(), tol, mono && g.back() <= tol, d};
        };
        out.push_back(verdict("c6_proposition_equality", eq_gap, cr.equality_tol));
        out.push_back(verdict("c7_cutoff_independence", cut_gap, cr.cutoff_gap_tol));
    }

    // 8: solver exactness
    if (extras.linear_fixture_error)
        out.push_back({"c8_linear_fixture", *extras.linear_fixture_error, cr.linear_tol,
                       *extras.linear_fixture_error <= cr.linear_tol,
                       "worst relative nodal error on affine fixtures"});
    else
        out.push_back(missing("c8_linear_fixture", cr.linear_tol, "fixture not run"));
    {
        const std::string name = "c8_max_principle";
        if (!extras.have_extrema) {
            out.push_back(missing(name, cr.max_principle_slack, "no extrema file"));
        } else {
            double worst = 0.0;
            std::string where = "none";
            bool ok = true;
            for (const auto &r : rep.rows) {
                if (!std::isfinite(r.phi_min) || !std::isfinite(r.phi_max)) {
                    ok = false;
                    where = "no extrema for " + case_label(r.c);
                    continue;
                }
                const double over = std::max(-r.phi_min, r.phi_max - 1.0);
                if (over > worst) {
                    worst = over;
                    where = case_label(r.c);
                }
            }
            out.push_back({name, worst, cr.max_principle_slack,
                           ok && worst <= cr.max_principle_slack,
                           "largest overshoot beyond [0,1]: " + where});
        }
    }

    // 9: norm columns stay within a band across n
    {
        double worst = 0.0;
        bool ok = true;
        std::string d;
        for (const auto *s : {&crit, &sup}) {
            if (s->size() < 3) {
                ok = false;
                d += "missing series; ";
                continue;
            }
            struct Col {
                const char *name;
                double SweepRow::*f;
            };
            for (const Col &c : {Col{"norm_eps_dx1_c13", &SweepRow::norm_eps_dx1_c13},
                                 Col{"norm_dx2_c13", &SweepRow::norm_dx2_c13},
                                 Col{"norm_grad_c2", &SweepRow::norm_grad_c2},
                                 Col{"norm_phi", &SweepRow::norm_phi}}) {
                double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                for (auto *r : *s) {
                    lo = std::min(lo, r->*c.f);
                    hi = std::max(hi, r->*c.f);
                }
                const double band = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
                worst = std::max(worst, band);
                if (!(band <= cr.norm_band)) {
                    ok = false;
                    d += "alpha=" + fmt(s->front()->c.alpha) + " " + c.name + " spans factor " +
                         fmt(band) + "; ";
                }
            }
        }
        out.push_back({"c9_norm_boundedness", worst, cr.norm_band, ok,
                       d.empty() ? "all columns within the band" : d});
    }

    // 10: determinism
    if (extras.repeat_identical)
        out.push_back({"c10_determinism", *extras.repeat_identical ? 0.0 : 1.0, 0.0,
                       *extras.repeat_identical,
                       *extras.repeat_identical ? "repeat run produced identical bytes"
                                                : "repeat run differs"});
    return out;
}

std::string verdicts_json(const std::vector<Verdict> &verdicts, int indent) {
    using nlohmann::json;
    json a = json::array();
    for (const auto &v : verdicts) {
        json o = {{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}};
        // NaN is not JSON
        o["measured"] = std::isfinite(v.measured) ? json(v.measured) : json(nullptr);
        o["threshold"] = v.threshold;
        a.push_back(o);
    }
    return a.dump(indent);
}

bool all_pass(const std::vector<Verdict> &verdicts) {
    return !verdicts.empty() &&
           std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict &v) { return v.pass; });
}

double linear_fixture_error(const SolverSettings &settings) {
    SolverSettings s = settings;
    s.tol = std::min(s.tol, 1e-13);
    struct Fixture {
        double width, x2min, x2max;
        Region region;
        AnisotropicCoeffs::Pair coeffs;
        Refinement refine;
    };
    Refinement graded;
    graded.zeta_grading = 1.4;
    graded.middle_grading = 1.2;
    graded.corner_cell = 0.0;
    const double ea = std::pow(1.0 / 16.0, 2.0);
    const std::vector<Fixture> fixtures{
        {1.0, 1.0, 4.0, Region::C2, {1.0, 1.0}, Refinement::uniform(8)},
        {1.0, 1.0, 4.0, Region::C2, {1.0, 1.0}, graded},
        {0.25, 1.0, 2.0, Region::C1, {ea, 1.0 / ea}, Refinement::uniform(6)},
        {0.25, 3.0, 4.0, Region::C3, {ea, 1.0 / ea}, graded},
        {1.0, 2.0, 3.0, Region::C2, {1.2, 1.0 / 1.2}, graded.nested(2)},
    };
    double worst = 0.0;
    for (const auto &f : fixtures) {
        auto mesh = std::make_shared<const TensorMesh>(
            generate_mesh(strip_domain(f.width, f.x2min, f.x2max, f.region), f.refine));
        AnisotropicCoeffs c;
        c.by_region.fill({1.0, 1.0});
        c.by_region[static_cast<int>(f.region)] = f.coeffs;
        const auto field = solve(assemble(mesh, c), s);
        for (int j = 0; j < mesh->nodes_x2(); ++j)
            for (int i = 0; i < mesh->nodes_x1(); ++i) {
                const double exact = (mesh->x2[j] - f.x2min) / (f.x2max - f.x2min);
                worst = std::max(worst, std::abs(field.at(i, j) - exact));
            }
    }
    // the exact fields have maximum 1, so this is also the relative error
    return worst;
}

} // namespace combdrive
