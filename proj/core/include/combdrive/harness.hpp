#pragma once

#include "combdrive/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace combdrive {

struct SweepCase {
    double alpha = 2.0;
    int n = 8;
    int refine = 1; // nesting level of the base refinement
    CutoffVariant cutoff = CutoffVariant::TensorLinear;

    auto key() const { return std::tuple(alpha, n, refine, static_cast<int>(cutoff)); }
    bool operator<(const SweepCase &o) const { return key() < o.key(); }
    bool operator==(const SweepCase &o) const { return key() == o.key(); }
};

/// One CSV row. Failed cases keep NaN diagnostics and a message in `error`.
struct SweepRow {
    SweepCase c;
    double epsilon = 0.0;
    std::size_t dofs = 0;
    int iters = 0;
    double force_volume = 0.0, force_boundary = 0.0, limit_force = 0.0;
    double energy = 0.0, limit_energy = 0.0;
    double corr_c1 = 0.0, corr_c2 = 0.0, corr_c3 = 0.0;
    double avg_phi_c2 = 0.0, limit_avg_phi_c2 = 0.0;
    double avg_dx2_c1 = 0.0, limit_avg_dx2_c1 = 0.0;
    double avg_dx2_c3 = 0.0, limit_avg_dx2_c3 = 0.0;
    double norm_eps_dx1_c13 = 0.0, norm_dx2_c13 = 0.0, norm_grad_c2 = 0.0, norm_phi = 0.0;
    double walltime_s = 0.0;
    std::string error;
    // nodal extremes of the rescaled field; written to the extrema file only
    double phi_min = 0.0, phi_max = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
};

/// Cases of the main sweep plus the refinement study, deduplicated and in
/// row order (alpha, n, refine, cutoff).
std::vector<SweepCase> sweep_cases(const Config &cfg);

/// Solves one case and evaluates every diagnostic and oracle. Library
/// errors are caught and recorded in the row.
SweepRow run_case(const Config &cfg, const SweepCase &c);

/// Tolerance for 0 <= phi <= 1 at the nodes; the iterate only satisfies the
/// discrete equations to solver accuracy.
constexpr double kMaxPrincipleSlack = 1e-9;

struct SweepSinks {
    std::ostream *csv = nullptr;     // report rows, flushed as soon as they are in order
    std::ostream *extrema = nullptr; // alpha,n,refine,cutoff,phi_min,phi_max
    std::ostream *log = nullptr;     // progress and max-principle warnings
};

/// Runs the cases on `cfg.sweep.workers` threads. Rows reach the sinks in
/// case order regardless of completion order.
SweepReport run_sweep(const Config &cfg, const SweepSinks &sinks = {});

extern const char *const kCsvHeader;

void write_csv_header(std::ostream &os);
void write_csv_row(std::ostream &os, const SweepRow &r);
std::string to_csv(const SweepReport &report);

/// Parses a report CSV. The header must match exactly.
SweepReport read_report_csv(std::istream &is);
SweepReport read_report_csv_file(const std::string &path);

void write_extrema_header(std::ostream &os);
void write_extrema_row(std::ostream &os, const SweepRow &r);
/// Fills phi_min/phi_max of matching rows; rows without an entry get NaN.
void read_extrema_csv(std::istream &is, SweepReport &report);

/// Thresholds of the acceptance rules.
struct Criteria {
    double alpha_critical = 2.0;
    double alpha_super = 3.0;
    double limit_force = 0.4;
    double limit_energy = 22.9;
    int final_n = 32;
    int ratio_n = 8;
    int base_refine = 1;
    CutoffVariant base_cutoff = CutoffVariant::TensorLinear;
    double force_rel_tol = 0.15;
    double corrector_ratio = 0.5;
    double energy_rel_tol = 0.10;
    double avg_phi_tol = 0.05;
    double avg_dx2_tol = 0.02;
    int study_n = 8;
    double study_alpha = 2.0;
    double equality_tol = 0.10;
    double cutoff_gap_tol = 0.02;
    double linear_tol = 1e-10;
    double max_principle_slack = kMaxPrincipleSlack;
    double norm_band = 2.0;
};

Criteria parse_criteria(const std::string &json_text);
Criteria load_criteria(const std::string &path);

struct Verdict {
    std::string name; // prefixed with the criterion number, e.g. "c5_avg_dx2_c1"
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

/// Results that are not part of the report CSV.
struct CheckExtras {
    std::optional<double> linear_fixture_error;
    bool have_extrema = false;           // phi_min/phi_max of the rows are populated
    std::optional<bool> repeat_identical; // second run of the sweep gave the same bytes
};

std::vector<Verdict> check_report(const SweepReport &report, const Criteria &criteria,
                                  const CheckExtras &extras = {});

std::string verdicts_json(const std::vector<Verdict> &verdicts, int indent = 2);
bool all_pass(const std::vector<Verdict> &verdicts);

/// Worst relative nodal error of the solver on fields that are affine in x2
/// (fingerless strips, isotropic and gap-layer anisotropic coefficients,
/// graded and uniform meshes). Zero up to solver tolerance.
double linear_fixture_error(const SolverSettings &settings);

} // namespace combdrive
