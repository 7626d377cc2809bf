#pragma once

#include "combdrive/cutoff.hpp"
#include "combdrive/diagnostics.hpp"
#include "combdrive/mesh.hpp"
#include "combdrive/sparse.hpp"

#include <string>
#include <vector>

namespace combdrive {

/// Fixed-epsilon refinement study: nested levels and cutoff variants at one n.
struct StudyConfig {
    bool enabled = true;
    int n = 8;
    double alpha = 2.0;
    std::vector<int> levels{1, 2, 4};
    std::vector<CutoffVariant> cutoffs{CutoffVariant::TensorLinear,
                                       CutoffVariant::TensorSmoothstep};
};

struct SweepConfig {
    std::vector<double> alphas{2.0, 3.0};
    std::vector<int> n_values{4, 8, 16, 32};
    std::vector<int> levels{1};
    std::vector<CutoffVariant> cutoffs{CutoffVariant::TensorLinear};
    int workers = 1;
    // wall time is the only nondeterministic column; off by default
    bool record_walltime = false;
    StudyConfig study;
};

/// Everything a run reads from the JSON config. Defaults reproduce the
/// shipped reference sweep.
struct Config {
    CombParams params;
    Refinement refine;
    std::size_t node_budget = kDefaultNodeBudget;
    SolverSettings solver{1e-13};
    CutoffVariant cutoff = CutoffVariant::TensorLinear;
    double cutoff_margin = 1.0;
    PhysicsSettings physics;
    int quadrature = 2;
    bool boundary_force = true;
    SweepConfig sweep;
};

/// Every rule the config breaks (parameters, mesh, solver, sweep lists).
std::vector<std::string> validate(const Config &c);

/// Parses JSON text. Unknown keys, wrong types and invalid values raise
/// ValidationError. `overrides` are dotted `key=value` pairs applied first;
/// values are parsed as JSON when possible, else taken as strings, and must
/// match the type of the key they replace.
Config parse_config(const std::string &json_text, const std::vector<std::string> &overrides = {});
Config load_config(const std::string &path, const std::vector<std::string> &overrides = {});

std::string to_json(const Config &c, int indent = 2);

/// Rectangles, tagged boundary segments and layout.
std::string domain_json(const RectilinearDomain &d, int indent = -1);
/// Grid lines, cell activity and node classes.
std::string mesh_json(const TensorMesh &m, int indent = -1);

} // namespace combdrive
