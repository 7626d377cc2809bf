#pragma once

#include "combdrive/cutoff.hpp"
#include "combdrive/fem.hpp"

#include <string>

namespace combdrive {

struct PhysicsSettings {
    double epsilon0 = 8.8541878128e-12; // F/m
    double V = 1.0;                     // volts
};

enum class ForceMethod { Volume, Boundary };
std::string to_string(ForceMethod m);

struct ForceResult {
    double scaled_integral = 0.0; // int over rotor boundary of |eps^alpha grad phi|^2 nu2
    double physical_force = 0.0;  // -(epsilon0/2) V^2 scaled_integral
    ForceMethod method = ForceMethod::Volume;
    double epsilon0 = 0.0;
    double V = 0.0;
};

ForceResult make_force(double scaled, ForceMethod method, const PhysicsSettings &physics);

/// Volume form of the rotor force on the rescaled field: the Maxwell stress
/// contracted with the gradient of the oscillated cutoff, layer by layer.
ForceResult force_volume(const DiscreteField &field, const CutoffSpec &cutoff,
                         const CombParams &params, const PhysicsSettings &physics = {},
                         int quad_order = 2);

/// Direct boundary integral over the horizontal rotor faces of a field on the
/// physical vacuum. The normal derivative is extrapolated to the face from
/// the two adjacent cell rows; diagnostic only near the finger corners.
ForceResult force_boundary(const DiscreteField &field, const CombParams &params,
                           const PhysicsSettings &physics = {});
/// Same on an explicit domain (the field's mesh must have been built from it).
ForceResult force_boundary(const DiscreteField &field, const RectilinearDomain &domain,
                           const CombParams &params, const PhysicsSettings &physics = {});

struct NormReport {
    double norm_eps_dx1_c13 = 0.0;   // ||eps^alpha d1 phi||, C1 u C3
    double norm_dx2_c13 = 0.0;       // ||d2 phi||, C1 u C3
    double norm_grad_c2 = 0.0;       // ||eps^(alpha/2) grad phi||, C2
    double norm_phi = 0.0;           // ||phi||, whole vacuum
    double norm_phi_scaled_c2 = 0.0; // ||eps^((alpha-2)/2) phi||, C2
    double energy = 0.0;
};

/// L2 norms and the scaled energy of a rescaled field by Gauss quadrature.
NormReport apriori_norms(const DiscreteField &field, const CombParams &params,
                         int quad_order = 2);

/// Throws ConsistencyError unless the mesh spans the comb of `params`.
void require_matching_mesh(const DiscreteField &field, const CombParams &params,
                           DomainKind expected);

} // namespace combdrive
