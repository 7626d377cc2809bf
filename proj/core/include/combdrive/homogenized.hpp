#pragma once

#include "combdrive/fem.hpp"

#include <functional>

namespace combdrive {

/// Closed-form limit profiles on the unit cell.
class LimitProfiles {
public:
    explicit LimitProfiles(const CombParams &p);

    /// Periodic, 1 on the rotor interval, 0 on the stator interval, affine between.
    double phi2(double y) const;
    double dphi2(double y) const;
    /// x2 - l1 above the rotor interval, else 0.
    double phi1(double x2, double y) const;
    double dx2_phi1(double y) const;
    /// x2 + 1 - l2 above the stator interval, else 1.
    double phi3(double x2, double y) const;
    double dx2_phi3(double y) const;

    bool in_rotor(double y) const;
    bool in_stator(double y) const;

private:
    static double frac(double y);
    CombParams p_;
};

/// L (meas omega_a + meas omega_b). RegimeError below alpha = 2.
double limit_force(const CombParams &p);
/// Energy limit; the middle-layer term only survives at alpha = 2.
double limit_energy(const CombParams &p);

struct WeakAverages {
    double mean_phi_c2 = 0.0;
    double mean_dx2_c1 = 0.0;
    double mean_dx2_c3 = 0.0;
    std::function<double(double)> mean_phi_c1; // of x2
    std::function<double(double)> mean_phi_c3; // of x2
};

WeakAverages weak_averages(const CombParams &p);

/// Field on the full rectangle of one layer, finger footprints filled with
/// the constant electrode value. Stored on the node rows of that layer.
struct ExtendedField {
    std::shared_ptr<const TensorMesh> mesh;
    Region region = Region::C2;
    int row_begin = 0; // first node row
    int row_end = 0;   // one past the last node row
    std::vector<double> values; // (row - row_begin) * nodes_x1 + i

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(j - row_begin) * mesh->nodes_x1() + i];
    }
    double mean() const;
    double mean_dx2() const;
};

ExtendedField extend(const DiscreteField &field, const CombParams &p, Region region);

struct CorrectorNorms {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Squared L2 distances between the solution gradient and the oscillating
/// limit gradients, one per layer.
CorrectorNorms corrector_norms(const DiscreteField &field, const CombParams &p,
                               int quad_order = 2);

struct DiscreteAverages {
    double avg_phi_c2 = 0.0; // eps^((alpha-2)/2) times the mean of the extended middle field
    double avg_dx2_c1 = 0.0;
    double avg_dx2_c3 = 0.0;
};

DiscreteAverages discrete_weak_averages(const DiscreteField &field, const CombParams &p);

} // namespace combdrive
