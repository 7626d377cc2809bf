#pragma once

#include <array>
#include <string>
#include <vector>

namespace combdrive {

/// Admissible comb-drive parameter set.
///
/// Positions `zeta` are fractions of one finger period; `l` holds the three
/// vertical levels (stator backbone top, rotor backbone underside, rotor
/// backbone top). The finger period is `epsilon() = L / n` and the
/// rotor/stator gap is `epsilon()^alpha`.
struct CombParams {
    std::array<double, 4> zeta{0.2, 0.4, 0.6, 0.8};
    double L = 1.0;
    std::array<double, 3> l{1.0, 4.0, 5.0};
    double alpha = 2.0;
    int n = 8;

    double epsilon() const { return L / n; }
    double gap() const;
    double meas_omega_a() const { return zeta[1] - zeta[0]; }
    double meas_omega_b() const { return zeta[3] - zeta[2]; }
    double height() const { return l[1] - l[0]; }

    // (l2 - l1 - 2 eps^alpha) / (l2 - l1 - 2)
    double d_eps() const;
    double d_eps_limit() const { return height() / (height() - 2.0); }

    /// Limit theorems only hold for alpha >= 2; smaller exponents are
    /// exploratory.
    bool in_proven_regime() const { return alpha >= 2.0; }

    bool operator==(const CombParams &) const = default;
};

/// Every violated admissibility rule, empty when the parameters are usable.
std::vector<std::string> validate(const CombParams &p);

/// Throws ValidationError carrying the violation list.
void require_valid(const CombParams &p);

/// Human-readable note for exploratory runs, empty inside the proven regime.
std::string regime_note(const CombParams &p);

} // namespace combdrive
