#include "combdrive/params.hpp"

#include "combdrive/errors.hpp"

#include <cmath>
#include <numeric>

namespace combdrive {

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(std::accumulate(violations.begin(), violations.end(), std::string(),
                            [](std::string acc, const std::string &v) {
                                return acc.empty() ? v : acc + "; " + v;
                            })),
      violations_(std::move(violations)) {}

BudgetError::BudgetError(std::size_t required, std::size_t budget)
    : Error("mesh needs " + std::to_string(required) + " nodes, budget is " +
            std::to_string(budget)),
      required_(required), budget_(budget) {}

double CombParams::gap() const { return std::pow(epsilon(), alpha); }

double CombParams::d_eps() const { return (height() - 2.0 * gap()) / (height() - 2.0); }

std::vector<std::string> validate(const CombParams &p) {
    std::vector<std::string> out;
    auto check = [&](bool ok, const char *msg) {
        if (!ok)
            out.emplace_back(msg);
    };
    for (double z : p.zeta)
        if (!std::isfinite(z)) {
            out.emplace_back("zeta entries must be finite");
            return out;
        }
    check(p.zeta[0] > 0.0, "0 < zeta1 violated");
    check(p.zeta[0] < p.zeta[1], "zeta1 < zeta2 violated");
    check(p.zeta[1] < p.zeta[2], "zeta2 < zeta3 violated");
    check(p.zeta[2] < p.zeta[3], "zeta3 < zeta4 violated");
    check(p.zeta[3] < 1.0, "zeta4 < 1 violated");
    check(std::isfinite(p.L) && p.L > 0.0, "L > 0 violated");
    check(std::isfinite(p.l[0]) && p.l[0] > 0.0, "l1 > 0 violated");
    check(p.l[0] + 2.0 < p.l[1], "l1+2 < l2 violated");
    check(p.l[1] < p.l[2], "l2 < l3 violated");
    check(std::isfinite(p.alpha) && p.alpha >= 0.0, "alpha >= 0 violated");
    check(p.n >= 1, "n >= 1 violated");
    if (out.empty() && !(p.height() - 2.0 * p.gap() > 0.0))
        out.emplace_back("l2-l1-2*epsilon^alpha > 0 violated");
    return out;
}

void require_valid(const CombParams &p) {
    auto v = validate(p);
    if (!v.empty())
        throw ValidationError(std::move(v));
}

std::string regime_note(const CombParams &p) {
    if (p.in_proven_regime())
        return {};
    return "alpha = " + std::to_string(p.alpha) +
           " is outside proven regime (alpha >= 2); limit oracles do not apply";
}

} // namespace combdrive
