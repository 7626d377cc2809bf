#pragma once

#include "combdrive/harness.hpp"

#include <string>

namespace combdrive {

/// Volume force against epsilon (log x, linear y), one line per alpha, with
/// the limit force dashed. Uses refine-1 TENSOR_LINEAR rows only.
std::string force_plot_svg(const SweepReport &report);

/// Corrector norms against epsilon on log-log axes.
std::string corrector_plot_svg(const SweepReport &report);

} // namespace combdrive
