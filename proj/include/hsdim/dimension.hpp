#pragma once

#include "hsdim/premeasure.hpp"

namespace hsdim {

enum class FitMode { AllScales, LiminfSubsequence };

// Least-squares slope of log(count) against log(1/scale). The liminf mode
// restricts the fit to the scales achieving record lows of the per-scale
// quotient log(count)/log(1/scale) — the subsequence which carries the
// liminf when counts oscillate.
struct DimensionEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // max |log count - fitted|, never hidden
    Rational window_max_scale{0};
    Rational window_min_scale{0};
    FitMode mode = FitMode::AllScales;
    int points_used = 0;
};

DimensionEstimate estimate_dimension(const PremeasureProfile& profile, FitMode mode = FitMode::AllScales,
                                     bool use_upper = true);

}  // namespace hsdim
