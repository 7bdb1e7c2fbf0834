#include "hsdim/dimension.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace hsdim {

DimensionEstimate estimate_dimension(const PremeasureProfile& profile, FitMode mode, bool use_upper) {
    // usable entries: scale < 1 and count >= 1
    std::vector<double> xs, ys;
    std::vector<Rational> scales;
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const auto& e = profile.entries[i];
        const BigInt& c = use_upper ? e.count_upper : e.count_lower;
        if (e.scale >= 1 || c < 1) continue;
        xs.push_back(-log_rat(e.scale));
        ys.push_back(log_big(c));
        scales.push_back(e.scale);
    }

    if (mode == FitMode::LiminfSubsequence) {
        std::vector<double> fx, fy;
        std::vector<Rational> fs;
        double min_q = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < xs.size(); ++i) {  // scales decreasing, x increasing
            double q = ys[i] / xs[i];
            if (q <= min_q + 1e-12) {
                fx.push_back(xs[i]);
                fy.push_back(ys[i]);
                fs.push_back(scales[i]);
            }
            min_q = std::min(min_q, q);
        }
        xs = std::move(fx);
        ys = std::move(fy);
        scales = std::move(fs);
    }

    DimensionEstimate est;
    est.mode = mode;
    est.points_used = static_cast<int>(xs.size());
    if (xs.empty()) return est;
    est.window_max_scale = scales.front();
    est.window_min_scale = scales.back();
    if (xs.size() == 1) {
        est.intercept = ys[0];
        return est;
    }
    double n = static_cast<double>(xs.size());
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { xm += xs[i]; ym += ys[i]; }
    xm /= n;
    ym /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
    }
    if (sxx > 0) est.slope = sxy / sxx;
    est.intercept = ym - est.slope * xm;
    for (std::size_t i = 0; i < xs.size(); ++i)
        est.residual = std::max(est.residual, std::abs(ys[i] - (est.intercept + est.slope * xs[i])));
    return est;
}

}  // namespace hsdim
