#pragma once

#include "hsdim/covering.hpp"

#include <optional>
#include <vector>

namespace hsdim {

// Symbolic coeff * base^exponent with nonnegative rational parts, so
// premeasure values like N * (2r)^(1/2) compare exactly (raise both sides to
// the lcm of the exponent denominators).
struct PowerValue {
    Rational coeff;     // >= 0
    Rational base;      // > 0
    Rational exponent;  // >= 0

    double log_value() const;  // natural log; coeff > 0 required
    double approx() const;

    // -1 / 0 / +1; exact.
    static int compare(const PowerValue& a, const PowerValue& b);
};

enum class ProfileKind { Ball, Cube };

struct ProfileEntry {
    Rational scale;  // ball: radius r; cube: cell side b^-level
    int level = -1;  // cube kind only
    BigInt count_lower;
    BigInt count_upper;
    bool exact = true;
};

// Per-scale covering counts with the premeasure values N * h_t(arg) they
// induce, h_t(x) = x^t and arg = 2r (ball) or b^-level (cube).
struct PremeasureProfile {
    ProfileKind kind = ProfileKind::Cube;
    std::optional<int> base;
    std::vector<ProfileEntry> entries;  // scales strictly decreasing
    std::vector<Rational> t_grid;

    Rational h_arg(std::size_t i) const;
    PowerValue value(std::size_t i, const Rational& t, bool use_upper = true) const;
};

PremeasureProfile cube_premeasure_profile(const SetModel& model, int base, const std::vector<int>& levels,
                                          std::vector<Rational> t_grid);

PremeasureProfile ball_premeasure_profile(std::span<const Point> points, std::vector<Rational> radii,
                                          std::vector<Rational> t_grid, CoverMode mode = CoverMode::Exact,
                                          int exact_cap = 64);

// Ball profile over a model via finite truncation (sample_points budget).
PremeasureProfile ball_premeasure_profile(const SetModel& model, int sample_budget,
                                          std::vector<Rational> radii, std::vector<Rational> t_grid,
                                          CoverMode mode = CoverMode::Exact, int exact_cap = 64);

// Radius at which the n-point harmonic truncation needs one ball per point.
inline Rational harmonic_delta(int n) { return Rational{1, std::int64_t(n) + std::int64_t(n) * n}; }

// Tail minimum over the computed scales, with the scales attaining it.
// A desk-scale stand-in for the r->0 liminf, never a proven limit.
struct LiminfEstimate {
    Rational t;
    PowerValue value;
    double approx = 0;
    std::vector<Rational> witness_scales;
    bool proven_limit = false;
};

LiminfEstimate liminf_value(const PremeasureProfile& profile, const Rational& t, bool use_upper = true);

}  // namespace hsdim
