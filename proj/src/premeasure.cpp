#include "hsdim/premeasure.hpp"

#include <algorithm>
#include <cmath>

namespace hsdim {

double PowerValue::log_value() const {
    if (coeff <= 0) throw std::domain_error("PowerValue::log_value: zero coefficient");
    return log_rat(coeff) + to_double(exponent) * log_rat(base);
}

double PowerValue::approx() const {
    if (coeff == 0) return 0.0;
    if (den(exponent) == 1) {
        BigInt e = num(exponent);
        if (e >= -64 && e <= 64) return to_double(coeff * pow_rat(base, e.convert_to<std::int64_t>()));
    }
    return std::exp(log_value());
}

int PowerValue::compare(const PowerValue& a, const PowerValue& b) {
    if (a.coeff == 0 || b.coeff == 0) {
        if (a.coeff == b.coeff) return 0;
        return a.coeff == 0 ? -1 : 1;
    }
    BigInt qa = den(a.exponent), qb = den(b.exponent);
    BigInt L = qa * qb / boost::multiprecision::gcd(qa, qb);
    BigInt ea = num(a.exponent) * (L / qa);
    BigInt eb = num(b.exponent) * (L / qb);
    if (L > 64 || ea > 4096 || eb > 4096 || ea < -4096 || eb < -4096)
        throw EngineError("PowerValue::compare: exponents too large for exact comparison");
    auto lift = [&](const PowerValue& v, const BigInt& e) {
        Rational c = pow_rat(v.coeff, L.convert_to<std::int64_t>());
        return c * pow_rat(v.base, e.convert_to<std::int64_t>());
    };
    Rational va = lift(a, ea), vb = lift(b, eb);
    if (va < vb) return -1;
    if (va > vb) return 1;
    return 0;
}

Rational PremeasureProfile::h_arg(std::size_t i) const {
    const auto& e = entries.at(i);
    return kind == ProfileKind::Ball ? 2 * e.scale : e.scale;
}

PowerValue PremeasureProfile::value(std::size_t i, const Rational& t, bool use_upper) const {
    const auto& e = entries.at(i);
    if (t < 0) throw std::invalid_argument("PremeasureProfile::value: negative exponent");
    return PowerValue{Rational(use_upper ? e.count_upper : e.count_lower), h_arg(i), t};
}

namespace {

void check_scales_decreasing(const std::vector<ProfileEntry>& entries) {
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (!(entries[i].scale < entries[i - 1].scale))
            throw std::invalid_argument("premeasure profile: scales must be strictly decreasing");
}

}  // namespace

PremeasureProfile cube_premeasure_profile(const SetModel& model, int base, const std::vector<int>& levels,
                                          std::vector<Rational> t_grid) {
    if (levels.empty()) throw std::invalid_argument("cube_premeasure_profile: empty level list");
    std::vector<int> sorted = levels;
    std::sort(sorted.begin(), sorted.end());
    PremeasureProfile profile;
    profile.kind = ProfileKind::Cube;
    profile.base = base;
    profile.t_grid = std::move(t_grid);
    for (int level : sorted) {
        auto res = cube_count(model, base, level);
        ProfileEntry e;
        e.scale = pow_rat(Rational{1, base}, level);
        e.level = level;
        e.count_lower = res.count;
        e.count_upper = res.count;
        e.exact = true;
        profile.entries.push_back(std::move(e));
    }
    check_scales_decreasing(profile.entries);
    return profile;
}

PremeasureProfile ball_premeasure_profile(std::span<const Point> points, std::vector<Rational> radii,
                                          std::vector<Rational> t_grid, CoverMode mode, int exact_cap) {
    if (radii.empty()) throw std::invalid_argument("ball_premeasure_profile: empty radius list");
    std::sort(radii.begin(), radii.end(), std::greater<Rational>());
    PremeasureProfile profile;
    profile.kind = ProfileKind::Ball;
    profile.t_grid = std::move(t_grid);
    for (const auto& r : radii) {
        if (r <= 0) throw std::invalid_argument("ball_premeasure_profile: radii must be positive");
        BallCoverCertificate cert;
        try {
            cert = ball_cover(points, BallRadius::from_radius(r), mode, exact_cap);
        } catch (const CapExceeded&) {
            // over the exact-mode cap: keep the scale with two-sided greedy bounds
            cert = ball_cover(points, BallRadius::from_radius(r), CoverMode::Greedy, exact_cap);
        }
        ProfileEntry e;
        e.scale = r;
        e.count_lower = cert.exact ? BigInt(cert.upper) : BigInt(cert.lower);
        e.count_upper = BigInt(cert.upper);
        e.exact = cert.exact;
        profile.entries.push_back(std::move(e));
    }
    check_scales_decreasing(profile.entries);
    return profile;
}

PremeasureProfile ball_premeasure_profile(const SetModel& model, int sample_budget,
                                          std::vector<Rational> radii, std::vector<Rational> t_grid,
                                          CoverMode mode, int exact_cap) {
    auto pts = sample_points(model, sample_budget);
    return ball_premeasure_profile(pts, std::move(radii), std::move(t_grid), mode, exact_cap);
}

LiminfEstimate liminf_value(const PremeasureProfile& profile, const Rational& t, bool use_upper) {
    if (profile.entries.size() < 3)
        throw std::invalid_argument("liminf_value: need at least 3 scales");
    std::size_t n = profile.entries.size();
    std::size_t tail_start = n / 2;
    std::optional<PowerValue> best;
    for (std::size_t i = tail_start; i < n; ++i) {
        PowerValue v = profile.value(i, t, use_upper);
        if (!best || PowerValue::compare(v, *best) < 0) best = v;
    }
    LiminfEstimate est;
    est.t = t;
    est.value = *best;
    est.approx = best->approx();
    for (std::size_t i = 0; i < n; ++i) {
        if (PowerValue::compare(profile.value(i, t, use_upper), *best) == 0)
            est.witness_scales.push_back(profile.entries[i].scale);
    }
    return est;
}

}  // namespace hsdim
