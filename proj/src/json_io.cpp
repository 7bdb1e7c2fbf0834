#include "hsdim/json_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>

namespace hsdim {

namespace {

nlohmann::json rat_json(const Rational& q) { return format_rational(q); }

Rational rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational{j.get<std::int64_t>()};
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected rational as \"p/q\" string or integer");
}

nlohmann::json point_json(const Point& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p) arr.push_back(rat_json(c));
    return arr;
}

Point point_from_json(const nlohmann::json& j) {
    Point p;
    for (const auto& c : j) p.push_back(rat_from_json(c));
    return p;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

nlohmann::json bigint_to_json(const BigInt& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
        return n.convert_to<std::int64_t>();
    return n.str();
}

nlohmann::json to_json(const SetModel& model) {
    return std::visit(
        [](const auto& n) -> nlohmann::json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FinitePoints>) {
                auto pts = nlohmann::json::array();
                for (const auto& p : n.points) pts.push_back(point_json(p));
                return {{"kind", "finite"}, {"dim", n.dim}, {"points", pts}};
            } else if constexpr (std::is_same_v<T, DigitSet>) {
                nlohmann::json allowed = nlohmann::json::object();
                std::uint64_t full = (n.base == 64) ? ~0ull : ((1ull << n.base) - 1);
                for (int r = 1; r <= n.depth; ++r) {
                    std::uint64_t mask = n.mask_at(r);
                    if (mask == full) continue;  // free position, canonical omission
                    auto digits = nlohmann::json::array();
                    for (int g = 0; g < n.base; ++g)
                        if (mask >> g & 1) digits.push_back(g);
                    allowed[std::to_string(r)] = digits;
                }
                return {{"kind", "digit"}, {"base", n.base}, {"depth", n.depth}, {"allowed", allowed}};
            } else if constexpr (std::is_same_v<T, HarmonicTail>) {
                return {{"kind", "harmonic"}, {"n_max", n.n_max}};
            } else if constexpr (std::is_same_v<T, Product>) {
                return {{"kind", "product"}, {"left", to_json(*n.left)}, {"right", to_json(*n.right)}};
            } else {
                return {{"kind", "affine"},
                        {"scale", rat_json(n.scale)},
                        {"offset", rat_json(n.offset)},
                        {"inner", to_json(*n.inner)}};
            }
        },
        model.node());
}

SetModelPtr model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("set description: expected object with \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") {
        std::vector<Point> pts;
        for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
        int dim = j.contains("dim") ? j.at("dim").get<int>() : (pts.empty() ? 1 : static_cast<int>(pts[0].size()));
        return make_finite(dim, std::move(pts));
    }
    if (kind == "digit") {
        int base = j.at("base").get<int>();
        int depth = j.at("depth").get<int>();
        if (base < 2 || base > 64) throw std::invalid_argument("set description: digit base out of range");
        std::uint64_t full = (base == 64) ? ~0ull : ((1ull << base) - 1);
        std::vector<std::uint64_t> allowed(static_cast<std::size_t>(std::max(depth, 0)), full);
        if (j.contains("allowed")) {
            for (const auto& [key, digits] : j.at("allowed").items()) {
                int r = std::stoi(key);
                if (r < 1 || r > depth) throw std::invalid_argument("set description: digit position out of range");
                std::uint64_t mask = 0;
                for (const auto& g : digits) {
                    int d = g.get<int>();
                    if (d < 0 || d >= base) throw std::invalid_argument("set description: digit out of base");
                    mask |= 1ull << d;
                }
                allowed[static_cast<std::size_t>(r - 1)] = mask;
            }
        }
        return make_digit_set(base, depth, std::move(allowed));
    }
    if (kind == "harmonic") return make_harmonic(j.at("n_max").get<int>());
    if (kind == "product")
        return make_product(model_from_json(j.at("left")), model_from_json(j.at("right")));
    if (kind == "affine")
        return make_affine(rat_from_json(j.at("scale")), rat_from_json(j.at("offset")),
                           model_from_json(j.at("inner")));
    throw std::invalid_argument("set description: unknown kind '" + kind + "'");
}

nlohmann::json to_json(const Schedule& s) {
    auto t = nlohmann::json::array();
    for (const auto& v : s.t) t.push_back(rat_json(v));
    return {{"t", t}, {"m", s.m}};
}

Schedule schedule_from_json(const nlohmann::json& j) {
    std::vector<Rational> t;
    for (const auto& v : j.at("t")) t.push_back(rat_from_json(v));
    std::vector<std::int64_t> m;
    for (const auto& v : j.at("m")) m.push_back(v.get<std::int64_t>());
    return make_schedule(std::move(t), std::move(m));
}

namespace {

nlohmann::json points_json(const std::vector<Point>& pts) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pts) arr.push_back(point_json(p));
    return arr;
}

nlohmann::json radius_json(const BallRadius& r) {
    nlohmann::json j = {{"r_squared", rat_json(r.r2)}};
    if (r.r) j["r"] = rat_json(*r.r);
    return j;
}

}  // namespace

nlohmann::json to_json(const BallCoverCertificate& cert) {
    return {{"radius", radius_json(cert.radius)},
            {"upper", cert.upper},
            {"lower", cert.lower},
            {"exact", cert.exact},
            {"centers", points_json(cert.centers)},
            {"witnesses", points_json(cert.witnesses)}};
}

nlohmann::json to_json(const PackingResult& packing) {
    return {{"radius", radius_json(packing.radius)},
            {"count", packing.count},
            {"exact", packing.exact},
            {"centers", points_json(packing.centers)}};
}

nlohmann::json to_json(const SmallBallCover& cover) {
    return {{"dim", cover.dim},
            {"target_diameter", rat_json(cover.target_diameter)},
            {"small_diameter", rat_json(cover.small_diameter)},
            {"per_axis", cover.per_axis},
            {"bound", bigint_to_json(cover.bound)},
            {"centers", points_json(cover.centers)},
            {"coverage_verified", cover.coverage_verified},
            {"witness_points", cover.witness_points}};
}

nlohmann::json to_json(const DimensionEstimate& est) {
    return {{"slope", est.slope},
            {"intercept", est.intercept},
            {"residual", est.residual},
            {"window_max_scale", rat_json(est.window_max_scale)},
            {"window_min_scale", rat_json(est.window_min_scale)},
            {"mode", est.mode == FitMode::AllScales ? "all-scales" : "liminf-subsequence"},
            {"points_used", est.points_used}};
}

nlohmann::json to_json(const ClaimReport& report) {
    return {{"id", report.id},
            {"statement", report.statement},
            {"inputs", report.inputs},
            {"computed", report.computed},
            {"verdict", to_string(report.verdict)},
            {"pass", report.pass()},
            {"notes", report.notes}};
}

std::string format_power_value(const PowerValue& v) {
    if (v.coeff == 0) return "0";
    double lg10 = (log_rat(v.coeff) + to_double(v.exponent) * log_rat(v.base)) / std::log(10.0);
    if (lg10 > -280 && lg10 < 280) return format_double(v.approx());
    double e = std::floor(lg10);
    double mant = std::pow(10.0, lg10 - e);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12fe%+05lld", mant, static_cast<long long>(e));
    return buf;
}

nlohmann::json to_json(const PremeasureProfile& profile) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const auto& e = profile.entries[i];
        nlohmann::json row = {{"scale", rat_json(e.scale)},
                              {"count_lower", bigint_to_json(e.count_lower)},
                              {"count_upper", bigint_to_json(e.count_upper)},
                              {"exact", e.exact}};
        if (e.level >= 0) row["level"] = e.level;
        entries.push_back(std::move(row));
    }
    nlohmann::json values = nlohmann::json::array();
    for (const auto& t : profile.t_grid)
        for (std::size_t i = 0; i < profile.entries.size(); ++i)
            values.push_back({{"t", rat_json(t)},
                              {"scale", rat_json(profile.entries[i].scale)},
                              {"value", format_power_value(profile.value(i, t))}});
    nlohmann::json j = {{"kind", profile.kind == ProfileKind::Ball ? "ball" : "cube"},
                        {"entries", entries},
                        {"values", values}};
    if (profile.base) j["base"] = *profile.base;
    return j;
}

std::string counts_csv(const PremeasureProfile& profile) {
    std::string out = "scale,count,lower,upper\n";
    for (const auto& e : profile.entries) {
        out += format_rational(e.scale);
        out += ',';
        out += e.count_upper.str();
        out += ',';
        out += e.count_lower.str();
        out += ',';
        out += e.count_upper.str();
        out += '\n';
    }
    return out;
}

std::string values_csv(const PremeasureProfile& profile) {
    std::string out = "t,scale,value\n";
    for (const auto& t : profile.t_grid) {
        for (std::size_t i = 0; i < profile.entries.size(); ++i) {
            out += format_rational(t);
            out += ',';
            out += format_rational(profile.entries[i].scale);
            out += ',';
            out += format_power_value(profile.value(i, t));
            out += '\n';
        }
    }
    return out;
}

}  // namespace hsdim
