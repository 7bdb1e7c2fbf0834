#pragma once

// Independent brute-force oracles used to pin expected values. These stay on
// the dumbest possible code paths (subset enumeration, digit-string
// enumeration, interval lists) so they share nothing with the engine.

#include "hsdim/covering.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <vector>

namespace hsdim_test {

using hsdim::BigInt;
using hsdim::Point;
using hsdim::Rational;

// Minimum number of closed balls B(x, r) with centers in `pts` covering all
// of `pts`; subset enumeration, pts.size() <= 20.
inline std::int64_t brute_min_cover(const std::vector<Point>& pts, const Rational& r2) {
    int m = static_cast<int>(pts.size());
    if (m == 0) return 0;
    std::vector<std::uint32_t> covers(pts.size(), 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (hsdim::squared_distance(pts[i], pts[j]) <= r2) covers[i] |= 1u << j;
    std::uint32_t all = (m == 32) ? ~0u : ((1u << m) - 1);
    int best = m;
    for (std::uint32_t mask = 1; mask <= all; ++mask) {
        if (std::popcount(mask) >= best) continue;
        std::uint32_t covered = 0;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) covered |= covers[i];
        if (covered == all) best = std::popcount(mask);
    }
    return best;
}

// Maximum subset with pairwise distance >= r.
inline std::int64_t brute_max_packing(const std::vector<Point>& pts, const Rational& r2) {
    int m = static_cast<int>(pts.size());
    std::uint32_t all = (m == 32) ? ~0u : ((1u << m) - 1);
    int best = 0;
    for (std::uint32_t mask = 0; mask <= all; ++mask) {
        if (std::popcount(mask) <= best) continue;
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1))
                    ok = hsdim::squared_distance(pts[i], pts[j]) >= r2;
        if (ok) best = std::popcount(mask);
    }
    return best;
}

// Number of level-k cells hit by a digit set, by walking every base^k digit
// string. base^k must stay small.
inline BigInt brute_digit_cells(const hsdim::DigitSet& ds, int base, int level) {
    REQUIRE(base == ds.base);  // matching-base oracle only
    std::int64_t total = 1;
    for (int i = 0; i < level; ++i) total *= base;
    std::int64_t hits = 0;
    for (std::int64_t p = 0; p < total; ++p) {
        std::int64_t q = total;
        bool ok = true;
        for (int r = 1; r <= level && ok; ++r) {
            q /= base;
            int digit = static_cast<int>(p / q % base);
            if (r <= ds.depth && !(ds.mask_at(r) >> digit & 1)) ok = false;
        }
        if (ok) ++hits;
    }
    return BigInt{hits};
}

// The half-open intervals making up a digit set, by digit-string
// enumeration; usable as a geometric membership oracle at any base.
inline std::vector<std::pair<Rational, Rational>> digit_set_intervals(const hsdim::DigitSet& ds) {
    std::vector<std::pair<Rational, Rational>> out;
    Rational width = hsdim::pow_rat(Rational{1, ds.base}, ds.depth);
    std::vector<Rational> prefix{Rational{0}};
    for (int r = 1; r <= ds.depth; ++r) {
        std::vector<Rational> next;
        Rational w = hsdim::pow_rat(Rational{1, ds.base}, r);
        for (const auto& acc : prefix)
            for (int g = 0; g < ds.base; ++g)
                if (ds.mask_at(r) >> g & 1) next.push_back(acc + g * w);
        prefix = std::move(next);
    }
    for (const auto& lo : prefix) out.emplace_back(lo, lo + width);
    return out;
}

inline bool intervals_meet_halfopen(const std::vector<std::pair<Rational, Rational>>& intervals,
                                    const Rational& lo, const Rational& hi) {
    for (const auto& [a, b] : intervals)
        if (std::max(a, lo) < std::min(b, hi)) return true;
    return false;
}

}  // namespace hsdim_test
