#pragma once

#include "hsdim/rational.hpp"

#include <vector>

namespace hsdim {

// A point in R^1 or R^2 with exact rational coordinates.
using Point = std::vector<Rational>;

inline Rational squared_distance(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw std::invalid_argument("squared_distance: dimension mismatch");
    Rational acc{0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

inline bool lex_less(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

// One-dimensional interval with explicit endpoint openness.
// contains(x)  <=>  (lo_open ? x > lo : x >= lo) && (hi_closed ? x <= hi : x < hi).
// Grid cells are the default [lo, hi); affine preimages under negative scale
// produce the flipped (lo, hi] form.
struct Interval {
    Rational lo, hi;
    bool lo_open = false;
    bool hi_closed = false;

    static Interval half_open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
    static Interval point(const Rational& x) { return {x, x, false, true}; }

    bool contains(const Rational& x) const {
        if (lo_open ? !(x > lo) : !(x >= lo)) return false;
        return hi_closed ? x <= hi : x < hi;
    }

    bool empty() const {
        if (lo < hi) return false;
        if (lo > hi) return true;
        return lo_open || !hi_closed;  // degenerate {lo}: nonempty only as [lo, lo]
    }

    bool intersects(const Interval& o) const {
        // Tightest lower and upper bound of the intersection.
        bool lo_open_i = lo_open;
        Rational lo_i = lo;
        if (o.lo > lo_i || (o.lo == lo_i && o.lo_open)) { lo_i = o.lo; lo_open_i = o.lo_open; }
        Rational hi_i = hi;
        bool hi_closed_i = hi_closed;
        if (o.hi < hi_i || (o.hi == hi_i && !o.hi_closed)) { hi_i = o.hi; hi_closed_i = o.hi_closed; }
        Interval isect{std::move(lo_i), std::move(hi_i), lo_open_i, hi_closed_i};
        return !isect.empty();
    }

    // True iff o is a subset of *this.
    bool contains_interval(const Interval& o) const {
        if (o.empty()) return true;
        bool lo_ok = (o.lo > lo) || (o.lo == lo && (lo_open ? o.lo_open : true));
        bool hi_ok = (o.hi < hi) || (o.hi == hi && (hi_closed ? true : !o.hi_closed));
        return lo_ok && hi_ok;
    }
};

// Axis-aligned box: one interval per dimension (1 or 2 entries).
using Box = std::vector<Interval>;

}  // namespace hsdim
