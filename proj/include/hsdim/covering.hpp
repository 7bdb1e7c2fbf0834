#pragma once

#include "hsdim/set_model.hpp"

#include <optional>

namespace hsdim {

struct CubeCountOptions {
    std::int64_t cells_cap = 4096;      // materialize the cell list only when count <= cap
    bool want_cells = false;
    bool force_enumeration = false;     // bypass closed forms; independent verification route
    std::int64_t enum_node_cap = 50'000'000;
};

// Exact number of half-open base^-level grid cells meeting the set.
struct CubeCoverResult {
    int base = 2;
    int level = 0;
    BigInt count;
    std::optional<std::vector<std::vector<std::int64_t>>> cells;  // sorted, when materialized
};

CubeCoverResult cube_count(const SetModel& model, int base, int level, const CubeCountOptions& opts = {});

// Ball radius carried by its square, so radii like sqrt(2)*d stay exact.
struct BallRadius {
    Rational r2;
    std::optional<Rational> r;  // present when the radius itself is rational

    static BallRadius from_radius(const Rational& radius);
    static BallRadius from_squared(const Rational& r_squared);
    double approx() const;
};

enum class CoverMode { Greedy, Exact };

// Two-sided certificate for the covering number N_r of a finite point set,
// with centers restricted to the set. lower <= N_r <= upper always; exact
// means upper == N_r (bound coincidence or exhaustive search).
struct BallCoverCertificate {
    BallRadius radius;
    std::int64_t upper = 0;
    std::int64_t lower = 0;
    bool exact = false;
    std::vector<Point> centers;    // cover: every point within r of some center
    std::vector<Point> witnesses;  // pairwise distance > 2r
};

// Greedy mode: farthest-point cover (upper) + maximal separated subset
// (lower). Exact mode additionally runs branch-and-bound when the bounds
// disagree; throws CapExceeded past exact_cap.
BallCoverCertificate ball_cover(std::span<const Point> points, const BallRadius& radius, CoverMode mode,
                                int exact_cap = 64);

// Maximal family of centers with pairwise separation >= r (the equal-radius
// packing condition). Exact up to the cap, greedy past it.
struct PackingResult {
    BallRadius radius;
    std::int64_t count = 0;
    std::vector<Point> centers;
    bool exact = false;
};

PackingResult packing_number(std::span<const Point> points, const BallRadius& radius, int exact_cap = 64);

// Cube-tiling cover of a diameter-delta ball (or a cube) by balls of
// diameter gamma, with per-axis count ceil(delta*sqrt(n)/gamma). Coverage is
// certified pointwise on an exact rational witness net at step s/4, where s
// is the sub-cube side.
struct SmallBallCover {
    int dim = 1;
    Rational target_diameter;  // delta (ball) or the cube side
    Rational small_diameter;   // gamma
    std::int64_t per_axis = 0;
    BigInt bound;              // per_axis^dim
    std::vector<Point> centers;
    bool coverage_verified = false;
    std::int64_t witness_points = 0;
};

SmallBallCover cover_ball_by_smaller(int n, const Rational& delta, const Rational& gamma);
SmallBallCover cover_cube_by_balls(int n, const Point& corner, const Rational& side, const Rational& gamma);

}  // namespace hsdim
