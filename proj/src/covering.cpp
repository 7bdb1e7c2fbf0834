#include "hsdim/covering.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <cmath>
#include <unordered_map>

namespace hsdim {

namespace {

constexpr int kMaxExactPoints = 128;
using Mask = std::bitset<kMaxExactPoints>;

// ---------------------------------------------------------------------------
// Grid counting
// ---------------------------------------------------------------------------

bool has_closed_form(const SetModel& model, int base) {
    if (const auto* ds = model.get_if<DigitSet>()) return ds->base == base;
    if (model.get_if<Product>()) return true;  // grid counts over a product factorize exactly
    return model.get_if<FinitePoints>() != nullptr || model.get_if<HarmonicTail>() != nullptr;
}

BigInt closed_form_count(const SetModel& model, int base, int level, const CubeCountOptions& opts);

BigInt count_distinct_cells(const std::vector<Point>& pts, int base, int level) {
    std::vector<std::vector<std::int64_t>> cells;
    cells.reserve(pts.size());
    for (const auto& p : pts) cells.push_back(cell_of_point(p, base, level));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return BigInt(cells.size());
}

BigInt closed_form_count(const SetModel& model, int base, int level, const CubeCountOptions& opts) {
    if (const auto* ds = model.get_if<DigitSet>()) {
        BigInt c{1};
        for (int r = 1; r <= std::min(level, ds->depth); ++r)
            c *= std::popcount(ds->mask_at(r));
        if (level > ds->depth) c *= pow_int(BigInt{base}, static_cast<std::uint64_t>(level - ds->depth));
        return c;
    }
    if (const auto* pr = model.get_if<Product>()) {
        CubeCountOptions sub = opts;
        sub.want_cells = false;
        return cube_count(*pr->left, base, level, sub).count *
               cube_count(*pr->right, base, level, sub).count;
    }
    if (const auto* fp = model.get_if<FinitePoints>()) return count_distinct_cells(fp->points, base, level);
    const auto* h = model.get_if<HarmonicTail>();
    std::vector<Point> pts;
    pts.push_back({Rational{0}});
    for (int k = 1; k <= h->n_max; ++k) pts.push_back({Rational{1, k}});
    return count_distinct_cells(pts, base, level);
}

const DigitSet* axis_digit_set(const SetModel& m, int base) {
    const auto* ds = m.get_if<DigitSet>();
    return (ds && ds->base == base) ? ds : nullptr;
}

// Level-by-level expansion of intersecting cells, pruned by cell_intersects.
// Coordinates run over 0..b^level inclusive: the boundary chain (coordinate
// exactly b^j at level j) tracks points with a coordinate equal to 1, and
// only its first child stays in range. With cells_out null the final level
// is counted without being stored.
BigInt enumerate_grid(const SetModel& model, int base, int level, std::int64_t node_cap,
                      std::vector<std::vector<std::int64_t>>* cells_out) {
    cells_per_axis(base, level);  // range guard
    int dim = model.dim();

    // Matching-base digit axes admit an O(1) per-child filter: the parent
    // already certified every earlier digit, so only the new one needs a
    // mask test. Product axes are queried separately with per-axis caches,
    // so an axis cell is never decided twice. Everything else falls back to
    // the full joint membership query.
    const DigitSet* fx = nullptr;
    const DigitSet* fy = nullptr;
    if (dim == 1) {
        fx = axis_digit_set(model, base);
    } else if (const auto* pr = model.get_if<Product>()) {
        fx = axis_digit_set(*pr->left, base);
        fy = axis_digit_set(*pr->right, base);
        if (!fx || !fy) fx = fy = nullptr;
    }
    bool incremental = fx != nullptr;
    const SetModel* axis_x = nullptr;
    const SetModel* axis_y = nullptr;
    if (!incremental && dim == 2) {
        if (const auto* pr = model.get_if<Product>()) {
            axis_x = pr->left.get();
            axis_y = pr->right.get();
        }
    }

    std::vector<std::vector<std::int64_t>> frontier;
    for (int boundary = 0; boundary < (1 << dim); ++boundary) {
        std::vector<std::int64_t> cell(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a) cell[static_cast<std::size_t>(a)] = (boundary >> a) & 1;
        if (cell_intersects(model, base, 0, cell)) frontier.push_back(std::move(cell));
    }
    std::int64_t visited = 0;
    BigInt tally{0};
    for (int lev = 0; lev < level; ++lev) {
        bool last = (lev + 1 == level) && cells_out == nullptr;
        std::int64_t axis_limit = cells_per_axis(base, lev + 1);
        std::vector<std::vector<std::int64_t>> next;
        if (!last) next.reserve(frontier.size());
        std::vector<std::int64_t> child(static_cast<std::size_t>(dim));
        std::int64_t parent_limit = axis_limit / base;

        std::unordered_map<std::int64_t, bool> memo_x, memo_y;
        auto axis_ok = [&](const SetModel& axis, std::unordered_map<std::int64_t, bool>& memo,
                           std::int64_t coord) {
            auto it = memo.find(coord);
            if (it != memo.end()) return it->second;
            bool v = cell_intersects(axis, base, lev + 1, std::span(&coord, 1));
            memo.emplace(coord, v);
            return v;
        };

        for (const auto& cell : frontier) {
            // per-axis digit ranges; a boundary coordinate only extends by digit 0
            std::array<int, 2> digit_count{base, base};
            for (int a = 0; a < dim; ++a)
                if (cell[static_cast<std::size_t>(a)] == parent_limit) digit_count[static_cast<std::size_t>(a)] = 1;
            int gy_max = (dim == 2) ? digit_count[1] : 1;
            for (int gx = 0; gx < digit_count[0]; ++gx) {
                child[0] = cell[0] * base + gx;
                if (axis_x && !axis_ok(*axis_x, memo_x, child[0])) {
                    visited += gy_max;
                    if (visited > node_cap) throw CapExceeded("cube_count: enumeration node cap exceeded");
                    continue;
                }
                for (int gy = 0; gy < gy_max; ++gy) {
                    if (dim == 2) child[1] = cell[1] * base + gy;
                    if (++visited > node_cap) throw CapExceeded("cube_count: enumeration node cap exceeded");
                    bool hit;
                    if (incremental) {
                        hit = (fx->mask_at(lev + 1) >> gx & 1) &&
                              (dim == 1 || (fy->mask_at(lev + 1) >> gy & 1));
                    } else if (axis_x) {
                        hit = axis_ok(*axis_y, memo_y, child[1]);
                    } else {
                        hit = cell_intersects(model, base, lev + 1, child);
                    }
                    if (hit) {
                        if (last) ++tally;
                        else next.push_back(child);
                    }
                }
            }
        }
        if (!last) frontier = std::move(next);
    }
    if (cells_out || level == 0) {
        std::sort(frontier.begin(), frontier.end());
        tally = BigInt(frontier.size());
        if (cells_out) *cells_out = std::move(frontier);
    }
    return tally;
}

}  // namespace

CubeCoverResult cube_count(const SetModel& model, int base, int level, const CubeCountOptions& opts) {
    if (base < 2) throw std::invalid_argument("cube_count: base must be >= 2");
    if (level < 0) throw std::invalid_argument("cube_count: negative level");
    CubeCoverResult result;
    result.base = base;
    result.level = level;
    if (!opts.force_enumeration && has_closed_form(model, base)) {
        result.count = closed_form_count(model, base, level, opts);
    } else {
        result.count = enumerate_grid(model, base, level, opts.enum_node_cap, nullptr);
    }
    if (opts.want_cells && result.count <= opts.cells_cap) {
        std::vector<std::vector<std::int64_t>> cells;
        enumerate_grid(model, base, level, opts.enum_node_cap, &cells);
        result.cells = std::move(cells);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Ball covers and packings
// ---------------------------------------------------------------------------

BallRadius BallRadius::from_radius(const Rational& radius) {
    if (radius <= 0) throw std::invalid_argument("BallRadius: radius must be positive");
    return BallRadius{radius * radius, radius};
}

BallRadius BallRadius::from_squared(const Rational& r_squared) {
    if (r_squared <= 0) throw std::invalid_argument("BallRadius: squared radius must be positive");
    return BallRadius{r_squared, std::nullopt};
}

double BallRadius::approx() const { return std::sqrt(to_double(r2)); }

namespace {

std::vector<Point> canonical_points(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (!pts.empty()) {
        std::size_t d = pts[0].size();
        for (const auto& p : pts)
            if (p.size() != d) throw std::invalid_argument("ball_cover: mixed point dimensions");
    }
    return pts;
}

struct CoverageGraph {
    std::vector<Mask> cover;    // cover[i]: points within r of point i (includes i)
    std::vector<Mask> cocover;  // cocover[i]: points sharing some covering ball with i
    Mask all;
    int m = 0;
};

CoverageGraph build_coverage(const std::vector<Point>& pts, const Rational& r2) {
    CoverageGraph g;
    g.m = static_cast<int>(pts.size());
    g.cover.assign(pts.size(), {});
    for (int i = 0; i < g.m; ++i) {
        g.cover[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(i));
        g.all.set(static_cast<std::size_t>(i));
        for (int j = i + 1; j < g.m; ++j) {
            if (squared_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) <= r2) {
                g.cover[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
                g.cover[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
            }
        }
    }
    g.cocover.assign(pts.size(), {});
    for (int i = 0; i < g.m; ++i) {
        Mask acc;
        for (int c = 0; c < g.m; ++c)
            if (g.cover[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(c)))
                acc |= g.cover[static_cast<std::size_t>(c)];
        g.cocover[static_cast<std::size_t>(i)] = acc;
    }
    return g;
}

// Farthest-point traversal: first center is the lexicographically smallest
// point; afterwards the uncovered point farthest from the chosen centers
// (lexicographic tie-break = smallest index, points being sorted).
std::vector<int> greedy_cover(const std::vector<Point>& pts, const Rational& r2) {
    int m = static_cast<int>(pts.size());
    std::vector<int> centers;
    if (m == 0) return centers;
    std::vector<char> covered(static_cast<std::size_t>(m), 0);
    int uncovered = m;
    std::vector<std::optional<Rational>> min_d2(static_cast<std::size_t>(m));
    int next = 0;
    while (true) {
        centers.push_back(next);
        for (int i = 0; i < m; ++i) {
            Rational d2 = squared_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(next)]);
            if (!covered[static_cast<std::size_t>(i)] && d2 <= r2) {
                covered[static_cast<std::size_t>(i)] = 1;
                --uncovered;
            }
            auto& slot = min_d2[static_cast<std::size_t>(i)];
            if (!slot || d2 < *slot) slot = d2;
        }
        if (uncovered == 0) break;
        int far = -1;
        for (int i = 0; i < m; ++i) {
            if (covered[static_cast<std::size_t>(i)]) continue;
            if (far < 0 || *min_d2[static_cast<std::size_t>(i)] > *min_d2[static_cast<std::size_t>(far)]) far = i;
        }
        next = far;
    }
    return centers;
}

// Maximal subset with pairwise squared distance > 4 r^2 (strict), scanned in
// lexicographic order. Any such family lower-bounds the covering number.
std::vector<int> greedy_strict_packing(const std::vector<Point>& pts, const Rational& r2) {
    std::vector<int> chosen;
    Rational four_r2 = 4 * r2;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        bool ok = true;
        for (int c : chosen) {
            if (!(squared_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(c)]) > four_r2)) {
                ok = false;
                break;
            }
        }
        if (ok) chosen.push_back(i);
    }
    return chosen;
}

struct CoverSearch {
    const CoverageGraph& g;
    int best;
    std::vector<int> best_set;
    std::vector<int> current;

    // Points pairwise not co-coverable each need their own ball.
    int lower_bound(const Mask& covered) const {
        Mask blocked = covered;
        int lb = 0;
        for (int i = 0; i < g.m; ++i) {
            if (!blocked.test(static_cast<std::size_t>(i))) {
                ++lb;
                blocked |= g.cocover[static_cast<std::size_t>(i)];
            }
        }
        return lb;
    }

    void run(Mask covered) {
        int size = static_cast<int>(current.size());
        if (covered == g.all) {
            if (size < best) {
                best = size;
                best_set = current;
            }
            return;
        }
        if (size + lower_bound(covered) >= best) return;
        // branch on the uncovered point with the fewest candidate centers
        int pivot = -1;
        std::size_t pivot_deg = 0;
        for (int i = 0; i < g.m; ++i) {
            if (covered.test(static_cast<std::size_t>(i))) continue;
            std::size_t deg = g.cover[static_cast<std::size_t>(i)].count();
            if (pivot < 0 || deg < pivot_deg) {
                pivot = i;
                pivot_deg = deg;
            }
        }
        // candidates covering the pivot, most-coverage first
        std::vector<int> cands;
        for (int i = 0; i < g.m; ++i)
            if (g.cover[static_cast<std::size_t>(pivot)].test(static_cast<std::size_t>(i))) cands.push_back(i);
        std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
            return (g.cover[static_cast<std::size_t>(a)] & ~covered).count() >
                   (g.cover[static_cast<std::size_t>(b)] & ~covered).count();
        });
        for (int c : cands) {
            current.push_back(c);
            run(covered | g.cover[static_cast<std::size_t>(c)]);
            current.pop_back();
        }
    }
};

}  // namespace

BallCoverCertificate ball_cover(std::span<const Point> points, const BallRadius& radius, CoverMode mode,
                                int exact_cap) {
    BallCoverCertificate cert;
    cert.radius = radius;
    auto pts = canonical_points(points);
    if (pts.empty()) {
        cert.exact = true;
        return cert;
    }
    int m = static_cast<int>(pts.size());
    auto centers = greedy_cover(pts, radius.r2);
    auto witnesses = greedy_strict_packing(pts, radius.r2);
    cert.upper = static_cast<std::int64_t>(centers.size());
    cert.lower = static_cast<std::int64_t>(witnesses.size());
    cert.exact = (cert.upper == cert.lower);

    if (mode == CoverMode::Exact && !cert.exact) {
        if (m > exact_cap || m > kMaxExactPoints)
            throw CapExceeded("ball_cover: exact mode cap exceeded");
        CoverageGraph g = build_coverage(pts, radius.r2);
        CoverSearch search{g, static_cast<int>(centers.size()), centers, {}};
        search.run(Mask{});
        centers = search.best_set;
        std::sort(centers.begin(), centers.end());
        cert.upper = static_cast<std::int64_t>(centers.size());
        cert.exact = true;
    }
    for (int c : centers) cert.centers.push_back(pts[static_cast<std::size_t>(c)]);
    for (int w : witnesses) cert.witnesses.push_back(pts[static_cast<std::size_t>(w)]);
    return cert;
}

namespace {

struct PackingSearch {
    const std::vector<Mask>& conflict;
    int m;
    int best = 0;
    Mask best_set;

    void run(Mask allowed, Mask chosen, int size) {
        if (size + static_cast<int>(allowed.count()) <= best) return;
        int v = -1;
        for (int i = 0; i < m; ++i)
            if (allowed.test(static_cast<std::size_t>(i))) { v = i; break; }
        if (v < 0) {
            if (size > best) {
                best = size;
                best_set = chosen;
            }
            return;
        }
        Mask without = allowed;
        without.reset(static_cast<std::size_t>(v));
        // include v
        Mask incl = without & ~conflict[static_cast<std::size_t>(v)];
        Mask chosen_v = chosen;
        chosen_v.set(static_cast<std::size_t>(v));
        run(incl, chosen_v, size + 1);
        // exclude v
        run(without, chosen, size);
    }
};

}  // namespace

PackingResult packing_number(std::span<const Point> points, const BallRadius& radius, int exact_cap) {
    PackingResult result;
    result.radius = radius;
    auto pts = canonical_points(points);
    if (pts.empty()) {
        result.exact = true;
        return result;
    }
    int m = static_cast<int>(pts.size());
    if (m <= exact_cap && m <= kMaxExactPoints) {
        // conflicts: pairs strictly closer than r
        std::vector<Mask> conflict(pts.size());
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                if (squared_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) < radius.r2) {
                    conflict[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
                    conflict[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
                }
            }
        Mask all;
        for (int i = 0; i < m; ++i) all.set(static_cast<std::size_t>(i));
        PackingSearch search{conflict, m};
        search.run(all, Mask{}, 0);
        result.count = search.best;
        result.exact = true;
        for (int i = 0; i < m; ++i)
            if (search.best_set.test(static_cast<std::size_t>(i))) result.centers.push_back(pts[static_cast<std::size_t>(i)]);
        return result;
    }
    // greedy maximal family, lexicographic scan
    std::vector<int> chosen;
    for (int i = 0; i < m; ++i) {
        bool ok = true;
        for (int c : chosen)
            if (squared_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(c)]) < radius.r2) {
                ok = false;
                break;
            }
        if (ok) chosen.push_back(i);
    }
    result.count = static_cast<std::int64_t>(chosen.size());
    result.exact = false;
    for (int c : chosen) result.centers.push_back(pts[static_cast<std::size_t>(c)]);
    return result;
}

// ---------------------------------------------------------------------------
// Tiling covers
// ---------------------------------------------------------------------------

namespace {

// Tile the cube [corner, corner + side]^n by M^n sub-cubes of side s = side/M,
// with M minimal such that the sub-cube diagonal s*sqrt(n) fits inside a ball
// of diameter gamma. The circumscribed gamma-balls then cover the cube.
SmallBallCover tile_cube(int n, const Point& corner, const Rational& side, const Rational& gamma,
                         const std::optional<Point>& ball_center, const Rational& ball_r2) {
    if (n != 1 && n != 2) throw std::invalid_argument("tiling cover: dimension must be 1 or 2");
    if (gamma <= 0 || side <= 0) throw std::invalid_argument("tiling cover: side and gamma must be positive");
    BigInt M_big = ceil_sqrt_ratio(gamma * gamma, Rational{n} * side * side);
    if (M_big < 1) M_big = 1;
    std::int64_t M = M_big.convert_to<std::int64_t>();
    Rational s = side / M;

    SmallBallCover cover;
    cover.dim = n;
    cover.target_diameter = side;
    cover.small_diameter = gamma;
    cover.per_axis = M;
    cover.bound = pow_int(BigInt{M}, static_cast<std::uint64_t>(n));

    std::int64_t jy_max = (n == 2) ? M : 1;
    for (std::int64_t ix = 0; ix < M; ++ix) {
        for (std::int64_t iy = 0; iy < jy_max; ++iy) {
            Point c;
            c.push_back(corner[0] + Rational{2 * ix + 1, 2} * s);
            if (n == 2) c.push_back(corner[1] + Rational{2 * iy + 1, 2} * s);
            cover.centers.push_back(std::move(c));
        }
    }

    // Witness net at step s/4; net points outside the target ball (when one
    // is given) are skipped. Each witness must land within gamma/2 of the
    // center of its sub-cube.
    Rational step = s / 4;
    Rational gamma_half_sq = gamma * gamma / 4;
    std::int64_t steps = 4 * M;
    std::int64_t wy_max = (n == 2) ? steps : 0;
    cover.coverage_verified = true;
    for (std::int64_t jx = 0; jx <= steps; ++jx) {
        for (std::int64_t jy = 0; jy <= wy_max; ++jy) {
            Point w;
            w.push_back(corner[0] + jx * step);
            if (n == 2) w.push_back(corner[1] + jy * step);
            if (ball_center) {
                if (squared_distance(w, *ball_center) > ball_r2) continue;
            }
            ++cover.witness_points;
            std::int64_t ix = std::min<std::int64_t>(jx / 4, M - 1);
            std::int64_t iy = std::min<std::int64_t>(jy / 4, M - 1);
            const Point& c = cover.centers[static_cast<std::size_t>((n == 2) ? ix * M + iy : ix)];
            if (squared_distance(w, c) > gamma_half_sq) cover.coverage_verified = false;
        }
    }
    return cover;
}

}  // namespace

SmallBallCover cover_ball_by_smaller(int n, const Rational& delta, const Rational& gamma) {
    if (!(gamma > 0 && gamma < delta)) throw std::invalid_argument("cover_ball_by_smaller: need 0 < gamma < delta");
    // ball of diameter delta centered at the origin of its circumscribing cube
    Point corner;
    Point center;
    for (int a = 0; a < n; ++a) {
        corner.push_back(Rational{0});
        center.push_back(delta / 2);
    }
    auto cover = tile_cube(n, corner, delta, gamma, center, delta * delta / 4);
    cover.target_diameter = delta;
    return cover;
}

SmallBallCover cover_cube_by_balls(int n, const Point& corner, const Rational& side, const Rational& gamma) {
    if (static_cast<int>(corner.size()) != n) throw std::invalid_argument("cover_cube_by_balls: corner arity");
    return tile_cube(n, corner, side, gamma, std::nullopt, Rational{0});
}

}  // namespace hsdim
