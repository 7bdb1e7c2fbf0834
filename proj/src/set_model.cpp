#include "hsdim/set_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace hsdim {

namespace {

int node_dim(const SetModel::Node& node) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FinitePoints>) return n.dim;
            else if constexpr (std::is_same_v<T, Product>) return 2;
            else return 1;
        },
        node);
}

void validate(const SetModel::Node& node) {
    if (const auto* fp = std::get_if<FinitePoints>(&node)) {
        if (fp->dim != 1 && fp->dim != 2) throw std::invalid_argument("FinitePoints: dim must be 1 or 2");
        for (const auto& p : fp->points) {
            if (static_cast<int>(p.size()) != fp->dim)
                throw std::invalid_argument("FinitePoints: point arity mismatch");
            for (const auto& c : p)
                if (c < 0 || c > 1) throw std::invalid_argument("FinitePoints: coordinate outside [0,1]");
        }
    } else if (const auto* ds = std::get_if<DigitSet>(&node)) {
        if (ds->base < 2 || ds->base > 64) throw std::invalid_argument("DigitSet: base must be in [2,64]");
        if (ds->depth < 0) throw std::invalid_argument("DigitSet: negative depth");
        if (static_cast<int>(ds->allowed.size()) != ds->depth)
            throw std::invalid_argument("DigitSet: allowed list length must equal depth");
        std::uint64_t full = (ds->base == 64) ? ~0ull : ((1ull << ds->base) - 1);
        for (auto mask : ds->allowed) {
            if (mask == 0) throw std::invalid_argument("DigitSet: empty digit set at some position");
            if (mask & ~full) throw std::invalid_argument("DigitSet: digit outside base");
        }
    } else if (const auto* h = std::get_if<HarmonicTail>(&node)) {
        if (h->n_max < 1) throw std::invalid_argument("HarmonicTail: n_max must be >= 1");
    } else if (const auto* pr = std::get_if<Product>(&node)) {
        if (!pr->left || !pr->right) throw std::invalid_argument("Product: null factor");
        if (pr->left->dim() != 1 || pr->right->dim() != 1)
            throw std::invalid_argument("Product: factors must be one-dimensional");
    } else if (const auto* af = std::get_if<AffineImage>(&node)) {
        if (!af->inner) throw std::invalid_argument("AffineImage: null inner model");
        if (af->inner->dim() != 1) throw std::invalid_argument("AffineImage: inner model must be one-dimensional");
        if (af->scale == 0) throw std::invalid_argument("AffineImage: zero scale");
        // Inner models live in [0,1]; the image must stay inside the unit box.
        Rational a = af->offset, b = af->scale + af->offset;
        if (a > b) std::swap(a, b);
        if (a < 0 || b > 1) throw std::invalid_argument("AffineImage: image leaves [0,1]");
    }
}

}  // namespace

SetModel::SetModel(Node node) : node_(std::move(node)) {
    validate(node_);
    dim_ = node_dim(node_);
}

SetModelPtr make_model(SetModel::Node node) { return std::make_shared<const SetModel>(std::move(node)); }

SetModelPtr make_finite(int dim, std::vector<Point> points) {
    return make_model(FinitePoints{dim, std::move(points)});
}

SetModelPtr make_digit_set(int base, int depth, std::vector<std::uint64_t> allowed) {
    return make_model(DigitSet{base, depth, std::move(allowed)});
}

SetModelPtr make_uniform_digit_set(int base, int depth, std::uint64_t mask) {
    return make_digit_set(base, depth, std::vector<std::uint64_t>(static_cast<std::size_t>(depth), mask));
}

SetModelPtr make_harmonic(int n_max) { return make_model(HarmonicTail{n_max}); }

SetModelPtr make_product(SetModelPtr left, SetModelPtr right) {
    return make_model(Product{std::move(left), std::move(right)});
}

SetModelPtr make_affine(Rational scale, Rational offset, SetModelPtr inner) {
    return make_model(AffineImage{std::move(scale), std::move(offset), std::move(inner)});
}

namespace {

// Prefix-tree walk for DigitSet vs interval. The running cell is
// [lo, lo + base^-level); only cells straddling a query endpoint descend
// more than one step, so the walk is O(depth * base).
bool digitset_intersects_rec(const DigitSet& ds, const Interval& query, const Rational& lo,
                             const Rational& width, int level) {
    Interval cell = Interval::half_open(lo, lo + width);
    if (!cell.intersects(query)) return false;
    if (level == ds.depth) return true;
    if (query.contains_interval(cell)) return true;  // any allowed completion stays inside
    Rational child_width = width / ds.base;
    std::uint64_t mask = ds.mask_at(level + 1);
    for (int g = 0; g < ds.base; ++g) {
        if (!(mask >> g & 1)) continue;
        if (digitset_intersects_rec(ds, query, lo + g * child_width, child_width, level + 1)) return true;
    }
    return false;
}

bool harmonic_intersects(const HarmonicTail& h, const Interval& query) {
    if (query.contains(Rational{0})) return true;
    for (int k = 1; k <= h.n_max; ++k) {
        Rational x{1, k};
        if (query.contains(x)) return true;
        if (x < query.lo) break;  // 1/k decreasing, nothing smaller can enter
    }
    return false;
}

// Preimage of `query` under x -> scale*x + offset, with openness flags
// carried through (they flip when scale < 0).
Interval affine_preimage(const AffineImage& af, const Interval& query) {
    if (af.scale > 0) {
        return {(query.lo - af.offset) / af.scale, (query.hi - af.offset) / af.scale, query.lo_open,
                query.hi_closed};
    }
    return {(query.hi - af.offset) / af.scale, (query.lo - af.offset) / af.scale, !query.hi_closed,
            !query.lo_open};
}

}  // namespace

bool intersects_box(const SetModel& model, const Box& query) {
    if (static_cast<int>(query.size()) != model.dim())
        throw std::invalid_argument("intersects_box: query arity does not match model dimension");
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FinitePoints>) {
                for (const auto& p : n.points) {
                    bool inside = true;
                    for (std::size_t i = 0; i < p.size(); ++i)
                        if (!query[i].contains(p[i])) { inside = false; break; }
                    if (inside) return true;
                }
                return false;
            } else if constexpr (std::is_same_v<T, DigitSet>) {
                return digitset_intersects_rec(n, query[0], Rational{0}, Rational{1}, 0);
            } else if constexpr (std::is_same_v<T, HarmonicTail>) {
                return harmonic_intersects(n, query[0]);
            } else if constexpr (std::is_same_v<T, Product>) {
                return intersects_box(*n.left, {query[0]}) && intersects_box(*n.right, {query[1]});
            } else {
                return intersects_box(*n.inner, {affine_preimage(n, query[0])});
            }
        },
        model.node());
}

std::int64_t cells_per_axis(int base, int level) {
    if (base < 2) throw std::invalid_argument("cells_per_axis: base must be >= 2");
    if (level < 0) throw std::invalid_argument("cells_per_axis: negative level");
    std::int64_t v = 1;
    for (int i = 0; i < level; ++i) {
        if (v > (std::int64_t{1} << 62) / base) throw CapExceeded("grid too deep to address cells");
        v *= base;
    }
    return v;
}

bool cell_intersects(const SetModel& model, int base, int level, std::span<const std::int64_t> cell) {
    if (static_cast<int>(cell.size()) != model.dim())
        throw std::invalid_argument("cell_intersects: cell arity does not match model dimension");
    std::int64_t limit = cells_per_axis(base, level);
    for (auto c : cell)
        if (c < 0 || c > limit) throw std::invalid_argument("cell_intersects: cell coordinate out of range");

    // Matching-base digit sets decide by inspecting the cell's digits.
    if (const auto* ds = model.get_if<DigitSet>()) {
        if (ds->base == base) {
            std::int64_t p = cell[0];
            if (p >= limit) return false;  // digit sets live in [0,1)
            std::int64_t q = limit;
            for (int r = 1; r <= level && r <= ds->depth; ++r) {
                q /= base;
                int digit = static_cast<int>(p / q % base);
                if (!(ds->mask_at(r) >> digit & 1)) return false;
            }
            return true;
        }
    }
    // Products decide coordinatewise, keeping each side on its own fast path.
    if (const auto* pr = model.get_if<Product>()) {
        return cell_intersects(*pr->left, base, level, cell.subspan(0, 1)) &&
               cell_intersects(*pr->right, base, level, cell.subspan(1, 1));
    }

    Box query;
    Rational width = pow_rat(Rational{1, base}, level);
    query.reserve(cell.size());
    for (auto c : cell) {
        Rational lo = Rational{c} * width;
        query.push_back(Interval::half_open(lo, lo + width));
    }
    return intersects_box(model, query);
}

namespace {

void digitset_prefixes(const DigitSet& ds, int stop_level, const Rational& acc, int level,
                       const Rational& pad, std::vector<Point>& out) {
    if (level == stop_level) {
        out.push_back({acc + pad});
        return;
    }
    Rational w = pow_rat(Rational{1, ds.base}, level + 1);
    std::uint64_t mask = ds.mask_at(level + 1);
    for (int g = 0; g < ds.base; ++g) {
        if (!(mask >> g & 1)) continue;
        digitset_prefixes(ds, stop_level, acc + g * w, level + 1, pad, out);
    }
}

// Truncated expansions: the deepest prefix level whose full enumeration fits
// the budget, remaining constrained positions padded with the smallest
// allowed digit. Samples spread across the whole set instead of piling up
// at its lexicographic start.
std::vector<Point> digitset_samples(const DigitSet& ds, int budget) {
    int stop_level = 0;
    std::int64_t total = 1;
    for (int r = 1; r <= ds.depth; ++r) {
        total *= std::popcount(ds.mask_at(r));
        if (total > budget) break;
        stop_level = r;
    }
    Rational pad{0};
    for (int r = stop_level + 1; r <= ds.depth; ++r) {
        int g = std::countr_zero(ds.mask_at(r));
        pad += g * pow_rat(Rational{1, ds.base}, r);
    }
    std::vector<Point> out;
    digitset_prefixes(ds, stop_level, Rational{0}, 0, pad, out);
    return out;
}

}  // namespace

std::vector<Point> sample_points(const SetModel& model, int budget) {
    if (budget < 1) throw std::invalid_argument("sample_points: budget must be >= 1");
    return std::visit(
        [&](const auto& n) -> std::vector<Point> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FinitePoints>) {
                std::vector<Point> out(n.points.begin(),
                                       n.points.begin() + std::min<std::size_t>(n.points.size(),
                                                                                static_cast<std::size_t>(budget)));
                return out;
            } else if constexpr (std::is_same_v<T, DigitSet>) {
                return digitset_samples(n, budget);
            } else if constexpr (std::is_same_v<T, HarmonicTail>) {
                std::vector<Point> out;
                out.push_back({Rational{0}});
                for (int k = 1; k <= n.n_max && static_cast<int>(out.size()) < budget; ++k)
                    out.push_back({Rational{1, k}});
                return out;
            } else if constexpr (std::is_same_v<T, Product>) {
                int axis_budget = std::max(1, static_cast<int>(std::ceil(std::sqrt(double(budget)))));
                auto ls = sample_points(*n.left, axis_budget);
                auto rs = sample_points(*n.right, axis_budget);
                std::vector<Point> out;
                for (const auto& a : ls)
                    for (const auto& b : rs) {
                        if (static_cast<int>(out.size()) >= budget) return out;
                        out.push_back({a[0], b[0]});
                    }
                return out;
            } else {
                auto inner = sample_points(*n.inner, budget);
                for (auto& p : inner) p[0] = n.scale * p[0] + n.offset;
                return inner;
            }
        },
        model.node());
}

std::vector<std::int64_t> cell_of_point(const Point& p, int base, int level) {
    std::int64_t limit = cells_per_axis(base, level);
    std::vector<std::int64_t> cell;
    cell.reserve(p.size());
    for (const auto& c : p) {
        BigInt idx = floor_rat(c * Rational{limit});
        if (idx < 0 || idx > limit) throw std::invalid_argument("cell_of_point: coordinate outside [0,1]");
        cell.push_back(idx.convert_to<std::int64_t>());
    }
    return cell;
}

}  // namespace hsdim
