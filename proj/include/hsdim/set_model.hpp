#pragma once

#include "hsdim/geometry.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace hsdim {

class SetModel;
using SetModelPtr = std::shared_ptr<const SetModel>;

// Explicit list of rational points in [0,1]^dim. May be empty.
struct FinitePoints {
    int dim = 1;
    std::vector<Point> points;
};

// Subset of [0,1) cut out by constraining base-b digits position by position:
// x belongs iff its greedy expansion digit at position r lies in allowed(r)
// for every r <= depth. Digits beyond depth are unconstrained, so the set is
// a finite union of half-open base^-depth intervals and every grid query
// against it is exactly decidable.
struct DigitSet {
    int base = 2;
    int depth = 0;
    std::vector<std::uint64_t> allowed;  // allowed[r-1]: digit bitmask at position r

    std::uint64_t mask_at(int position) const {  // 1-based; positions past depth are free
        if (position <= 0) throw std::invalid_argument("DigitSet::mask_at: position must be >= 1");
        if (position > depth) return (base == 64) ? ~0ull : ((1ull << base) - 1);
        return allowed[static_cast<std::size_t>(position - 1)];
    }
};

// {0} together with {1/k : k <= n_max}.
struct HarmonicTail {
    int n_max = 1;
};

// Cartesian product of two one-dimensional models.
struct Product {
    SetModelPtr left, right;
};

// {scale*x + offset : x in inner}, constrained to land inside [0,1].
struct AffineImage {
    Rational scale, offset;
    SetModelPtr inner;
};

class SetModel {
public:
    using Node = std::variant<FinitePoints, DigitSet, HarmonicTail, Product, AffineImage>;

    explicit SetModel(Node node);  // validates invariants, throws std::invalid_argument

    int dim() const { return dim_; }
    const Node& node() const { return node_; }

    template <class T>
    const T* get_if() const { return std::get_if<T>(&node_); }

private:
    Node node_;
    int dim_;
};

SetModelPtr make_model(SetModel::Node node);

// Convenience constructors.
SetModelPtr make_finite(int dim, std::vector<Point> points);
SetModelPtr make_digit_set(int base, int depth, std::vector<std::uint64_t> allowed);
// Same digit mask at every position (e.g. {0,2} in base 3 for the middle-third set).
SetModelPtr make_uniform_digit_set(int base, int depth, std::uint64_t mask);
SetModelPtr make_harmonic(int n_max);
SetModelPtr make_product(SetModelPtr left, SetModelPtr right);
SetModelPtr make_affine(Rational scale, Rational offset, SetModelPtr inner);

// Exact emptiness test of (set intersect box). Box arity must match model dim.
bool intersects_box(const SetModel& model, const Box& query);

// Grid-cell membership: cell coordinates address the half-open cube
// prod_i [c_i b^-level, (c_i+1) b^-level). Coordinates range over 0..b^level
// inclusive; the boundary cell c_i = b^level is the one holding points with
// coordinate exactly 1. Exact for every model variant.
bool cell_intersects(const SetModel& model, int base, int level, std::span<const std::int64_t> cell);

// b^level as int64, throws CapExceeded when the grid is too deep to address.
std::int64_t cells_per_axis(int base, int level);

// At most `budget` exact points of the set, deterministic in (model, budget).
std::vector<Point> sample_points(const SetModel& model, int budget);

// Grid cell containing a point (coordinate 1 maps to the boundary cell).
std::vector<std::int64_t> cell_of_point(const Point& p, int base, int level);

}  // namespace hsdim
