#include "hsdim/set_model.hpp"

#include "hsdim/schedule.hpp"
#include "oracle_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace hsdim;
using namespace hsdim_test;

namespace {

bool hits(const SetModel& m, int base, int level, std::initializer_list<std::int64_t> cell) {
    std::vector<std::int64_t> c(cell);
    return cell_intersects(m, base, level, c);
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(make_finite(1, {{Rational{3, 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_finite(2, {{Rational{1, 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_digit_set(3, 2, {0b101, 0}), std::invalid_argument);   // empty position
    CHECK_THROWS_AS(make_digit_set(3, 1, {0b1000}), std::invalid_argument);     // digit 3 in base 3
    CHECK_THROWS_AS(make_harmonic(0), std::invalid_argument);
    auto plane = make_finite(2, {});
    CHECK_THROWS_AS(make_product(plane, make_harmonic(2)), std::invalid_argument);
    CHECK_THROWS_AS(make_affine(Rational{2}, Rational{0}, make_harmonic(2)), std::invalid_argument);
    CHECK_NOTHROW(make_affine(Rational{-1, 2}, Rational{1, 2}, make_harmonic(2)));
}

TEST_CASE("cell membership on the harmonic tail") {
    auto a3 = make_harmonic(3);
    CHECK(hits(*a3, 2, 2, {0}));        // [0, 1/4) contains 0
    CHECK(hits(*a3, 2, 2, {1}));        // [1/4, 1/2) contains 1/3
    CHECK(hits(*a3, 2, 2, {2}));        // [1/2, 3/4) contains 1/2
    CHECK_FALSE(hits(*a3, 2, 2, {3}));  // [3/4, 1) misses
    CHECK(hits(*a3, 2, 2, {4}));        // boundary cell [1, 5/4) holds the point 1
}

TEST_CASE("cell membership on the middle-third set") {
    auto cantor = make_uniform_digit_set(3, 6, 0b101);
    CHECK(hits(*cantor, 3, 1, {0}));
    CHECK_FALSE(hits(*cantor, 3, 1, {1}));  // middle third removed
    CHECK(hits(*cantor, 3, 1, {2}));
    CHECK_FALSE(hits(*cantor, 3, 6, {1}));
    CHECK_FALSE(hits(*cantor, 3, 1, {3}));  // boundary cell: set lives in [0,1)
}

TEST_CASE("digit sets cross-checked against digit-string enumeration") {
    auto sched = minimal_schedule(2);
    auto [a, b] = schedule_to_digit_sets(sched, 4);
    const auto* ds = a->get_if<DigitSet>();
    REQUIRE(ds != nullptr);
    int level = 4;
    std::int64_t total = 10000;
    std::int64_t oracle_hits = 0, engine_hits = 0;
    for (std::int64_t p = 0; p < total; ++p) {
        std::int64_t q = total;
        bool ok = true;
        for (int r = 1; r <= level && ok; ++r) {
            q /= 10;
            int digit = static_cast<int>(p / q % 10);
            if (r <= ds->depth && !(ds->mask_at(r) >> digit & 1)) ok = false;
        }
        bool engine = hits(*a, 10, level, {p});
        CHECK(engine == ok);
        oracle_hits += ok;
        engine_hits += engine;
    }
    CHECK(oracle_hits == engine_hits);
}

TEST_CASE("mismatched query base decided exactly via the interval oracle") {
    auto cantor = make_uniform_digit_set(3, 4, 0b101);
    auto intervals = digit_set_intervals(*cantor->get_if<DigitSet>());
    for (int k = 1; k <= 7; ++k) {
        std::int64_t cells = 1 << k;
        for (std::int64_t p = 0; p < cells; ++p) {
            Rational lo{p, cells}, hi{p + 1, cells};
            CHECK(hits(*cantor, 2, k, {p}) == intervals_meet_halfopen(intervals, lo, hi));
        }
    }
}

TEST_CASE("refinement monotonicity: an intersecting child has an intersecting parent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::uint64_t> masks;
        std::uniform_int_distribution<std::uint64_t> m(1, 6);
        for (int i = 0; i < 4; ++i) masks.push_back(m(rng));
        auto ds = make_digit_set(3, 4, masks);
        for (int k = 0; k < 4; ++k) {
            std::int64_t cells = cells_per_axis(3, k + 1);
            for (std::int64_t p = 0; p <= cells; ++p) {
                if (hits(*ds, 3, k + 1, {p})) CHECK(hits(*ds, 3, k, {p / 3}));
            }
        }
    }
}

TEST_CASE("product cells decide coordinatewise") {
    auto left = make_uniform_digit_set(2, 3, 0b01);  // only digit 0: {x < 1/8 prefix zeros}
    auto right = make_harmonic(2);
    auto prod = make_product(left, right);
    for (std::int64_t p = 0; p <= 4; ++p)
        for (std::int64_t q = 0; q <= 4; ++q) {
            bool expect = hits(*left, 2, 2, {p}) && hits(*right, 2, 2, {q});
            CHECK(hits(*prod, 2, 2, {p, q}) == expect);
        }
    std::vector<std::int64_t> bad{1};
    CHECK_THROWS_AS(cell_intersects(*prod, 2, 2, bad), std::invalid_argument);
}

TEST_CASE("affine images flip half-open boundaries under negative scale") {
    // x -> (1 - x)/2 sends 1/3 to 1/3
    auto one_third = make_finite(1, {{Rational{1, 3}}});
    auto img = make_affine(Rational{-1, 2}, Rational{1, 2}, one_third);
    CHECK(hits(*img, 3, 1, {1}));        // 1/3 lies in [1/3, 2/3)
    CHECK_FALSE(hits(*img, 3, 1, {0}));  // not in [0, 1/3)
    // sanity on a digit-set inner: samples of the image hit their own cells
    auto cantor = make_uniform_digit_set(3, 3, 0b101);
    auto affine_cantor = make_affine(Rational{-1, 3}, Rational{1, 3}, cantor);
    for (const auto& p : sample_points(*affine_cantor, 8)) {
        auto cell = cell_of_point(p, 3, 4);
        CHECK(cell_intersects(*affine_cantor, 3, 4, cell));
    }
}

TEST_CASE("sample extraction") {
    auto fin = make_finite(1, {{Rational{0}}, {Rational{1, 2}}});
    auto pts = sample_points(*fin, 10);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0][0] == 0);
    CHECK(pts[1][0] == Rational{1, 2});

    auto h5 = make_harmonic(5);
    auto hpts = sample_points(*h5, 100);
    REQUIRE(hpts.size() == 6);
    CHECK(hpts[0][0] == 0);
    CHECK(hpts[1][0] == 1);
    CHECK(hpts[5][0] == Rational{1, 5});

    auto cantor = make_uniform_digit_set(3, 3, 0b101);
    auto cpts = sample_points(*cantor, 8);
    REQUIRE(cpts.size() == 8);  // all 2^3 truncated expansions
    for (const auto& p : cpts) {
        Rational x = p[0];
        for (int r = 1; r <= 3; ++r) {
            x *= 3;
            BigInt digit = floor_rat(x);
            x -= Rational{digit};
            CHECK((digit == 0 || digit == 2));
        }
    }
}

TEST_CASE("budgeted digit samples truncate depth, not the lexicographic order") {
    auto deep = make_uniform_digit_set(3, 10, 0b101);
    auto pts = sample_points(*deep, 300);
    REQUIRE(pts.size() == 256);  // full enumeration of the deepest level fitting 300
    CHECK(pts.front()[0] == 0);
    CHECK(pts.back()[0] == Rational{6560, 6561});  // 0.22222222 in base 3, padded with 0s
    for (const auto& p : pts) {
        auto cell = cell_of_point(p, 3, 10);
        CHECK(cell_intersects(*deep, 3, 10, cell));  // padding keeps samples inside the set
    }
    auto one = sample_points(*deep, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0][0] == 0);  // minimal point when nothing fits
}

TEST_CASE("samples always hit their own grid cell") {
    auto sched = minimal_schedule(2);
    auto [a, b] = schedule_to_digit_sets(sched, 5);
    std::vector<SetModelPtr> models{make_harmonic(6), make_uniform_digit_set(3, 4, 0b101), a,
                                    make_product(a, b),
                                    make_affine(Rational{1, 2}, Rational{1, 4}, b)};
    for (const auto& model : models) {
        for (const auto& p : sample_points(*model, 12)) {
            for (int base : {2, 10}) {
                for (int level : {1, 3}) {
                    auto cell = cell_of_point(p, base, level);
                    CHECK(cell_intersects(*model, base, level, cell));
                }
            }
        }
    }
}

TEST_CASE("empty finite model") {
    auto empty = make_finite(1, {});
    CHECK_FALSE(hits(*empty, 2, 3, {0}));
    CHECK(sample_points(*empty, 5).empty());
}
