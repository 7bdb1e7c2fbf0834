#include "hsdim/schedule.hpp"

#include "hsdim/covering.hpp"

#include <doctest.h>

#include <set>

using namespace hsdim;

TEST_CASE("minimal schedule recursion") {
    auto s = minimal_schedule(3);
    CHECK(s.m == std::vector<std::int64_t>{0, 1, 2, 3, 6, 12, 32, 96});
    CHECK(s.t == std::vector<Rational>{{1, 2}, {1, 3}, {1, 4}});
    // each entry is tight: one less would violate a constraint or monotonicity
    CHECK_THROWS_AS(make_schedule(s.t, {0, 1, 2, 3, 5, 12, 32, 96}), std::invalid_argument);
    CHECK_THROWS_AS(make_schedule(s.t, {0, 1, 2, 3, 6, 11, 32, 96}), std::invalid_argument);
    CHECK_THROWS_AS(make_schedule(s.t, {0, 1, 2, 3, 6, 12, 31, 96}), std::invalid_argument);
}

TEST_CASE("constraint violations are rejected") {
    // sum of first odd block = 1 needs t_1 * m_2 >= 1
    CHECK_THROWS_AS(make_schedule({Rational{1, 3}}, {0, 1, 2}), std::invalid_argument);
    CHECK_NOTHROW(make_schedule({Rational{1, 3}}, {0, 1, 3}));
    // not increasing / wrong start
    CHECK_THROWS_AS(make_schedule({Rational{1, 2}}, {0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_schedule({Rational{1, 2}}, {1, 2, 3}), std::invalid_argument);
    // t not decreasing
    CHECK_THROWS_AS(make_schedule({Rational{1, 2}, Rational{1, 2}}, {0, 1, 4, 8, 40}),
                    std::invalid_argument);
    // t list too short for the m list
    CHECK_THROWS_AS(make_schedule({Rational{1, 2}}, {0, 1, 2, 3, 40}), std::invalid_argument);
}

TEST_CASE("digit-set pair free positions partition the depth range") {
    auto s = make_schedule({Rational{1, 2}}, {0, 1, 3, 7});
    auto [a, b] = schedule_to_digit_sets(s, 7);
    const auto* da = a->get_if<DigitSet>();
    const auto* db = b->get_if<DigitSet>();
    REQUIRE(da);
    REQUIRE(db);
    std::uint64_t full = (1ull << 10) - 1;
    std::set<int> free_a, free_b;
    for (int r = 1; r <= 7; ++r) {
        std::uint64_t ma = da->mask_at(r), mb = db->mask_at(r);
        CHECK(((ma == full) != (mb == full)));  // exactly one side free
        CHECK(((ma == 1) || (ma == full)));     // the other is pinned to digit 0
        CHECK(((mb == 1) || (mb == full)));
        if (ma == full) free_a.insert(r);
        if (mb == full) free_b.insert(r);
    }
    CHECK(free_a == std::set<int>{1, 4, 5, 6, 7});  // blocks (0,1] and (3,7]
    CHECK(free_b == std::set<int>{2, 3});           // block (1,3]
    CHECK(free_positions_a(s, 7) == 5);
    CHECK(free_positions_b(s, 7) == 2);
    CHECK(free_positions_a(s, 3) == 1);
    CHECK(free_positions_b(s, 3) == 2);
}

TEST_CASE("depth zero truncations") {
    auto s = make_schedule({Rational{1, 2}}, {0, 1, 2});
    auto [a, b] = schedule_to_digit_sets(s, 0);
    auto pa = sample_points(*a, 10);
    auto pb = sample_points(*b, 10);
    REQUIRE(pa.size() == 1);
    REQUIRE(pb.size() == 1);
    CHECK(pa[0][0] == 0);
    CHECK(pb[0][0] == 0);
    CHECK(cube_count(*a, 10, 0).count == 1);
}

TEST_CASE("depth beyond schedule coverage is an error") {
    auto s = make_schedule({Rational{1, 2}}, {0, 1, 2});
    CHECK_THROWS_AS(schedule_to_digit_sets(s, 3), std::invalid_argument);
}

TEST_CASE("free position counters against a direct scan") {
    auto s = minimal_schedule(3);
    for (std::int64_t level : {1, 2, 3, 6, 12, 20, 32, 96}) {
        std::int64_t a = 0, b = 0;
        for (std::int64_t r = 1; r <= level; ++r)
            (schedule_position_free_in_a(s, r) ? a : b) += 1;
        CHECK(free_positions_a(s, level) == a);
        CHECK(free_positions_b(s, level) == b);
        CHECK(a + b == level);  // complementary construction
    }
}
