#pragma once

#include "hsdim/set_model.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hsdim {

// Block-length schedule driving the alternating digit-zeroing pair (A, B).
// t[j-1] holds t_j for j >= 1, strictly decreasing and positive.
// m[0] = 0, strictly increasing. Construction enforces, for every j >= 1
// with the needed entries present:
//   sum_{k=0}^{j-1} (m_{2k+1} - m_{2k}) <= t_j * m_{2j}
//   sum_{k=1}^{j}   (m_{2k} - m_{2k-1}) <= t_j * m_{2j+1}
struct Schedule {
    std::vector<Rational> t;
    std::vector<std::int64_t> m;
};

// Validates and returns the schedule; throws std::invalid_argument on any
// violated constraint.
Schedule make_schedule(std::vector<Rational> t, std::vector<std::int64_t> m);

// t_j = 1/(j+1) with each m_j the smallest integer satisfying the
// constraints; produces entries m_0 .. m_{2*j_max + 1}.
Schedule minimal_schedule(int j_max);

// Digit positions 1..depth split into blocks (m_i, m_{i+1}]. A is free on
// even-index blocks and zeroed on odd-index blocks; B is the complement.
// Positions are decimal (base 10).
bool schedule_position_free_in_a(const Schedule& s, std::int64_t position);

// Truncations of A and B as depth-`depth` decimal digit sets.
// Requires depth <= m.back().
std::pair<SetModelPtr, SetModelPtr> schedule_to_digit_sets(const Schedule& s, int depth);

// Number of free digit positions of A (resp. B) up to `level` inclusive.
std::int64_t free_positions_a(const Schedule& s, std::int64_t level);
std::int64_t free_positions_b(const Schedule& s, std::int64_t level);

}  // namespace hsdim
