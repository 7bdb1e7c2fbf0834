#include "hsdim/schedule.hpp"

#include <algorithm>

namespace hsdim {

Schedule make_schedule(std::vector<Rational> t, std::vector<std::int64_t> m) {
    if (m.empty() || m[0] != 0) throw std::invalid_argument("Schedule: m must start at m_0 = 0");
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] <= m[i - 1]) throw std::invalid_argument("Schedule: m must be strictly increasing");
    if (t.empty()) throw std::invalid_argument("Schedule: t must be nonempty");
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (t[j] <= 0) throw std::invalid_argument("Schedule: t entries must be positive");
        if (j > 0 && t[j] >= t[j - 1]) throw std::invalid_argument("Schedule: t must be strictly decreasing");
    }

    auto t_at = [&](std::size_t j) -> const Rational& {  // t_j, j >= 1
        if (j - 1 >= t.size()) throw std::invalid_argument("Schedule: t list too short for m list");
        return t[j - 1];
    };
    Rational odd_gaps{0}, even_gaps{0};  // running sums of (m_{2k+1}-m_{2k}) and (m_{2k}-m_{2k-1})
    for (std::size_t j = 1; 2 * j < m.size(); ++j) {
        odd_gaps += m[2 * j - 1] - m[2 * j - 2];
        if (odd_gaps > t_at(j) * m[2 * j])
            throw std::invalid_argument("Schedule: odd-block constraint violated at j = " + std::to_string(j));
        if (2 * j + 1 < m.size()) {
            even_gaps += m[2 * j] - m[2 * j - 1];
            if (even_gaps > t_at(j) * m[2 * j + 1])
                throw std::invalid_argument("Schedule: even-block constraint violated at j = " +
                                            std::to_string(j));
        }
    }
    return Schedule{std::move(t), std::move(m)};
}

Schedule minimal_schedule(int j_max) {
    if (j_max < 1) throw std::invalid_argument("minimal_schedule: j_max must be >= 1");
    std::vector<Rational> t;
    for (int j = 1; j <= j_max; ++j) t.emplace_back(1, j + 1);

    std::vector<std::int64_t> m{0, 1};
    Rational odd_gaps{0}, even_gaps{0};
    for (int j = 1; j <= j_max; ++j) {
        const Rational& tj = t[static_cast<std::size_t>(j - 1)];
        odd_gaps += m[2 * j - 1] - m[2 * j - 2];
        BigInt need = ceil_rat(odd_gaps / tj);
        std::int64_t m2j = std::max<std::int64_t>(m.back() + 1, need.convert_to<std::int64_t>());
        m.push_back(m2j);
        even_gaps += m[2 * j] - m[2 * j - 1];
        need = ceil_rat(even_gaps / tj);
        std::int64_t m2j1 = std::max<std::int64_t>(m.back() + 1, need.convert_to<std::int64_t>());
        m.push_back(m2j1);
    }
    return make_schedule(std::move(t), std::move(m));
}

namespace {

// Index i of the block (m_i, m_{i+1}] containing the position.
std::size_t block_index(const Schedule& s, std::int64_t position) {
    if (position < 1 || position > s.m.back())
        throw std::invalid_argument("Schedule: position outside covered range");
    auto it = std::lower_bound(s.m.begin(), s.m.end(), position);
    return static_cast<std::size_t>(it - s.m.begin()) - 1;
}

}  // namespace

bool schedule_position_free_in_a(const Schedule& s, std::int64_t position) {
    return block_index(s, position) % 2 == 0;
}

std::pair<SetModelPtr, SetModelPtr> schedule_to_digit_sets(const Schedule& s, int depth) {
    if (depth < 0) throw std::invalid_argument("schedule_to_digit_sets: negative depth");
    if (depth > s.m.back()) throw std::invalid_argument("schedule_to_digit_sets: depth exceeds schedule coverage");
    constexpr int base = 10;
    const std::uint64_t full = (1ull << base) - 1;
    const std::uint64_t zero_only = 1ull;
    std::vector<std::uint64_t> a, b;
    a.reserve(static_cast<std::size_t>(depth));
    b.reserve(static_cast<std::size_t>(depth));
    for (std::int64_t r = 1; r <= depth; ++r) {
        bool free_in_a = schedule_position_free_in_a(s, r);
        a.push_back(free_in_a ? full : zero_only);
        b.push_back(free_in_a ? zero_only : full);
    }
    return {make_digit_set(base, depth, std::move(a)), make_digit_set(base, depth, std::move(b))};
}

std::int64_t free_positions_a(const Schedule& s, std::int64_t level) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i + 1 < s.m.size(); i += 2) {
        std::int64_t lo = s.m[i], hi = s.m[i + 1];
        if (level <= lo) break;
        count += std::min(level, hi) - lo;
    }
    return count;
}

std::int64_t free_positions_b(const Schedule& s, std::int64_t level) {
    std::int64_t count = 0;
    for (std::size_t i = 1; i + 1 < s.m.size(); i += 2) {
        std::int64_t lo = s.m[i], hi = s.m[i + 1];
        if (level <= lo) break;
        count += std::min(level, hi) - lo;
    }
    return count;
}

}  // namespace hsdim
