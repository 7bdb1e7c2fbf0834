#pragma once

#include "hsdim/dimension.hpp"
#include "hsdim/schedule.hpp"

#include <json.hpp>

#include <optional>
#include <random>
#include <string>

namespace hsdim {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

// One executable claim check: the statement, what went in, what came out,
// and whether the computed quantities satisfy it. Deterministic in its
// inputs, so reports are reproducible byte for byte.
struct ClaimReport {
    std::string id;
    std::string statement;
    nlohmann::json inputs;
    nlohmann::json computed;
    Verdict verdict = Verdict::Inconclusive;
    std::string notes;

    bool pass() const { return verdict == Verdict::Pass; }
    bool fail() const { return verdict == Verdict::Fail; }
};

// Counting-level comparison constants at grid level k (base 2):
//   N*(E; 2^-k) <= 3^n N(E; 2^-(k+1))   and   N(E; 2^-(k+1)) <= (2n)^n N*(E; 2^-k).
// With certified-only ball bounds, asserts just the directions the
// certificate implies and reports Inconclusive otherwise.
ClaimReport check_comparison(std::span<const Point> points, int k, int exact_cap = 64);
ClaimReport check_comparison(const SetModel& model, int k, int sample_budget = 4096, int exact_cap = 64);

// Grid factorization N*(AxB) = N*(A) N*(B) at every level 1..k, the product
// count re-derived by independent 2-D enumeration. Equality of the counts
// gives the premeasure product relation at exponent split (s, t) exactly.
ClaimReport check_product_inequality(const SetModelPtr& a, const SetModelPtr& b, int base, int k,
                                     const Rational& s, const Rational& t);

// Digit-schedule pair: closed-form counts at the block ends, enumeration
// cross-check up to enumeration_limit digits, quotient bounds
// log10(count)/level <= t_j, and full product grid N*(AxB; 10^-m) = 10^m.
ClaimReport check_schedule_example(const Schedule& s, int j_max, int enumeration_limit = 6);

// Lipschitz projection surrogate psi(x,y) = x+y (c^2 = 2, squared-distance
// arithmetic): N(psi(E); c*delta) <= N(E; delta) on certified covers.
ClaimReport check_projection_bound(std::span<const Point> plane_points, const Rational& delta,
                                   int exact_cap = 64);

// Harmonic truncations A_n = {0} u {1/k : k <= n}: exact count n+1 at radii
// delta_n/2 and delta_n with delta_n = 1/(n+n^2), exact t = 1/2 premeasure
// values decreasing toward sqrt(2), and the log-log slope near 1/2.
ClaimReport check_harmonic_K(int n_max, int exact_cap = 128);

// Seeded generators for property-style instances.
std::vector<Point> random_points(std::mt19937_64& rng, int count, int dim, std::int64_t denominator = 1024);
SetModelPtr random_digit_set(std::mt19937_64& rng, int min_base = 2, int max_base = 5, int depth = 6);

struct SuiteConfig {
    std::uint64_t seed = 1;
    int exact_cap = 64;
    int random_sets = 10;
    int harmonic_n_max = 32;
    int schedule_j_max = 3;
    std::optional<Schedule> schedule;  // overrides the minimal default
};

// suite: all | comparison | product | schedule | projection | harmonic
std::vector<ClaimReport> run_verification_suite(const std::string& suite, const SuiteConfig& cfg = {});

}  // namespace hsdim
