#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ghl {

/// Smallest-prime-factor table for 2..limit, filled segment by segment on
/// worker threads. Immutable after construction.
class SpfTable {
public:
    static constexpr std::uint64_t kDefaultSegment = std::uint64_t{1} << 20;

    explicit SpfTable(std::uint64_t limit, unsigned threads = 0, std::uint64_t segment = kDefaultSegment);

    std::uint64_t limit() const noexcept { return limit_; }
    /// Smallest prime factor of 2 <= m <= limit.
    std::uint64_t spf(std::uint64_t m) const;
    bool is_prime(std::uint64_t m) const { return m >= 2 && m <= limit_ && spf_[m] == m; }
    /// Greatest prime factor; uses the table up to limit and trial division beyond.
    std::uint64_t gpf(std::uint64_t m) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
};

struct SieveReport {
    std::string query;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    nlohmann::ordered_json exceptions = nlohmann::ordered_json::array();
    nlohmann::ordered_json extremal = nlohmann::ordered_json::object();
    double elapsed_ms = 0.0;

    /// Canonical body; elapsed_ms only when asked for.
    nlohmann::ordered_json to_json(bool with_timing = false) const;
};

/// P(m) with P(1) = 1; negative inputs use |m|.
std::uint64_t gpf(std::int64_t m);

/// max P over n, n+d, ..., n+d(k-1).
std::uint64_t gpf_ap_product(const SpfTable& table, std::uint64_t n, std::uint64_t d, std::uint64_t k);
std::uint64_t gpf_ap_product(std::uint64_t n, std::uint64_t d, std::uint64_t k);

struct GpfFilter {
    std::uint64_t min_exclusive = 0;  // only n > min_exclusive
    std::uint64_t coprime_to = 1;     // only gcd(n, coprime_to) = 1
};

/// All n <= n_limit passing the filter with P(n(n+d)...(n+d(k-1))) <= bound.
SieveReport verify_gpf_bound(const SpfTable& table, std::uint64_t d, std::uint64_t k, std::uint64_t bound,
                             std::uint64_t n_limit, const GpfFilter& filter);

/// m in [1, limit] with P(m(m+gap)) <= M.
std::vector<std::uint64_t> smooth_pairs(const SpfTable& table, std::uint64_t M, std::uint64_t gap,
                                        std::uint64_t limit);

/// (i, X) with P(X(X+3i)) = 5, 2 | X(X+3i), X > 80, 3 not dividing X, 1 <= i <= 7, X <= limit.
std::vector<std::pair<int, std::uint64_t>> solve_upto7(const SpfTable& table, std::uint64_t limit);

/// Consecutive primes in each residue class mod `modulus`, over pairs whose
/// first prime is <= limit. Exceptions are the pairs with gap > gap_bound.
SieveReport ap_prime_gaps(std::uint64_t modulus, const std::vector<std::int64_t>& residues, std::uint64_t limit,
                          std::uint64_t gap_bound, unsigned threads = 0);

/// Number of primes p <= x with p = l (mod modulus).
std::uint64_t residue_prime_count(double x, std::uint64_t modulus, std::int64_t l);

struct RSet {
    std::int64_t k = 0;
    std::int64_t alpha = 0;
    std::vector<std::uint64_t> primes;
    std::int64_t printed_formula = 0;  // closed-form count pi_a(3k+a) + pi_a((3k+a)/2) - 1
    bool matches_formula() const { return printed_formula == static_cast<std::int64_t>(primes.size()); }
};

/// Primes dividing prod_{i=1}^{k} (alpha + 3i), alpha = 1 for even k, 2 for odd k.
RSet r_set(std::int64_t k);

struct SmoothnessBound {
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::int64_t exponent = 0;  // k + 1 - pi(4k+3)
    mpz_class radicand;         // (k-1)! prod p^{L0(p)}
    mpz_class floor_root;       // floor of radicand^(1/exponent)
    double value = 0.0;
    double variant_value = 0.0;  // ((k-1)! 2^{-ord_2((k-1)!)})^(1/exponent)
};

/// The bound on n for the first l primes. printed_variant uses pi(4k) inside
/// L0; the default uses pi(4k+3) throughout.
SmoothnessBound smoothness_bound(std::int64_t k, std::int64_t l, bool printed_variant = false, std::int64_t d = 4);

double growth_rhs(std::int64_t k, std::int64_t v0);
double growth_lhs(std::int64_t v0);
/// log(8 e v0) < 4 log(4 k v0)/log(4k+3) (1 + 1.2762/log(4k+3)).
bool growth_inequality(std::int64_t k, std::int64_t v0);

/// P(n(n+d)...(n+d(k-1))) >= n, only inside the ranges where it is claimed
/// and for gcd(n, d) = 1.
bool lemma43_predicate(std::uint64_t n, std::uint64_t d, std::uint64_t k);

}  // namespace ghl
