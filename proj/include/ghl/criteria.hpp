#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ghl/poly.hpp"

namespace ghl {

enum class Method {
    DLK_PRIME,
    LEMMA_R,
    SLOPE_WINDOW,
    DELTA_DIVISIBILITY,
    SPECIAL_2ADIC,
    SPECIAL_3ADIC,
    LAGUERRE_NP,
    // Fallbacks, used when nothing above applies.
    DUMAS_NP,
    RATIONAL_ROOT,
    CAPELLI,
};

std::string_view to_string(Method m) noexcept;
std::optional<Method> method_from_string(std::string_view s) noexcept;

/// One certificate line: the degrees (of G(x^delta)) removed by one criterion.
struct ExclusionRecord {
    std::int64_t k_lo = 0;
    std::int64_t k_hi = 0;
    Method method = Method::DLK_PRIME;
    std::optional<std::uint64_t> witness_prime;  // only for DLK_PRIME
    std::vector<std::int64_t> degrees;           // sorted, mirrors included
    nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
};

/// Largest prime p with p | prod_{j<k} (alpha+(u+n-j)d), p not dividing
/// prod_{j=1..k} (alpha+(u+j)d) nor a_0 a_n, p > d and p >= min(2k, d(d-1)).
std::optional<std::uint64_t> find_exclusion_prime(const GhlParams& params, std::int64_t k,
                                                  const SeedCoefficients& seed);

/// Re-checks the five conditions with big-integer products; independent of
/// the factoring path used by find_exclusion_prime.
bool exclusion_prime_valid(const GhlParams& params, std::int64_t k, const SeedCoefficients& seed,
                           std::uint64_t p);

/// Degrees of G(x^delta) removed by a DLK prime at k: {k} for delta = 1,
/// [dk-d+1, dk] for delta = d; mirrors m-K added.
std::vector<std::int64_t> dlk_excluded_degrees(const GhlParams& params, std::int64_t k);

struct CriteriaOptions {
    std::vector<std::uint64_t> primes;  // empty means primes below 400
    bool use_dlk = true;
    bool use_lemma_r = true;
    bool use_slope_window = true;
};

struct ExclusionResult {
    std::vector<ExclusionRecord> records;
    std::vector<std::int64_t> unresolved;  // degrees in [1, delta n - 1]
};

/// DLK primes for k = 1..n/2, then Lemma <r and the slope window over the
/// prime list, on G(x^delta). Unresolved degrees are returned, not thrown.
ExclusionResult exclude_degrees(const GhlParams& params, const SeedCoefficients& seed,
                                const CriteriaOptions& options = {});

nlohmann::ordered_json to_json(const ExclusionRecord& r);

}  // namespace ghl
