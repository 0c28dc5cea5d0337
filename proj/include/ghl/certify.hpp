#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ghl/criteria.hpp"
#include "ghl/poly.hpp"

namespace ghl {

enum class Verdict { IRREDUCIBLE_CERTIFIED, EXCLUSIONS_ONLY, EXCEPTIONAL_FAMILY };

std::string_view to_string(Verdict v) noexcept;

inline constexpr int kCertificateSchemaVersion = 1;

struct Certificate {
    GhlParams params;
    std::string seed;
    std::vector<ExclusionRecord> records;
    std::vector<std::int64_t> residual;  // degrees in [1, delta n - 1] left open
    Verdict verdict = Verdict::EXCLUSIONS_ONLY;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const;
};

/// Excluded degrees and residual partition [1, delta n - 1] with no overlap.
bool certificate_partition_ok(const Certificate& cert);

/// 2-adic break data for d = 3 with alpha + 3(u+n) = 2^a.
struct BreakSequence {
    int eta = 0;
    std::int64_t s = 0;
    std::int64_t a = 0;
    std::int64_t u = 0;
    std::vector<std::int64_t> breaks;  // n_0 = 0 < n_1 < ... < n_s = n

    std::int64_t n() const { return breaks.back(); }
};

BreakSequence expected_breaks(const GhlParams& params);
/// The sequence for given eta, s and u, with n = -u + 2^eta (1 + 4 + ... + 4^(s-1)).
BreakSequence make_break_sequence(int eta, std::int64_t s, std::int64_t u);
struct BreakCheck {
    bool breaks_ok = true;     // nu((n_i - 1)!) = n_i - a + i for 1 <= i <= s-1
    bool endpoint_ok = true;   // nu((n - 1)!) = n - s + u + 1 - 2^eta
    bool lower_bound_ok = true;
    std::int64_t endpoint_legendre = 0;
    std::int64_t endpoint_closed = 0;

    bool ok() const { return breaks_ok && endpoint_ok && lower_bound_ok; }
};

/// Legendre evaluation against the closed forms at every break, at n - 1,
/// and the lower bound nu((j-1)!) >= j - h for j < 2^h.
BreakCheck check_break_valuations(const BreakSequence& bs, std::int64_t u);
bool verify_break_valuations(const BreakSequence& bs, std::int64_t u);

/// Ones-seed 2-adic polygon of G(x^delta) against the expected breaks, slope
/// window (1/delta, 2/delta), then Lemma <r at k = delta.
ExclusionRecord special_2adic_certify(const GhlParams& params, const SeedCoefficients& seed);

/// The k = 2 case with alpha + 3(u+n-1) = 125: degrees {delta+1, ..., 2 delta}
/// via Lemma <r on the same polygon. Empty when the instance is not that case.
std::optional<ExclusionRecord> special_2adic_k2_certify(const GhlParams& params, const SeedCoefficients& seed);

/// (j0, l0) for d = 4 and (u, alpha) in {(-1,1), (0,3)}.
std::pair<std::int64_t, std::int64_t> special_3adic_j0_l0(const GhlParams& params);
/// Direct valuation check for s <= 3 and the exponential inequality for
/// 3 < s <= s_max; true when both hold.
bool special_3adic_check(const GhlParams& params, std::int64_t s_max = 10000);

/// Which exceptional Laguerre family (if any) the parameters fall in.
std::optional<std::string> laguerre_family(const GhlParams& params);

/// Largest prime p | n not dividing (alpha+(u-1)d)(alpha+ud)(alpha+(u+1)d)
/// nor alpha+(u+n)d.
std::optional<std::uint64_t> laguerre_prime(const GhlParams& params);

/// Newton polygon of n! L(x^delta) at the chosen prime, the three vertex conditions on its
/// vertices; degree delta is excluded only when segment admissibility says so.
ExclusionRecord laguerre_np_certify(const GhlParams& params);

/// Rational roots of a polynomial whose constant and leading coefficients
/// come with known factorizations. Empty optional when the search exceeds cap.
std::optional<std::vector<mpq_class>> rational_roots(const IntegerPolynomial& poly,
                                                     const std::vector<std::pair<std::uint64_t, int>>& c0_factors,
                                                     const std::vector<std::pair<std::uint64_t, int>>& cn_factors,
                                                     std::uint64_t cap = 2000000);

struct CertifyOptions {
    std::vector<std::uint64_t> primes;  // generic Newton-polygon primes; empty means below 400
    bool special_handlers = true;
    bool fallbacks = true;  // rational roots and the Capelli step
};

Certificate full_certify(const GhlParams& params, const SeedCoefficients& seed, const CertifyOptions& options = {});

bool is_laguerre_seed(const SeedCoefficients& seed);

}  // namespace ghl
