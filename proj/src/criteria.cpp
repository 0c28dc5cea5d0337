#include "ghl/criteria.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ghl/error.hpp"
#include "ghl/newton.hpp"
#include "ghl/primes.hpp"
#include "ghl/valuation.hpp"

namespace ghl {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 10> kMethodNames{{
    {Method::DLK_PRIME, "DLK_PRIME"},
    {Method::LEMMA_R, "LEMMA_R"},
    {Method::SLOPE_WINDOW, "SLOPE_WINDOW"},
    {Method::DELTA_DIVISIBILITY, "DELTA_DIVISIBILITY"},
    {Method::SPECIAL_2ADIC, "SPECIAL_2ADIC"},
    {Method::SPECIAL_3ADIC, "SPECIAL_3ADIC"},
    {Method::LAGUERRE_NP, "LAGUERRE_NP"},
    {Method::DUMAS_NP, "DUMAS_NP"},
    {Method::RATIONAL_ROOT, "RATIONAL_ROOT"},
    {Method::CAPELLI, "CAPELLI"},
}};

std::uint64_t abs_u64(std::int64_t v) { return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

bool seed_coprime(const SeedCoefficients& seed, std::uint64_t p) {
    const auto pl = static_cast<unsigned long>(p);
    return mpz_divisible_ui_p(seed.values.front().get_mpz_t(), pl) == 0 &&
           mpz_divisible_ui_p(seed.values.back().get_mpz_t(), pl) == 0;
}

void check_k(const GhlParams& params, std::int64_t k) {
    if (params.u != -1 && params.u != 0) fail(Errc::invalid_params, "criterion requires u in {-1, 0}");
    if (k < 1 || 2 * k > params.n) fail(Errc::out_of_range, "k must satisfy 1 <= k <= n/2");
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    for (const auto& [method, name] : kMethodNames)
        if (method == m) return name;
    return "UNKNOWN";
}

std::optional<Method> method_from_string(std::string_view s) noexcept {
    for (const auto& [method, name] : kMethodNames)
        if (name == s) return method;
    return std::nullopt;
}

std::optional<std::uint64_t> find_exclusion_prime(const GhlParams& params, std::int64_t k,
                                                  const SeedCoefficients& seed) {
    params.validate();
    seed.validate(params.n);
    check_k(params, k);
    const auto d = static_cast<std::uint64_t>(params.d);
    const std::uint64_t size_floor = std::min<std::uint64_t>(2 * static_cast<std::uint64_t>(k), d * (d - 1));

    std::set<std::uint64_t> bottom;
    for (std::int64_t j = 1; j <= k; ++j)
        for (const auto& [p, e] : factor_trial(abs_u64(params.term(j)))) bottom.insert(p);

    std::optional<std::uint64_t> best;
    for (std::int64_t j = 0; j < k; ++j) {
        for (const auto& [p, e] : factor_trial(abs_u64(params.term(params.n - j)))) {
            if (p <= d || p < size_floor || bottom.contains(p) || !seed_coprime(seed, p)) continue;
            if (!best || p > *best) best = p;
        }
    }
    return best;
}

bool exclusion_prime_valid(const GhlParams& params, std::int64_t k, const SeedCoefficients& seed,
                           std::uint64_t p) {
    if (!is_prime(p)) return false;
    const auto d = static_cast<std::uint64_t>(params.d);
    if (p <= d) return false;
    if (p < std::min<std::uint64_t>(2 * static_cast<std::uint64_t>(k), d * (d - 1))) return false;
    const mpz_class top = term_product(params, params.n - k + 1, params.n);
    const mpz_class low = term_product(params, 1, k);
    const mpz_class ends = seed.values.front() * seed.values.back();
    const auto pl = static_cast<unsigned long>(p);
    return mpz_divisible_ui_p(top.get_mpz_t(), pl) != 0 && mpz_divisible_ui_p(low.get_mpz_t(), pl) == 0 &&
           mpz_divisible_ui_p(ends.get_mpz_t(), pl) == 0;
}

std::vector<std::int64_t> dlk_excluded_degrees(const GhlParams& params, std::int64_t k) {
    const std::int64_t m = params.delta * params.n;
    std::set<std::int64_t> out;
    const std::int64_t lo = params.delta == 1 ? k : params.d * k - params.d + 1;
    const std::int64_t hi = params.delta == 1 ? k : params.d * k;
    for (std::int64_t K = lo; K <= hi; ++K) {
        if (K >= 1 && K < m) {
            out.insert(K);
            out.insert(m - K);
        }
    }
    return {out.begin(), out.end()};
}

namespace {

std::vector<std::int64_t> with_mirrors(std::int64_t m, std::int64_t lo, std::int64_t hi) {
    std::set<std::int64_t> out;
    for (std::int64_t K = lo; K <= hi; ++K) {
        out.insert(K);
        out.insert(m - K);
    }
    return {out.begin(), out.end()};
}

// Keeps only degrees still open and marks them closed.
std::vector<std::int64_t> claim(std::vector<bool>& open, const std::vector<std::int64_t>& degrees) {
    std::vector<std::int64_t> fresh;
    for (auto K : degrees) {
        if (K >= 1 && static_cast<std::size_t>(K) < open.size() && open[static_cast<std::size_t>(K)]) {
            open[static_cast<std::size_t>(K)] = false;
            fresh.push_back(K);
        }
    }
    return fresh;
}

struct Candidate {
    const char* source;
    NewtonPolygon polygon;
    bool seed_ok;
};

}  // namespace

ExclusionResult exclude_degrees(const GhlParams& params, const SeedCoefficients& seed,
                                const CriteriaOptions& options) {
    params.validate();
    seed.validate(params.n);
    const std::int64_t m = params.delta * params.n;
    std::vector<bool> open(static_cast<std::size_t>(m), true);
    if (m > 0) open[0] = false;
    ExclusionResult result;

    if (options.use_dlk && (params.u == -1 || params.u == 0)) {
        for (std::int64_t k = 1; 2 * k <= params.n; ++k) {
            const auto p = find_exclusion_prime(params, k, seed);
            if (!p) continue;
            auto fresh = claim(open, dlk_excluded_degrees(params, k));
            if (fresh.empty()) continue;
            ExclusionRecord rec;
            rec.k_lo = params.delta == 1 ? k : params.d * k - params.d + 1;
            rec.k_hi = params.delta == 1 ? k : params.d * k;
            rec.method = Method::DLK_PRIME;
            rec.witness_prime = *p;
            rec.degrees = std::move(fresh);
            std::vector<std::int64_t> top;
            for (std::int64_t j = 0; j < k; ++j) top.push_back(params.term(params.n - j));
            rec.evidence["k"] = k;
            rec.evidence["top_terms"] = top;
            result.records.push_back(std::move(rec));
        }
    }

    if (options.use_lemma_r || options.use_slope_window) {
        const std::vector<std::uint64_t> primes = options.primes.empty() ? primes_up_to(400) : options.primes;
        const SeedCoefficients ones = ones_seed(params.n);
        for (const auto p : primes) {
            if (std::none_of(open.begin(), open.end(), [](bool b) { return b; })) break;
            // g is the all-ones skeleton (valid for any seed with p not dividing
            // a_0 a_n); the polynomial itself is the degenerate seed a_j = 1.
            std::vector<Candidate> candidates;
            const auto g_vals = ghl_coefficient_valuations(p, params, ones);
            candidates.push_back({"skeleton", polygon_from_valuations(p, g_vals), seed_coprime(seed, p)});
            const auto f_vals = ghl_coefficient_valuations(p, params, seed);
            if (f_vals.back() == Valuation(0))
                candidates.push_back({"polynomial", polygon_from_valuations(p, f_vals), true});

            for (const auto& c : candidates) {
                if (!c.seed_ok) continue;
                if (options.use_lemma_r) {
                    for (std::int64_t K = 1; 2 * K <= m; ++K) {
                        if (!open[static_cast<std::size_t>(K)] && !open[static_cast<std::size_t>(m - K)]) continue;
                        const auto r = lemma_r_witness(c.polygon, K);
                        if (!r) continue;
                        auto fresh = claim(open, {K, m - K});
                        ExclusionRecord rec;
                        rec.k_lo = rec.k_hi = K;
                        rec.method = Method::LEMMA_R;
                        rec.degrees = std::move(fresh);
                        std::sort(rec.degrees.begin(), rec.degrees.end());
                        rec.evidence["prime"] = p;
                        rec.evidence["r"] = *r;
                        rec.evidence["polygon"] = c.source;
                        rec.evidence["g_k"] = newton_function(c.polygon, Rational(K)).str();
                        rec.evidence["tail"] =
                            (newton_function(c.polygon, Rational(m)) - newton_function(c.polygon, Rational(m - K))).str();
                        result.records.push_back(std::move(rec));
                    }
                }
                if (options.use_slope_window) {
                    // l is the last x whose height is zero; heights beyond it are positive.
                    const auto& h = c.polygon.heights();
                    std::int64_t l = 0;
                    for (std::int64_t x = 0; x <= m; ++x)
                        if (h[static_cast<std::size_t>(x)] == Valuation(0)) l = x;
                    const Rational s = c.polygon.max_slope();
                    if (s <= Rational(0)) continue;
                    std::int64_t k = (Rational(1) / s).floor_below();
                    k = std::min(k, m / 2);
                    if (k <= l || !slope_window_excludes(c.polygon, l, k)) continue;
                    auto fresh = claim(open, with_mirrors(m, l + 1, k));
                    if (fresh.empty()) continue;
                    ExclusionRecord rec;
                    rec.k_lo = l + 1;
                    rec.k_hi = k;
                    rec.method = Method::SLOPE_WINDOW;
                    rec.degrees = std::move(fresh);
                    std::sort(rec.degrees.begin(), rec.degrees.end());
                    rec.evidence["prime"] = p;
                    rec.evidence["l"] = l;
                    rec.evidence["max_slope"] = s.str();
                    rec.evidence["polygon"] = c.source;
                    result.records.push_back(std::move(rec));
                }
            }
        }
    }

    for (std::int64_t K = 1; K < m; ++K)
        if (open[static_cast<std::size_t>(K)]) result.unresolved.push_back(K);
    return result;
}

nlohmann::ordered_json to_json(const ExclusionRecord& r) {
    nlohmann::ordered_json j;
    j["k_range"] = {r.k_lo, r.k_hi};
    j["method"] = std::string(to_string(r.method));
    if (r.witness_prime) j["prime"] = *r.witness_prime;
    j["degrees"] = r.degrees;
    j["evidence"] = r.evidence;
    return j;
}

}  // namespace ghl
