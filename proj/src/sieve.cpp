#include "ghl/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "ghl/error.hpp"
#include "ghl/primes.hpp"
#include "ghl/valuation.hpp"

namespace ghl {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::uint64_t isqrt(std::uint64_t m) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
    while (r * r > m) --r;
    while ((r + 1) * (r + 1) <= m) ++r;
    return r;
}

}  // namespace

SpfTable::SpfTable(std::uint64_t limit, unsigned threads, std::uint64_t segment) : limit_(limit) {
    if (limit < 2) fail(Errc::invalid_params, "sieve limit must be at least 2");
    if (limit >= (std::uint64_t{1} << 32)) fail(Errc::invalid_params, "sieve limit must stay below 2^32");
    if (segment == 0) fail(Errc::invalid_params, "segment size must be positive");
    spf_.assign(limit + 1, 0);
    const auto base = primes_up_to(isqrt(limit));
    const std::uint64_t segments = (limit + 1 + segment - 1) / segment;
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t s = next++; s < segments; s = next++) {
            const std::uint64_t lo = s * segment;
            const std::uint64_t hi = std::min(limit + 1, lo + segment);
            for (const auto p : base) {
                std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
                for (std::uint64_t m = start; m < hi; m += p)
                    if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(p);
            }
            for (std::uint64_t m = std::max<std::uint64_t>(lo, 2); m < hi; ++m)
                if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(m);
        }
    };
    const unsigned n = std::min<std::uint64_t>(resolve_threads(threads), segments);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

std::uint64_t SpfTable::spf(std::uint64_t m) const {
    if (m < 2 || m > limit_) fail(Errc::table_too_small, "spf query outside 2.." + std::to_string(limit_));
    return spf_[m];
}

std::uint64_t SpfTable::gpf(std::uint64_t m) const {
    if (m == 0) fail(Errc::invalid_params, "P(0) is undefined");
    if (m > limit_) return gpf_trial(m);
    std::uint64_t best = 1;
    while (m > 1) {
        const std::uint64_t p = spf_[m];
        best = p;
        do m /= p;
        while (m % p == 0);
    }
    return best;
}

nlohmann::ordered_json SieveReport::to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["query"] = query;
    j["params"] = params;
    j["exceptions"] = exceptions;
    j["extremal"] = extremal;
    if (with_timing) j["elapsed_ms"] = elapsed_ms;
    return j;
}

std::uint64_t gpf(std::int64_t m) {
    if (m == 0) fail(Errc::invalid_params, "P(0) is undefined");
    return gpf_trial(m < 0 ? 0 - static_cast<std::uint64_t>(m) : static_cast<std::uint64_t>(m));
}

std::uint64_t gpf_ap_product(const SpfTable& table, std::uint64_t n, std::uint64_t d, std::uint64_t k) {
    if (n == 0) fail(Errc::invalid_params, "terms must be positive");
    std::uint64_t best = 1;
    for (std::uint64_t i = 0; i < k; ++i) best = std::max(best, table.gpf(n + d * i));
    return best;
}

std::uint64_t gpf_ap_product(std::uint64_t n, std::uint64_t d, std::uint64_t k) {
    if (n == 0) fail(Errc::invalid_params, "terms must be positive");
    std::uint64_t best = 1;
    for (std::uint64_t i = 0; i < k; ++i) best = std::max(best, gpf_trial(n + d * i));
    return best;
}

SieveReport verify_gpf_bound(const SpfTable& table, std::uint64_t d, std::uint64_t k, std::uint64_t bound,
                             std::uint64_t n_limit, const GpfFilter& filter) {
    const auto start = Clock::now();
    if (k == 0) fail(Errc::invalid_params, "k must be positive");
    if (n_limit + d * (k - 1) > table.limit()) fail(Errc::table_too_small, "sieve table too small for the range");
    SieveReport report;
    report.query = "gpf-ap";
    report.params = {{"d", d}, {"k", k}, {"bound", bound}, {"n_limit", n_limit},
                     {"min_exclusive", filter.min_exclusive}, {"coprime_to", filter.coprime_to}};
    std::uint64_t checked = 0;
    for (std::uint64_t n = std::max<std::uint64_t>(1, filter.min_exclusive + 1); n <= n_limit; ++n) {
        if (filter.coprime_to > 1 && std::gcd(n, filter.coprime_to) != 1) continue;
        ++checked;
        bool small = true;
        for (std::uint64_t i = 0; i < k && small; ++i) small = table.gpf(n + d * i) <= bound;
        if (small) report.exceptions.push_back(n);
    }
    report.extremal = {{"checked", checked}, {"count", report.exceptions.size()}};
    report.elapsed_ms = ms_since(start);
    return report;
}

std::vector<std::uint64_t> smooth_pairs(const SpfTable& table, std::uint64_t M, std::uint64_t gap,
                                        std::uint64_t limit) {
    if (limit + gap > table.limit()) fail(Errc::table_too_small, "sieve table too small for the range");
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= limit; ++m)
        if (table.gpf(m) <= M && table.gpf(m + gap) <= M) out.push_back(m);
    return out;
}

std::vector<std::pair<int, std::uint64_t>> solve_upto7(const SpfTable& table, std::uint64_t limit) {
    if (limit + 21 > table.limit()) fail(Errc::table_too_small, "sieve table too small for the range");
    std::vector<std::pair<int, std::uint64_t>> out;
    for (int i = 1; i <= 7; ++i) {
        for (std::uint64_t x = 81; x <= limit; ++x) {
            if (x % 3 == 0) continue;
            const std::uint64_t y = x + 3 * static_cast<std::uint64_t>(i);
            if ((x * y) % 2 != 0) continue;
            const std::uint64_t gx = table.gpf(x);
            if (gx > 5) continue;
            const std::uint64_t gy = table.gpf(y);
            if (gy <= 5 && std::max(gx, gy) == 5) out.emplace_back(i, x);
        }
    }
    return out;
}

SieveReport ap_prime_gaps(std::uint64_t modulus, const std::vector<std::int64_t>& residues, std::uint64_t limit,
                          std::uint64_t gap_bound, unsigned threads) {
    const auto start = Clock::now();
    if (modulus < 2) fail(Errc::invalid_params, "modulus must be at least 2");
    if (residues.empty()) fail(Errc::invalid_params, "no residues given");
    std::vector<std::uint64_t> classes;
    for (const auto r : residues) {
        const auto m = static_cast<std::int64_t>(modulus);
        const auto c = static_cast<std::uint64_t>(((r % m) + m) % m);
        if (std::gcd(c, modulus) != 1) fail(Errc::invalid_params, "residue not coprime to the modulus");
        classes.push_back(c);
    }

    // Extend past the limit until every class has its next prime.
    std::uint64_t margin = 4096;
    for (;;) {
        SpfTable table(limit + margin, threads);
        std::vector<std::uint64_t> last(classes.size(), 0);
        std::vector<std::uint64_t> max_gap(classes.size(), 0);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> widest(classes.size());
        std::vector<bool> closed(classes.size(), false);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> exceptions;
        for (std::uint64_t m = 2; m <= table.limit(); ++m) {
            if (!table.is_prime(m)) continue;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                if (closed[c] || m % modulus != classes[c]) continue;
                if (last[c] != 0) {
                    const std::uint64_t gap = m - last[c];
                    if (gap > max_gap[c]) {
                        max_gap[c] = gap;
                        widest[c] = {last[c], m};
                    }
                    if (gap > gap_bound) exceptions.emplace_back(last[c], m);
                }
                if (m > limit) closed[c] = true;
                last[c] = m;
            }
            if (m > limit && std::all_of(closed.begin(), closed.end(), [](bool b) { return b; })) break;
        }
        if (!std::all_of(closed.begin(), closed.end(), [](bool b) { return b; })) {
            margin *= 4;
            continue;
        }
        std::sort(exceptions.begin(), exceptions.end());
        SieveReport report;
        report.query = "gaps";
        report.params = {{"modulus", modulus}, {"residues", residues}, {"limit", limit}, {"gap_bound", gap_bound}};
        for (const auto& [a, b] : exceptions) report.exceptions.push_back({a, b});
        std::uint64_t overall = 0;
        auto per = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < classes.size(); ++c) {
            overall = std::max(overall, max_gap[c]);
            per.push_back({{"residue", classes[c]}, {"max_gap", max_gap[c]}, {"pair", {widest[c].first, widest[c].second}}});
        }
        report.extremal = {{"max_gap", overall}, {"per_residue", per}};
        report.elapsed_ms = ms_since(start);
        return report;
    }
}

std::uint64_t residue_prime_count(double x, std::uint64_t modulus, std::int64_t l) {
    if (modulus == 0) fail(Errc::invalid_params, "modulus must be positive");
    if (!(x >= 2.0)) return 0;
    const auto m = static_cast<std::int64_t>(modulus);
    const auto c = static_cast<std::uint64_t>(((l % m) + m) % m);
    std::uint64_t count = 0;
    for (const auto p : primes_up_to(static_cast<std::uint64_t>(std::floor(x))))
        if (p % modulus == c) ++count;
    return count;
}

RSet r_set(std::int64_t k) {
    if (k < 2) fail(Errc::invalid_params, "R(k) needs k >= 2");
    RSet out;
    out.k = k;
    out.alpha = k % 2 == 0 ? 1 : 2;
    std::vector<std::uint64_t> ps;
    for (std::int64_t i = 1; i <= k; ++i)
        for (const auto& [p, e] : factor_trial(static_cast<std::uint64_t>(out.alpha + 3 * i))) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    out.primes = std::move(ps);
    const double top = static_cast<double>(3 * k + out.alpha);
    const std::int64_t cls = out.alpha;  // 1 for even k, 2 for odd k
    out.printed_formula = static_cast<std::int64_t>(residue_prime_count(top, 3, cls)) +
                          static_cast<std::int64_t>(residue_prime_count(top / 2.0, 3, cls)) - 1;
    return out;
}

namespace {

std::vector<std::uint64_t> first_primes(std::int64_t l) {
    std::uint64_t bound = 32;
    for (;;) {
        auto ps = primes_up_to(bound);
        if (static_cast<std::int64_t>(ps.size()) >= l) {
            ps.resize(static_cast<std::size_t>(l));
            return ps;
        }
        bound *= 2;
    }
}

double log_mpz(const mpz_class& m) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

SmoothnessBound smoothness_bound(std::int64_t k, std::int64_t l, bool printed_variant, std::int64_t d) {
    if (k < 2) fail(Errc::invalid_params, "k must be at least 2");
    if (l < 1) fail(Errc::invalid_params, "l must be at least 1");
    const auto pi = [](std::int64_t x) { return static_cast<std::int64_t>(primes_up_to(static_cast<std::uint64_t>(x)).size()); };
    const std::int64_t t = k + 1 - pi(4 * k + 3);
    if (t <= 0) fail(Errc::precondition, "exponent k + 1 - pi(4k+3) is not positive");
    const std::int64_t t_inner = printed_variant ? k + 1 - pi(4 * k) : t;

    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k - 1));
    mpz_class divisor = 1;
    for (const auto p : first_primes(l)) {
        std::int64_t l0 = 0;
        if (d % static_cast<std::int64_t>(p) == 0) {
            l0 = -ord_factorial(p, k - 1);
        } else {
            std::int64_t h = 0;
            auto pw = static_cast<std::int64_t>(p);  // p^(h+1)
            while ((k - 1) / pw > t) {
                ++h;
                pw *= static_cast<std::int64_t>(p);
            }
            std::int64_t sum = 0;
            std::int64_t q = static_cast<std::int64_t>(p);
            for (std::int64_t u = 1; u <= h; ++u, q *= static_cast<std::int64_t>(p)) sum += (k - 1) / q;
            l0 = std::min<std::int64_t>(0, h * t_inner - sum);
        }
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(-l0));
        divisor *= pw;
    }
    SmoothnessBound out;
    out.k = k;
    out.l = l;
    out.exponent = t;
    if (mpz_divisible_p(fact.get_mpz_t(), divisor.get_mpz_t()) == 0)
        fail(Errc::consistency, "prime-power divisor does not divide (k-1)!");
    out.radicand = fact / divisor;
    mpz_root(out.floor_root.get_mpz_t(), out.radicand.get_mpz_t(), static_cast<unsigned long>(t));
    out.value = std::exp(log_mpz(out.radicand) / static_cast<double>(t));
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(ord_factorial(2, k - 1)));
    out.variant_value = std::exp(log_mpz(fact / two_pow) / static_cast<double>(t));
    return out;
}

double growth_lhs(std::int64_t v0) { return std::log(static_cast<double>(v0) * 8.0 * std::exp(1.0)); }

double growth_rhs(std::int64_t k, std::int64_t v0) {
    const double L = std::log(4.0 * static_cast<double>(k) + 3.0);
    return 4.0 * std::log(static_cast<double>(v0) * 4.0 * static_cast<double>(k)) / L * (1.0 + 1.2762 / L);
}

bool growth_inequality(std::int64_t k, std::int64_t v0) {
    if (k < 1 || v0 < 1) fail(Errc::invalid_params, "k and v0 must be positive");
    return growth_lhs(v0) < growth_rhs(k, v0);
}

bool lemma43_predicate(std::uint64_t n, std::uint64_t d, std::uint64_t k) {
    const bool in_range = (d == 3 && n > 6450 && 10 * n <= 318 * k) || (d == 4 && n > 1000000 && n <= 552 * k);
    if (!in_range) fail(Errc::out_of_range, "instance outside the ranges where the predicate is claimed");
    if (std::gcd(n, d) != 1) fail(Errc::hypothesis, "the progression needs gcd(n, d) = 1");
    for (std::uint64_t i = 0; i < k; ++i)
        if (gpf_trial(n + d * i) >= n) return true;
    return false;
}

}  // namespace ghl
