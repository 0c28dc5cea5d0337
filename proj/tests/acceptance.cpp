// Acceptance run: one PASS/FAIL line per criterion. The exit status is 0 when
// the failing set is exactly the documented one: criterion 9 (a closed form
// that is off by one in one family) and criterion 11 (q = 1/4, n = 2 is a
// genuine factorization). Any other failure, or a different failure shape,
// exits 1.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghl/certify.hpp"
#include "ghl/newton.hpp"
#include "ghl/primes.hpp"
#include "ghl/sieve.hpp"
#include "ghl/valuation.hpp"
#include "oracle.hpp"

using namespace ghl;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

std::vector<std::uint64_t> as_list(const SieveReport& r) { return r.exceptions.get<std::vector<std::uint64_t>>(); }

std::vector<Certificate> g_certificates;

Outcome gpf_case(const SpfTable& t, std::uint64_t k, std::uint64_t bound, std::uint64_t min_excl,
                 std::uint64_t coprime, std::uint64_t d, std::vector<std::uint64_t> want) {
    const auto got = as_list(verify_gpf_bound(t, d, k, bound, 1000000, GpfFilter{min_excl, coprime}));
    return {got == want, "{" + join(got) + "}"};
}

Outcome criterion6() {
    auto a = ap_prime_gaps(3, {1, 2}, 6450, 60, 1);
    const auto max3 = a.extremal.at("max_gap").get<std::uint64_t>();
    const bool ok1 = a.exceptions.empty() && max3 <= 60;
    auto b = ap_prime_gaps(4, {1, 3}, 11000000, 270, 0);
    auto pairs = b.exceptions.get<std::vector<std::vector<std::uint64_t>>>();
    std::sort(pairs.begin(), pairs.end());
    const std::vector<std::vector<std::uint64_t>> want{{3358151, 3358423}, {5927759, 5928031}, {7856441, 7856713},
                                                       {9287659, 9287939}, {10087201, 10087481}};
    std::ostringstream d;
    d << "mod3 max gap " << max3 << ", " << a.exceptions.size() << " exceptions; mod4 " << pairs.size() << " pairs";
    return {ok1 && pairs == want, d.str()};
}

Outcome criterion7() {
    bool ok = true;
    std::ostringstream d;
    struct Case {
        std::int64_t u, n;
        std::vector<std::int64_t> xs;
        Rational max_slope;
    };
    for (const Case& c : {Case{-1, 43, {0, 32, 40, 43}, Rational(4, 3)}, Case{0, 42, {0, 32, 40, 42}, Rational(3, 2)}})
        for (std::int64_t delta : {1, 3}) {
            const GhlParams prm{3, c.u, 2, c.n, delta};
            const auto np = build_polygon(build_ghl_power(prm, ones_seed(c.n)), 2);
            std::vector<std::int64_t> want;
            for (auto x : c.xs) want.push_back(x * delta);
            const bool here = np.vertex_xs() == want && np.max_slope() == c.max_slope / Rational(delta) &&
                              (c.u != -1 || np.min_slope() == Rational(33, 32) / Rational(delta));
            ok = ok && here;
            d << "(u=" << c.u << ",delta=" << delta << "):" << join(np.vertex_xs()) << " " << np.min_slope() << ".."
              << np.max_slope() << (here ? "" : " MISMATCH") << "; ";
            g_certificates.push_back(full_certify(prm, ones_seed(c.n)));
        }
    return {ok, d.str()};
}

Outcome criterion8() {
    std::int64_t bad = 0;
    for (auto p : primes_up_to(50)) {
        std::int64_t direct = 0;
        for (std::int64_t m = 0; m <= 10000; ++m) {
            if (m > 0) {
                std::int64_t x = m;
                while (x % static_cast<std::int64_t>(p) == 0) {
                    x /= static_cast<std::int64_t>(p);
                    ++direct;
                }
            }
            bad += ord_factorial(p, m) != direct;
        }
    }
    return {bad == 0, std::to_string(bad) + " mismatches"};
}

// Sequences whose endpoint closed form disagrees with Legendre, as
// "eta u s legendre-closed"; the documented pattern is eta = 1, u = -1, every s,
// off by exactly one.
bool g_break_pattern_ok = false;

Outcome criterion9() {
    int total = 0, breaks_bad = 0, bound_bad = 0;
    std::vector<std::string> endpoint_bad;
    bool pattern = true;
    for (int eta : {0, 1})
        for (std::int64_t u : {-1, 0})
            for (std::int64_t s = 2; s <= 16; ++s) {
                ++total;
                const auto c = check_break_valuations(make_break_sequence(eta, s, u), u);
                breaks_bad += c.breaks_ok ? 0 : 1;
                bound_bad += c.lower_bound_ok ? 0 : 1;
                const bool documented = eta == 1 && u == -1;
                if (!c.endpoint_ok) endpoint_bad.push_back(std::to_string(s));
                pattern = pattern && (documented ? c.endpoint_legendre == c.endpoint_closed + 1 : c.endpoint_ok);
            }
    g_break_pattern_ok = pattern && breaks_bad == 0 && bound_bad == 0;
    std::ostringstream d;
    d << total << " sequences; n_i identity failures " << breaks_bad << "; n-1 identity failures "
      << endpoint_bad.size();
    if (!endpoint_bad.empty())
        d << " (eta=1,u=-1, s=" << endpoint_bad.front() << ".." << endpoint_bad.back()
          << ": Legendre exceeds the closed form by 1)";
    return {breaks_bad == 0 && bound_bad == 0 && endpoint_bad.empty(), d.str()};
}

IntegerPolynomial random_factor(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(1, 4), coef(-9, 9), which(0, 3), ex(0, 3);
    const int m = deg(rng);
    const unsigned long base[] = {1, 2, 3, 5};
    const unsigned long sp = base[which(rng)];
    std::vector<mpz_class> c(m + 1);
    for (int i = 0; i <= m; ++i) {
        long v = coef(rng);
        if ((i == 0 || i == m) && v == 0) v = 1;
        c[i] = v;
        if (i < m && sp > 1) {
            mpz_class s;
            mpz_ui_pow_ui(s.get_mpz_t(), sp, ex(rng) + (i == 0 ? 1 : 0));
            c[i] *= s;
        }
    }
    return IntegerPolynomial(c);
}

Outcome criterion10() {
    std::mt19937_64 rng(0xD0A5);
    long checks = 0, bad = 0;
    for (int t = 0; t < 200; ++t) {
        const int parts = 2 + t % 2;
        std::vector<IntegerPolynomial> fs;
        IntegerPolynomial prod(std::vector<mpz_class>{1});
        for (int i = 0; i < parts; ++i) {
            fs.push_back(random_factor(rng));
            prod = prod * fs.back();
        }
        for (auto p : primes_up_to(50)) {
            const auto adm = admissible_degrees(build_polygon(prod, p));
            for (const auto& f : fs) {
                ++checks;
                bad += adm.contains(f.degree()) ? 0 : 1;
            }
        }
    }
    return {bad == 0, std::to_string(checks) + " checks, " + std::to_string(bad) + " violations"};
}

struct QSpec {
    const char* name;
    std::int64_t d, u, alpha;
};

// Residual sets of the batch that are not IRREDUCIBLE_CERTIFIED, keyed by
// "q n delta". Filled by criterion 11, checked against the documented set.
std::map<std::string, std::vector<std::int64_t>> g_open;
bool g_oracle_ok = true;

Outcome criterion11() {
    const QSpec qs[] = {{"1/3", 3, 0, 1},  {"-1/3", 3, -1, 2}, {"2/3", 3, 0, 2},  {"-2/3", 3, -1, 1},
                        {"1/4", 4, 0, 1},  {"-1/4", 4, -1, 3}, {"3/4", 4, 0, 3},  {"-3/4", 4, -1, 1}};
    int total = 0, certified = 0, oracle_runs = 0;
    std::ostringstream d;
    for (const auto& q : qs)
        for (std::int64_t n = 2; n <= 100; ++n)
            for (std::int64_t delta : {std::int64_t{1}, q.d}) {
                const GhlParams prm{q.d, q.u, q.alpha, n, delta};
                const auto seed = laguerre_seed(n);
                auto cert = full_certify(prm, seed);
                ++total;
                const bool irr = cert.verdict == Verdict::IRREDUCIBLE_CERTIFIED;
                certified += irr ? 1 : 0;
                if (!irr) g_open[std::string(q.name) + " " + std::to_string(n) + " " + std::to_string(delta)] = cert.residual;
                if (delta * n <= 12) {
                    ++oracle_runs;
                    const auto o = oracle::find_factor(build_ghl_power(prm, seed));
                    // The oracle must agree with the verdict in both directions.
                    if (!o.converged || o.factor.has_value() == irr) {
                        g_oracle_ok = false;
                        d << "oracle disagrees at q=" << q.name << " n=" << n << " delta=" << delta << "; ";
                    }
                    if (o.factor) d << "factor found at q=" << q.name << " n=" << n << " delta=" << delta << ": "
                                    << o.factor->str() << "; ";
                }
                g_certificates.push_back(std::move(cert));
            }
    d << certified << "/" << total << " certified, oracle on " << oracle_runs << " small cases";
    for (const auto& [key, res] : g_open) d << "; open " << key << " residual {" << join(res) << "}";
    return {certified == total && g_oracle_ok, d.str()};
}

Outcome criterion12() {
    std::size_t bad = 0;
    for (const auto& c : g_certificates) bad += certificate_partition_ok(c) ? 0 : 1;
    return {bad == 0 && !g_certificates.empty(),
            std::to_string(g_certificates.size()) + " certificates, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
    std::set<int> failed;
    auto report = [&](int id, const char* title, Outcome o, double ms, double budget_ms) {
        const bool in_time = budget_ms <= 0 || ms <= budget_ms;
        const bool pass = o.pass && in_time;
        if (!pass) failed.insert(id);
        std::printf("%s %2d %-28s %9.1f ms  %s%s\n", pass ? "PASS" : "FAIL", id, title, ms, o.detail.c_str(),
                    in_time ? "" : " (over time budget)");
        std::fflush(stdout);
    };
    auto run = [&](int id, const char* title, const std::function<Outcome()>& fn, double budget_ms) {
        const auto start = Clock::now();
        Outcome o = fn();
        report(id, title, std::move(o), ms_since(start), budget_ms);
    };

    auto t0 = Clock::now();
    const SpfTable table(1000000 + 64, 1);
    const double table_ms = ms_since(t0);
    std::printf("info    spf table to 1e6 built single-threaded in %.1f ms\n", table_ms);

    t0 = Clock::now();
    auto o = gpf_case(table, 2, 12, 8, 2, 4, {11, 21, 45, 77, 121});
    report(1, "P(n(n+4)) <= 12, odd n > 8", o, ms_since(t0) + table_ms, 10000);
    t0 = Clock::now();
    o = gpf_case(table, 3, 16, 12, 2, 4, {117});
    report(2, "P(n(n+4)(n+8)) <= 16", o, ms_since(t0) + table_ms, 15000);
    t0 = Clock::now();
    o = gpf_case(table, 2, 8, 8, 2, 4, {21, 45});
    report(3, "P(n(n+4)) <= 8", o, ms_since(t0), 0);
    t0 = Clock::now();
    o = gpf_case(table, 2, 6, 6, 3, 3, {125});
    report(4, "P(m(m+3)) <= 6, 3 !| m", o, ms_since(t0), 0);
    t0 = Clock::now();
    {
        const auto sol = solve_upto7(table, 1000000);
        const std::vector<std::pair<int, std::uint64_t>> want{{1, 125}, {2, 250}, {4, 500}, {5, 625}};
        std::ostringstream d;
        for (const auto& [i, x] : sol) d << "(" << i << "," << x << ")";
        report(5, "X(X+3i) 5-smooth, i <= 7", {sol == want, d.str()}, ms_since(t0), 0);
    }
    run(6, "prime gaps mod 3 and mod 4", criterion6, 30000);
    run(7, "2-adic polygon golden", criterion7, 0);
    run(8, "Legendre vs direct count", criterion8, 5000);
    run(9, "break valuation identities", criterion9, 0);
    run(10, "Dumas soundness", criterion10, 0);
    run(11, "Laguerre batch n <= 100", criterion11, 300000);
    run(12, "certificate partition", criterion12, 0);

    // 11: q = 1/4, n = 2 gives G = x^2 - 18x + 45 = (x - 3)(x - 15), so G(x^4)
    // splits as (x^4 - 3)(x^4 - 15). Nothing else may stay open.
    // 9: the n - 1 closed form is off by one for eta = 1, u = -1 only.
    const std::map<std::string, std::vector<std::int64_t>> documented{{"1/4 2 1", {1}}, {"1/4 2 4", {4}}};
    const bool expected =
        failed == std::set<int>{9, 11} && g_open == documented && g_oracle_ok && g_break_pattern_ok;
    std::printf("summary %zu/12 pass; failures match the documented findings (9, 11): %s\n", 12 - failed.size(),
                expected ? "yes" : "no");
    return failed.empty() || expected ? 0 : 1;
}
