#include "ghl/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "ghl/error.hpp"
#include "ghl/newton.hpp"
#include "ghl/primes.hpp"
#include "ghl/valuation.hpp"

namespace ghl {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::IRREDUCIBLE_CERTIFIED: return "IRREDUCIBLE_CERTIFIED";
        case Verdict::EXCLUSIONS_ONLY: return "EXCLUSIONS_ONLY";
        case Verdict::EXCEPTIONAL_FAMILY: return "EXCEPTIONAL_FAMILY";
    }
    return "UNKNOWN";
}

nlohmann::ordered_json Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kCertificateSchemaVersion;
    j["params"] = {{"d", params.d}, {"u", params.u}, {"alpha", params.alpha}, {"n", params.n}, {"delta", params.delta}};
    j["seed"] = seed;
    auto recs = nlohmann::ordered_json::array();
    for (const auto& r : records) recs.push_back(ghl::to_json(r));
    j["records"] = recs;
    j["residual"] = residual;
    j["verdict"] = std::string(to_string(verdict));
    j["notes"] = notes;
    return j;
}

bool certificate_partition_ok(const Certificate& cert) {
    const std::int64_t m = cert.params.delta * cert.params.n;
    std::vector<int> hits(static_cast<std::size_t>(std::max<std::int64_t>(m, 1)), 0);
    auto mark = [&](std::int64_t K) {
        if (K < 1 || K >= m) return false;
        ++hits[static_cast<std::size_t>(K)];
        return true;
    };
    for (const auto& r : cert.records)
        for (auto K : r.degrees)
            if (!mark(K)) return false;
    for (auto K : cert.residual)
        if (!mark(K)) return false;
    for (std::int64_t K = 1; K < m; ++K)
        if (hits[static_cast<std::size_t>(K)] != 1) return false;
    return true;
}

namespace {

std::uint64_t abs_u64(std::int64_t v) { return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

std::optional<int> exact_log(std::uint64_t m, std::uint64_t base) {
    if (m == 0) return std::nullopt;
    int e = 0;
    while (m % base == 0) {
        m /= base;
        ++e;
    }
    if (m != 1) return std::nullopt;
    return e;
}

bool seed_coprime(const SeedCoefficients& seed, std::uint64_t p) {
    const auto pl = static_cast<unsigned long>(p);
    return mpz_divisible_ui_p(seed.values.front().get_mpz_t(), pl) == 0 &&
           mpz_divisible_ui_p(seed.values.back().get_mpz_t(), pl) == 0;
}

nlohmann::ordered_json vertex_json(const NewtonPolygon& np) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& v : np.vertices()) out.push_back({v.x, v.y});
    return out;
}

NewtonPolygon skeleton_polygon(const GhlParams& params, std::uint64_t p) {
    const auto vals = ghl_coefficient_valuations(p, params, ones_seed(params.n));
    return polygon_from_valuations(p, vals);
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

BreakSequence make_break_sequence(int eta, std::int64_t s, std::int64_t u) {
    if (eta != 0 && eta != 1) fail(Errc::invalid_params, "eta must be 0 or 1");
    if (s < 1 || s > 30) fail(Errc::invalid_params, "s must lie in 1..30");
    BreakSequence bs;
    bs.eta = eta;
    bs.s = s;
    bs.a = 2 * s + eta;
    bs.u = u;
    const std::int64_t scale = std::int64_t{1} << eta;
    bs.breaks.push_back(0);
    std::int64_t acc = 0;
    for (std::int64_t i = 1; i <= s - 1; ++i) {
        acc += std::int64_t{1} << (2 * (s - i));
        bs.breaks.push_back(scale * acc);
    }
    acc += 1;
    bs.breaks.push_back(-u + scale * acc);
    return bs;
}

BreakSequence expected_breaks(const GhlParams& params) {
    params.validate();
    if (params.d != 3) fail(Errc::family_mismatch, "break sequence needs d = 3");
    const std::int64_t top = params.term(params.n);
    const auto a = top > 1 ? exact_log(static_cast<std::uint64_t>(top), 2) : std::nullopt;
    if (!a) fail(Errc::family_mismatch, "alpha + 3(u+n) = " + std::to_string(top) + " is not a power of 2 above 1");
    const int eta = params.alpha == 1 ? 0 : 1;
    if ((*a - eta) % 2 != 0 || (*a - eta) / 2 < 1) fail(Errc::family_mismatch, "exponent does not split as 2s + eta");
    BreakSequence bs = make_break_sequence(eta, (*a - eta) / 2, params.u);
    if (bs.n() != params.n) fail(Errc::consistency, "break sequence endpoint differs from n");
    return bs;
}

BreakCheck check_break_valuations(const BreakSequence& bs, std::int64_t u) {
    BreakCheck out;
    const std::int64_t n = bs.n();
    for (std::int64_t i = 1; i <= bs.s - 1; ++i) {
        const std::int64_t ni = bs.breaks[static_cast<std::size_t>(i)];
        if (ord_factorial(2, ni - 1) != ni - bs.a + i) out.breaks_ok = false;
    }
    out.endpoint_legendre = ord_factorial(2, n - 1);
    out.endpoint_closed = n - bs.s + u + 1 - (std::int64_t{1} << bs.eta);
    out.endpoint_ok = out.endpoint_legendre == out.endpoint_closed;
    // nu((j-1)!) >= j - h whenever j < 2^h; the tightest h is the bit length of j.
    const std::int64_t j_max = std::min<std::int64_t>(n, 1 << 16);
    for (std::int64_t j = 1; j <= j_max; ++j) {
        std::int64_t h = 0;
        while ((std::int64_t{1} << h) <= j) ++h;
        if (ord_factorial(2, j - 1) < j - h) out.lower_bound_ok = false;
    }
    return out;
}

bool verify_break_valuations(const BreakSequence& bs, std::int64_t u) { return check_break_valuations(bs, u).ok(); }

ExclusionRecord special_2adic_certify(const GhlParams& params, const SeedCoefficients& seed) {
    const BreakSequence bs = expected_breaks(params);
    seed.validate(params.n);
    if (!seed_coprime(seed, 2)) fail(Errc::seed_violation, "2 divides a_0 a_n");
    const std::int64_t delta = params.delta;
    const std::int64_t m = delta * params.n;
    if (params.n < 2) fail(Errc::degree_too_small, "special 2-adic step needs n >= 2");
    const NewtonPolygon np = skeleton_polygon(params, 2);

    std::vector<std::int64_t> realized;
    for (auto x : np.vertex_xs()) {
        if (x % delta != 0) fail(Errc::polygon_mismatch, "vertex off the delta lattice");
        realized.push_back(x / delta);
    }
    // Accepted shapes: the breaks n_0..n_l followed directly by n.
    std::string shape;
    const auto& br = bs.breaks;
    if (realized == br) {
        shape = "full";
    } else if (realized.size() >= 2 && realized.back() == params.n && realized.size() - 1 < br.size() &&
               std::equal(realized.begin(), realized.end() - 1, br.begin())) {
        shape = realized.size() == br.size() - 1 ? "tail_variant" : "truncated";
    } else {
        auto fmt = [](const std::vector<std::int64_t>& v) {
            std::string s;
            for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
            return s;
        };
        fail(Errc::polygon_mismatch, "expected breaks {" + fmt(br) + "} but polygon has {" + fmt(realized) + "}");
    }

    const Rational lo = np.min_slope();
    const Rational hi = np.max_slope();
    if (!(lo > Rational(1, delta)) || !(hi < Rational(2, delta)))
        fail(Errc::claim_violation, "slopes " + lo.str() + ".." + hi.str() + " outside (1/delta, 2/delta)");
    const auto r = lemma_r_witness(np, delta);
    if (!r) fail(Errc::claim_violation, "Lemma <r fails at k = delta");

    ExclusionRecord rec;
    rec.k_lo = rec.k_hi = delta;
    rec.method = Method::SPECIAL_2ADIC;
    rec.degrees = sorted_unique({delta, m - delta});
    rec.evidence["prime"] = 2;
    rec.evidence["a"] = bs.a;
    rec.evidence["eta"] = bs.eta;
    rec.evidence["s"] = bs.s;
    rec.evidence["expected_breaks"] = bs.breaks;
    rec.evidence["realized_breaks"] = realized;
    rec.evidence["shape"] = shape;
    rec.evidence["min_slope"] = lo.str();
    rec.evidence["max_slope"] = hi.str();
    rec.evidence["r"] = *r;
    return rec;
}

std::optional<ExclusionRecord> special_2adic_k2_certify(const GhlParams& params, const SeedCoefficients& seed) {
    params.validate();
    if (params.d != 3 || params.term(params.n - 1) != 125 || params.n < 4) return std::nullopt;
    seed.validate(params.n);
    if (!seed_coprime(seed, 2)) fail(Errc::seed_violation, "2 divides a_0 a_n");
    const std::int64_t delta = params.delta;
    const std::int64_t m = delta * params.n;
    const NewtonPolygon np = skeleton_polygon(params, 2);
    ExclusionRecord rec;
    rec.k_lo = delta + 1;
    rec.k_hi = 2 * delta;
    rec.method = Method::SPECIAL_2ADIC;
    std::vector<std::int64_t> degrees;
    auto per_k = nlohmann::ordered_json::array();
    for (std::int64_t K = delta + 1; K <= 2 * delta; ++K) {
        const auto r = lemma_r_witness(np, K);
        per_k.push_back({{"k", K}, {"r", r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr)}});
        if (r) {
            degrees.push_back(K);
            degrees.push_back(m - K);
        }
    }
    rec.degrees = sorted_unique(degrees);
    rec.evidence["prime"] = 2;
    rec.evidence["case"] = "k2";
    rec.evidence["vertices"] = vertex_json(np);
    rec.evidence["min_slope"] = np.min_slope().str();
    rec.evidence["max_slope"] = np.max_slope().str();
    rec.evidence["per_k"] = per_k;
    return rec;
}

std::pair<std::int64_t, std::int64_t> special_3adic_j0_l0(const GhlParams& params) {
    if (params.d == 4 && params.u == -1 && params.alpha == 1) return {3, 3};
    if (params.d == 4 && params.u == 0 && params.alpha == 3) return {3, 5};
    fail(Errc::family_mismatch, "3-adic step needs d = 4 and (u, alpha) in {(-1,1), (0,3)}");
}

bool special_3adic_check(const GhlParams& params, std::int64_t s_max) {
    params.validate();
    const auto [j0, l0] = special_3adic_j0_l0(params);
    if (params.term(params.n) % 3 != 0) fail(Errc::family_mismatch, "3 does not divide alpha + 4(u+n)");
    bool ok = true;
    for (std::int64_t s = 0; s <= 3; ++s) {
        const std::int64_t j = j0 + 3 * s;
        std::int64_t ord = 0;
        for (std::int64_t i = 1; i <= j; ++i) ord += nu(3, params.term(i)).value();
        ok = ok && ord < 3 * (s + 1);
    }
    const double log3 = std::log(3.0);
    for (std::int64_t s = 4; s <= s_max; ++s)
        ok = ok && std::log(static_cast<double>(l0 + 4 * s)) < 1.5 * static_cast<double>(s + 1) * log3;
    return ok;
}

std::optional<std::string> laguerre_family(const GhlParams& params) {
    const std::int64_t top = params.term(params.n);
    if (top <= 0) return std::nullopt;
    const auto t = static_cast<std::uint64_t>(top);
    auto split = [](std::uint64_t m, std::uint64_t p1, std::uint64_t p2, int& e1, int& e2) {
        e1 = e2 = 0;
        while (m % p1 == 0) { m /= p1; ++e1; }
        while (m % p2 == 0) { m /= p2; ++e2; }
        return m == 1;
    };
    int e1 = 0, e2 = 0;
    if (params.d == 3 && params.u == 0 && params.alpha == 1) {
        if (auto a = exact_log(t, 2); a && *a > 0) return "q=1/3: 1+3n=2^a";
    } else if (params.d == 3 && params.u == 0 && params.alpha == 2) {
        if (split(t, 2, 5, e1, e2) && e2 > 0) return "q=2/3: 2+3n=2^a5^b";
    } else if (params.d == 4 && params.u == -1 && params.alpha == 3) {
        if (auto a = exact_log(t, 3); a && *a > 0) return "q=-1/4: 3+4(n-1)=3^a";
    } else if (params.d == 4 && params.u == 0 && params.alpha == 1) {
        if (split(t, 3, 5, e1, e2) && e2 > 0) return "q=1/4: 1+4n=3^a5^b";
    } else if (params.d == 4 && params.u == 0 && params.alpha == 3) {
        if (auto a = exact_log(t, 7); a && *a > 0) return "q=3/4: 3+4n=7^a";
    }
    return std::nullopt;
}

std::optional<std::uint64_t> laguerre_prime(const GhlParams& params) {
    const std::int64_t avoid[] = {params.term(-1), params.term(0), params.term(1), params.term(params.n)};
    std::optional<std::uint64_t> best;
    for (const auto& [p, e] : factor_trial(static_cast<std::uint64_t>(params.n))) {
        bool ok = true;
        for (auto v : avoid) ok = ok && abs_u64(v) % p != 0;
        if (ok && (!best || p > *best)) best = p;
    }
    return best;
}

ExclusionRecord laguerre_np_certify(const GhlParams& params) {
    params.validate();
    const auto family = laguerre_family(params);
    if (!family) fail(Errc::family_mismatch, "parameters are not in an exceptional Laguerre family");
    const auto p = laguerre_prime(params);
    if (!p) fail(Errc::no_qualifying_prime, "n = " + std::to_string(params.n) + " has no qualifying prime divisor");
    const std::int64_t delta = params.delta;
    const std::int64_t n = params.n;
    const std::int64_t m = delta * n;
    const auto vals = ghl_coefficient_valuations(*p, params, laguerre_seed(n));
    const NewtonPolygon np = polygon_from_valuations(*p, vals);
    std::vector<std::int64_t> xs;
    for (auto x : np.vertex_xs()) xs.push_back(x / delta);
    const std::size_t t = xs.size() - 1;

    const bool claim1 = xs[1] >= 2;
    const bool claim2 = xs[t - 1] <= n - 2;
    if (!claim1) fail(Errc::claim_violation, "first vertex condition fails: x_1 = " + std::to_string(xs[1]));
    if (!claim2) fail(Errc::claim_violation, "last vertex condition fails: x_{t-1} = " + std::to_string(xs[t - 1]));
    for (std::size_t l = 1; l + 1 < t; ++l) {
        if (xs[l + 1] - xs[l] < 2)
            fail(Errc::claim_violation,
                 "interior vertex condition fails between x = " + std::to_string(xs[l]) + " and " + std::to_string(xs[l + 1]));
    }

    const FactorDegreeSet admissible = admissible_degrees(np);
    ExclusionRecord rec;
    rec.k_lo = rec.k_hi = delta;
    rec.method = Method::LAGUERRE_NP;
    if (!admissible.contains(delta)) rec.degrees = sorted_unique({delta, m - delta});
    rec.evidence["family"] = *family;
    rec.evidence["prime"] = *p;
    rec.evidence["breaks"] = xs;
    rec.evidence["claims"] = {true, true, true};
    rec.evidence["segment_admissible"] = admissible.contains(delta);
    return rec;
}

namespace {

using Factors = std::vector<std::pair<std::uint64_t, int>>;

double log_abs(const mpz_class& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

// Divisors of the factored number not exceeding limit; false when more than cap.
bool bounded_divisors(const Factors& f, const mpz_class& limit, std::uint64_t cap, std::vector<mpz_class>& out) {
    bool ok = true;
    std::function<void(std::size_t, const mpz_class&)> walk = [&](std::size_t i, const mpz_class& cur) {
        if (!ok) return;
        if (i == f.size()) {
            out.push_back(cur);
            if (out.size() > cap) ok = false;
            return;
        }
        mpz_class v = cur;
        for (int e = 0; e <= f[i].second && v <= limit; ++e) {
            walk(i + 1, v);
            v *= static_cast<unsigned long>(f[i].first);
        }
    };
    walk(0, mpz_class(1));
    return ok;
}

}  // namespace

std::optional<std::vector<mpq_class>> rational_roots(const IntegerPolynomial& poly, const Factors& c0_factors,
                                                     const Factors& cn_factors, std::uint64_t cap) {
    const std::int64_t n = poly.degree();
    if (n < 1) fail(Errc::precondition, "rational roots need degree >= 1");
    if (poly[0] == 0) fail(Errc::precondition, "constant term must be nonzero");
    const double lead = log_abs(poly.leading());
    // Fujiwara: |x| <= 2 max(|c_{n-i}/c_n|^{1/i}) with the last term halved.
    double best = -1e300;
    for (std::int64_t i = 1; i <= n; ++i) {
        const mpz_class& c = poly[static_cast<std::size_t>(n - i)];
        if (c == 0) continue;
        double lg = log_abs(c) - lead;
        if (i == n) lg -= std::log(2.0);
        best = std::max(best, lg / static_cast<double>(i));
    }
    const double bound = 2.0 * std::exp(best) * 1.0001 + 1.0;

    std::vector<mpz_class> dens;
    if (!bounded_divisors(cn_factors, mpz_class(abs(poly.leading())), cap, dens)) return std::nullopt;
    std::vector<mpq_class> roots;
    std::uint64_t tried = 0;
    std::vector<mpz_class> qpow(static_cast<std::size_t>(n + 1));
    for (const auto& q : dens) {
        mpz_class limit;
        mpz_set_d(limit.get_mpz_t(), std::floor(bound * q.get_d()) + 1.0);
        std::vector<mpz_class> nums;
        if (!bounded_divisors(c0_factors, limit, cap, nums)) return std::nullopt;
        tried += nums.size();
        if (tried > cap) return std::nullopt;
        qpow[0] = 1;
        for (std::int64_t i = 1; i <= n; ++i) qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i - 1)] * q;
        for (const auto& pnum : nums) {
            if (gcd(pnum, q) != 1) continue;
            for (int sign : {1, -1}) {
                const mpz_class P = sign * pnum;
                mpz_class acc = poly.leading();
                for (std::int64_t i = n - 1; i >= 0; --i)
                    acc = acc * P + poly[static_cast<std::size_t>(i)] * qpow[static_cast<std::size_t>(n - i)];
                if (acc == 0) {
                    mpq_class root(P, q);
                    root.canonicalize();
                    roots.push_back(root);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_laguerre_seed(const SeedCoefficients& seed) {
    if (seed.values.size() < 2) return false;
    return seed.values == laguerre_seed(static_cast<std::int64_t>(seed.values.size()) - 1).values;
}

namespace {

class DegreeTracker {
public:
    explicit DegreeTracker(std::int64_t m) : open_(static_cast<std::size_t>(std::max<std::int64_t>(m, 1)), true) {
        open_[0] = false;
    }
    bool is_open(std::int64_t K) const {
        return K >= 1 && static_cast<std::size_t>(K) < open_.size() && open_[static_cast<std::size_t>(K)];
    }
    std::vector<std::int64_t> take(const std::vector<std::int64_t>& ds) {
        std::vector<std::int64_t> fresh;
        for (auto K : ds) {
            if (is_open(K)) {
                open_[static_cast<std::size_t>(K)] = false;
                fresh.push_back(K);
            }
        }
        std::sort(fresh.begin(), fresh.end());
        return fresh;
    }
    std::vector<std::int64_t> open_degrees() const {
        std::vector<std::int64_t> out;
        for (std::size_t K = 1; K < open_.size(); ++K)
            if (open_[K]) out.push_back(static_cast<std::int64_t>(K));
        return out;
    }
    bool any_open() const { return std::find(open_.begin() + 1, open_.end(), true) != open_.end(); }

private:
    std::vector<bool> open_;
};

void absorb(Certificate& cert, DegreeTracker& tracker, ExclusionRecord rec) {
    rec.degrees = tracker.take(rec.degrees);
    if (!rec.degrees.empty()) cert.records.push_back(std::move(rec));
}

std::optional<Factors> factor_mpz(const mpz_class& v) {
    mpz_class a = abs(v);
    if (a == 0 || !a.fits_ulong_p() || a > mpz_class("1000000000000")) return std::nullopt;
    return factor_trial(a.get_ui());
}

void merge_into(std::map<std::uint64_t, int>& acc, const Factors& f) {
    for (const auto& [p, e] : f) acc[p] += e;
}

bool rational_power(const mpq_class& q, unsigned k) {
    if (q == 0) return true;
    if (k % 2 == 0 && q < 0) return false;
    mpz_class num = abs(q.get_num());
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), num.get_mpz_t(), k) == 0) return false;
    return mpz_root(r.get_mpz_t(), q.get_den().get_mpz_t(), k) != 0;
}

}  // namespace

Certificate full_certify(const GhlParams& params, const SeedCoefficients& seed, const CertifyOptions& options) {
    params.validate();
    seed.validate(params.n);
    const std::int64_t n = params.n;
    const std::int64_t delta = params.delta;
    const std::int64_t m = delta * n;
    Certificate cert;
    cert.params = params;
    cert.seed = seed.name;
    DegreeTracker tracker(m);
    const std::vector<std::uint64_t> primes = options.primes.empty() ? primes_up_to(400) : options.primes;

    CriteriaOptions dlk_only;
    dlk_only.use_lemma_r = false;
    dlk_only.use_slope_window = false;
    for (auto& rec : exclude_degrees(params, seed, dlk_only).records) absorb(cert, tracker, std::move(rec));

    if (delta > 1) {
        const std::int64_t top = params.term(n);
        if (abs_u64(top) > 1) {
            FactorDegreeSet common(m, true);
            auto per_prime = nlohmann::ordered_json::array();
            for (const auto& [p, e] : factor_trial(abs_u64(top))) {
                const auto vals = ghl_coefficient_valuations(p, params, seed);
                const FactorDegreeSet a = admissible_degrees(polygon_from_valuations(p, vals));
                const auto ds = a.degrees();
                const bool divisible = std::all_of(ds.begin(), ds.end(), [delta](std::int64_t K) { return K % delta == 0; });
                per_prime.push_back({{"prime", p}, {"delta_divisible", divisible}});
                common &= a;
            }
            std::vector<std::int64_t> gone;
            for (std::int64_t K = 1; K < m; ++K)
                if (!common.contains(K)) gone.push_back(K);
            ExclusionRecord rec;
            rec.k_lo = 1;
            rec.k_hi = m - 1;
            rec.method = Method::DELTA_DIVISIBILITY;
            rec.degrees = gone;
            rec.evidence["top_term"] = top;
            rec.evidence["primes"] = per_prime;
            absorb(cert, tracker, std::move(rec));
        }
    }

    if (options.special_handlers) {
        const bool u_ok = params.u == -1 || params.u == 0;
        const std::int64_t top = params.term(n);
        if (params.d == 3 && u_ok && top > 1 && exact_log(static_cast<std::uint64_t>(top), 2)) {
            try {
                absorb(cert, tracker, special_2adic_certify(params, seed));
            } catch (const Error& e) {
                cert.notes.push_back(std::string("special 2-adic step skipped: ") + e.what());
            }
        }
        if (params.d == 3 && u_ok) {
            try {
                if (auto rec = special_2adic_k2_certify(params, seed)) absorb(cert, tracker, std::move(*rec));
            } catch (const Error& e) {
                cert.notes.push_back(std::string("k = 2 case skipped: ") + e.what());
            }
        }
        const bool family4 = params.d == 4 && ((params.u == -1 && params.alpha == 1) || (params.u == 0 && params.alpha == 3));
        if (family4 && top % 3 == 0 && n >= 2) {
            if (!seed_coprime(seed, 3)) {
                cert.notes.push_back("special 3-adic step skipped: 3 divides a_0 a_n");
            } else {
                const bool ok = special_3adic_check(params);
                const NewtonPolygon np = skeleton_polygon(params, 3);
                if (ok && slope_window_excludes(np, 0, delta)) {
                    ExclusionRecord rec;
                    rec.k_lo = 1;
                    rec.k_hi = delta;
                    rec.method = Method::SPECIAL_3ADIC;
                    for (std::int64_t K = 1; K <= delta; ++K) {
                        rec.degrees.push_back(K);
                        rec.degrees.push_back(m - K);
                    }
                    const auto [j0, l0] = special_3adic_j0_l0(params);
                    rec.evidence["prime"] = 3;
                    rec.evidence["j0"] = j0;
                    rec.evidence["l0"] = l0;
                    rec.evidence["max_slope"] = np.max_slope().str();
                    absorb(cert, tracker, std::move(rec));
                } else {
                    cert.notes.push_back("special 3-adic step did not apply; max slope " + np.max_slope().str());
                }
            }
        }
        if (is_laguerre_seed(seed) && laguerre_family(params) && n >= 2) {
            try {
                ExclusionRecord rec = laguerre_np_certify(params);
                if (rec.degrees.empty())
                    cert.notes.push_back("Laguerre polygon: degree delta is segment-admissible at p = " +
                                         rec.evidence["prime"].dump());
                absorb(cert, tracker, std::move(rec));
            } catch (const Error& e) {
                cert.notes.push_back(std::string("Laguerre polygon step failed: ") + e.what());
            }
        }
    }

    if (tracker.any_open()) {
        CriteriaOptions generic;
        generic.use_dlk = false;
        generic.primes = primes;
        for (auto& rec : exclude_degrees(params, seed, generic).records) absorb(cert, tracker, std::move(rec));
    }

    for (const auto p : primes) {
        if (!tracker.any_open()) break;
        const auto vals = ghl_coefficient_valuations(p, params, seed);
        const NewtonPolygon np = polygon_from_valuations(p, vals);
        const FactorDegreeSet a = admissible_degrees(np);
        ExclusionRecord rec;
        rec.k_lo = 1;
        rec.k_hi = m - 1;
        rec.method = Method::DUMAS_NP;
        for (auto K : tracker.open_degrees())
            if (!a.contains(K)) rec.degrees.push_back(K);
        rec.evidence["prime"] = p;
        rec.evidence["vertices"] = vertex_json(np);
        absorb(cert, tracker, std::move(rec));
    }

    if (options.fallbacks && tracker.any_open()) {
        if (delta == 1) {
            const IntegerPolynomial g = build_ghl(params, seed);
            const auto f0 = factor_mpz(seed.values.front());
            const auto fn = factor_mpz(seed.values.back());
            if (f0 && fn) {
                std::map<std::uint64_t, int> acc;
                merge_into(acc, *f0);
                for (std::int64_t i = 1; i <= n; ++i) merge_into(acc, factor_trial(abs_u64(params.term(i))));
                const auto roots = rational_roots(g, Factors(acc.begin(), acc.end()), *fn);
                if (!roots) {
                    cert.notes.push_back("rational root search exceeded its candidate cap");
                } else if (roots->empty()) {
                    ExclusionRecord rec;
                    rec.k_lo = rec.k_hi = 1;
                    rec.method = Method::RATIONAL_ROOT;
                    rec.degrees = sorted_unique({1, n - 1});
                    rec.evidence["roots"] = nlohmann::ordered_json::array();
                    absorb(cert, tracker, std::move(rec));
                } else {
                    std::string list;
                    for (const auto& r : *roots) list += (list.empty() ? "" : ", ") + r.get_str();
                    cert.notes.push_back("G has rational roots: " + list);
                }
            } else {
                cert.notes.push_back("rational root search skipped: seed end coefficients too large to factor");
            }
        } else {
            GhlParams base = params;
            base.delta = 1;
            const Certificate sub = full_certify(base, seed, options);
            if (sub.verdict == Verdict::IRREDUCIBLE_CERTIFIED) {
                ExclusionRecord rec;
                rec.k_lo = 1;
                rec.k_hi = m - 1;
                rec.method = Method::CAPELLI;
                for (auto K : tracker.open_degrees())
                    if (K % n != 0) rec.degrees.push_back(K);
                // N(theta) over the roots theta of G.
                const IntegerPolynomial g = build_ghl(base, seed);
                mpq_class norm(g[0], g.leading());
                norm.canonicalize();
                if (n % 2 != 0) norm = -norm;
                bool binomial_irreducible = true;
                for (const auto& [p, e] : factor_trial(static_cast<std::uint64_t>(params.d)))
                    binomial_irreducible = binomial_irreducible && !rational_power(norm, static_cast<unsigned>(p));
                if (params.d % 4 == 0) {
                    mpz_class scale;
                    mpz_ui_pow_ui(scale.get_mpz_t(), 4, static_cast<unsigned long>(n));
                    mpq_class shifted = norm / mpq_class(scale);
                    if (n % 2 != 0) shifted = -shifted;
                    binomial_irreducible = binomial_irreducible && !rational_power(shifted, 4);
                }
                if (binomial_irreducible)
                    for (auto K : tracker.open_degrees()) rec.degrees.push_back(K);
                rec.degrees = sorted_unique(rec.degrees);
                rec.evidence["base_verdict"] = std::string(to_string(sub.verdict));
                rec.evidence["norm"] = norm.get_str();
                rec.evidence["binomial_irreducible"] = binomial_irreducible;
                absorb(cert, tracker, std::move(rec));
            } else {
                cert.notes.push_back("Capelli step skipped: G(x) itself is not certified irreducible");
            }
        }
    }

    cert.residual = tracker.open_degrees();
    if (cert.residual.empty()) {
        cert.verdict = Verdict::IRREDUCIBLE_CERTIFIED;
    } else if (is_laguerre_seed(seed) && laguerre_family(params)) {
        cert.verdict = Verdict::EXCEPTIONAL_FAMILY;
    } else {
        cert.verdict = Verdict::EXCLUSIONS_ONLY;
    }
    if (!certificate_partition_ok(cert)) fail(Errc::consistency, "certificate does not partition the degrees");
    return cert;
}

}  // namespace ghl
