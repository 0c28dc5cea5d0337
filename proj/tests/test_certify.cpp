#include "doctest.h"

#include <algorithm>
#include <functional>

#include "ghl/certify.hpp"
#include "ghl/error.hpp"
#include "ghl/newton.hpp"
#include "oracle.hpp"

using namespace ghl;

namespace {
Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::io;
}

IntegerPolynomial P(std::initializer_list<long> c) {
    std::vector<mpz_class> v;
    for (long x : c) v.emplace_back(x);
    return IntegerPolynomial(v);
}
}  // namespace

TEST_SUITE("certify") {
TEST_CASE("break sequences") {
    CHECK(expected_breaks({3, -1, 2, 43, 1}).breaks == std::vector<std::int64_t>{0, 32, 40, 43});
    CHECK(expected_breaks({3, 0, 2, 42, 1}).breaks == std::vector<std::int64_t>{0, 32, 40, 42});
    const auto b = expected_breaks({3, -1, 1, 6, 1});
    CHECK(b.breaks == std::vector<std::int64_t>{0, 4, 6});
    CHECK(b.a == 4);
    CHECK(b.eta == 0);
    CHECK(b.s == 2);
    CHECK(expected_breaks({3, -1, 2, 43, 1}).a == 7);
    CHECK(code_of([] { expected_breaks({4, -1, 1, 6, 1}); }) == Errc::family_mismatch);
    CHECK(code_of([] { expected_breaks({3, 0, 2, 16, 1}); }) == Errc::family_mismatch);
}

TEST_CASE("break sequences agree with polygons") {
    for (int eta : {0, 1})
        for (std::int64_t u : {-1, 0})
            for (std::int64_t s = 1; s <= 4; ++s) {
                const auto bs = make_break_sequence(eta, s, u);
                if (bs.n() < 2) continue;
                const GhlParams prm{3, u, eta + 1, bs.n(), 1};
                CHECK(expected_breaks(prm).breaks == bs.breaks);
                const auto np = build_polygon(build_ghl(prm, ones_seed(prm.n)), 2);
                for (std::size_t i = 1; i + 1 < bs.breaks.size(); ++i) {
                    const auto x = bs.breaks[i];
                    if (eta == 0 && u == -1 && i + 2 == bs.breaks.size()) {
                        // q = -2/3: the last interior break sits strictly above the hull.
                        CHECK(newton_function(np, Rational(x)) < Rational(np.heights()[x].value()));
                    } else {
                        CHECK(np.is_vertex(x));
                    }
                }
            }
}

TEST_CASE("break valuation identities") {
    for (int eta : {0, 1})
        for (std::int64_t u : {-1, 0})
            for (std::int64_t s = 2; s <= 16; ++s) {
                const auto c = check_break_valuations(make_break_sequence(eta, s, u), u);
                CHECK(c.breaks_ok);
                CHECK(c.lower_bound_ok);
                // The closed form at n - 1 is one short when eta = 1, u = -1
                // (n - 1 = 2(1 + 4 + ... + 4^(s-1)) has s binary ones).
                if (eta == 1 && u == -1) {
                    CHECK(c.endpoint_legendre == c.endpoint_closed + 1);
                    CHECK_FALSE(verify_break_valuations(make_break_sequence(eta, s, u), u));
                } else {
                    CHECK(c.endpoint_ok);
                }
            }
    CHECK(check_break_valuations(make_break_sequence(1, 3, -1), -1).endpoint_legendre == 39);
    CHECK_THROWS_AS(make_break_sequence(2, 3, 0), Error);
    CHECK_THROWS_AS(make_break_sequence(0, 31, 0), Error);
}

TEST_CASE("special 2-adic step") {
    const auto a = special_2adic_certify({3, -1, 2, 43, 3}, ones_seed(43));
    CHECK(a.method == Method::SPECIAL_2ADIC);
    CHECK(a.degrees == std::vector<std::int64_t>{3, 126});
    CHECK(a.evidence.at("max_slope") == "4/9");
    CHECK(a.evidence.at("min_slope") == "11/32");
    CHECK(a.evidence.at("r") == 1);
    const auto b = special_2adic_certify({3, 0, 2, 42, 3}, ones_seed(42));
    CHECK(b.evidence.at("max_slope") == "1/2");
    // For q = 1/3 the largest slope is exactly 2/delta; the window is open.
    CHECK(code_of([] { special_2adic_certify({3, 0, 1, 5, 1}, laguerre_seed(5)); }) == Errc::claim_violation);
    SeedCoefficients even = ones_seed(43);
    even.values[0] = 2;
    CHECK(code_of([&] { special_2adic_certify({3, -1, 2, 43, 3}, even); }) == Errc::seed_violation);
}

TEST_CASE("the 125 case at k = 2") {
    const auto rec = special_2adic_k2_certify({3, -1, 2, 43, 3}, ones_seed(43));
    REQUIRE(rec.has_value());
    CHECK(rec->degrees == std::vector<std::int64_t>{4, 6, 123, 125});
    // Same 125 term, but Lemma <r gives nothing between delta+1 and 2 delta.
    const auto other = special_2adic_k2_certify({3, 0, 2, 42, 3}, ones_seed(42));
    REQUIRE(other.has_value());
    CHECK(other->degrees.empty());
    CHECK_FALSE(special_2adic_k2_certify({3, -1, 2, 21, 3}, ones_seed(21)).has_value());
}

TEST_CASE("special 3-adic data") {
    CHECK(special_3adic_j0_l0({4, -1, 1, 8, 1}) == std::pair<std::int64_t, std::int64_t>{3, 3});
    CHECK(special_3adic_j0_l0({4, 0, 3, 6, 1}) == std::pair<std::int64_t, std::int64_t>{3, 5});
    CHECK(code_of([] { special_3adic_j0_l0({3, 0, 1, 6, 1}); }) == Errc::family_mismatch);
    CHECK(special_3adic_check({4, 0, 3, 6, 1}));
    CHECK(special_3adic_check({4, -1, 1, 3, 1}));
    CHECK(code_of([] { special_3adic_check({4, -1, 1, 5, 1}); }) == Errc::family_mismatch);
}

TEST_CASE("Laguerre families and primes") {
    CHECK(laguerre_family({3, 0, 1, 5, 1}).has_value());
    CHECK(laguerre_family({3, 0, 2, 16, 1}).has_value());
    CHECK_FALSE(laguerre_family({3, 0, 2, 2, 1}).has_value());  // 8 = 2^3 5^0
    CHECK(laguerre_family({4, -1, 3, 7, 1}).has_value());        // 27
    CHECK_FALSE(laguerre_family({4, 0, 1, 2, 1}).has_value());   // 9 = 3^2 5^0
    CHECK(laguerre_family({4, 0, 1, 11, 1}).has_value());        // 45
    CHECK(laguerre_family({4, 0, 3, 85, 1}).has_value());        // 343
    CHECK(laguerre_prime({3, 0, 1, 5, 1}) == std::optional<std::uint64_t>(5));
    CHECK_FALSE(laguerre_prime({3, 0, 2, 16, 1}).has_value());
    CHECK(code_of([] { laguerre_np_certify({3, 0, 2, 16, 1}); }) == Errc::no_qualifying_prime);
    CHECK(code_of([] { laguerre_np_certify({3, 0, 2, 2, 1}); }) == Errc::family_mismatch);
    const auto rec = laguerre_np_certify({3, 0, 1, 5, 1});
    CHECK(rec.method == Method::LAGUERRE_NP);
    CHECK(rec.witness_prime == std::nullopt);
}

TEST_CASE("rational roots") {
    const auto r = rational_roots(P({45, -18, 1}), {{3, 2}, {5, 1}}, {});
    REQUIRE(r.has_value());
    CHECK(*r == std::vector<mpq_class>{3, 15});
    const auto none = rational_roots(P({2, 0, 0, 1}), {{2, 1}}, {});
    REQUIRE(none.has_value());
    CHECK(none->empty());
    const auto half = rational_roots(P({-1, 2}), {}, {{2, 1}});
    REQUIRE(half.has_value());
    CHECK(*half == std::vector<mpq_class>{mpq_class(1, 2)});
}

TEST_CASE("full certification") {
    const auto a = full_certify({4, -1, 3, 25, 4}, laguerre_seed(25));
    CHECK(a.verdict == Verdict::IRREDUCIBLE_CERTIFIED);
    CHECK(a.residual.empty());
    CHECK(certificate_partition_ok(a));

    const auto b = full_certify({3, 0, 1, 2, 1}, laguerre_seed(2));
    CHECK(b.verdict == Verdict::IRREDUCIBLE_CERTIFIED);
    const auto c = full_certify({3, 0, 1, 2, 3}, laguerre_seed(2));
    CHECK(c.verdict == Verdict::IRREDUCIBLE_CERTIFIED);
    for (const auto& cert : {b, c}) {
        const auto o = oracle::find_factor(build_ghl_power(cert.params, laguerre_seed(2)));
        CHECK(o.converged);
        CHECK_FALSE(o.factor.has_value());
    }
}

TEST_CASE("ones seed in the 2/3 family") {
    const auto c = full_certify({3, 0, 2, 16, 3}, ones_seed(16));
    CHECK(certificate_partition_ok(c));
    for (auto k : c.residual) CHECK((k == 3 || k == 45));
    CertifyOptions bare;
    bare.fallbacks = false;
    const auto d = full_certify({3, 0, 2, 16, 3}, ones_seed(16), bare);
    for (auto k : d.residual) CHECK((k == 3 || k == 45));
}

TEST_CASE("ones seed in the 1/3 family leaves degree delta without fallbacks") {
    CertifyOptions bare;
    bare.fallbacks = false;
    const auto c = full_certify({3, 0, 1, 85, 3}, ones_seed(85), bare);
    CHECK(c.verdict == Verdict::EXCLUSIONS_ONLY);
    CHECK(c.residual == std::vector<std::int64_t>{3, 252});
    CHECK(full_certify({3, 0, 1, 85, 3}, ones_seed(85)).verdict == Verdict::IRREDUCIBLE_CERTIFIED);
}

TEST_CASE("q = 1/4, n = 2 really factors") {
    const auto g1 = build_ghl({4, 0, 1, 2, 1}, laguerre_seed(2));
    CHECK(g1 == P({3, -1}) * P({15, -1}));
    const auto c1 = full_certify({4, 0, 1, 2, 1}, laguerre_seed(2));
    CHECK(c1.verdict == Verdict::EXCLUSIONS_ONLY);
    CHECK(c1.residual == std::vector<std::int64_t>{1});
    const auto c4 = full_certify({4, 0, 1, 2, 4}, laguerre_seed(2));
    CHECK(c4.verdict == Verdict::EXCLUSIONS_ONLY);
    CHECK(c4.residual == std::vector<std::int64_t>{4});
    const auto o = oracle::find_factor(build_ghl_power({4, 0, 1, 2, 4}, laguerre_seed(2)));
    REQUIRE(o.factor.has_value());
    CHECK(o.factor->degree() == 4);
}

TEST_CASE("ones seed can factor where the Laguerre seed does not") {
    const auto g = build_ghl({3, -1, 1, 2, 1}, ones_seed(2));
    CHECK(g == P({2, 1}) * P({2, 1}));
    const auto c = full_certify({3, -1, 1, 2, 1}, ones_seed(2));
    CHECK(c.residual == std::vector<std::int64_t>{1});
    CHECK(certificate_partition_ok(c));
}

TEST_CASE("oracle self test") {
    CHECK(oracle::find_factor(P({4, 4, 1})).factor.has_value());
    CHECK(oracle::find_factor(P({4, 0, 0, 0, 1})).factor.has_value());
    const auto big = substitute_power(P({45, -18, 1}), 4);
    CHECK(oracle::find_factor(big).factor.has_value());
    const auto irr = oracle::find_factor(P({2, 0, 0, 0, 0, 1}));
    CHECK(irr.converged);
    CHECK_FALSE(irr.factor.has_value());
    CHECK_FALSE(oracle::find_factor(P({1, 1, 1, 1, 1})).factor.has_value());
    CHECK(oracle::find_factor(P({1, 0, 1, 0, 1})).factor.has_value());  // (x^2+x+1)(x^2-x+1)
}

TEST_CASE("certificate json is stable") {
    const auto a = full_certify({4, 0, 3, 12, 4}, laguerre_seed(12)).to_json().dump();
    const auto b = full_certify({4, 0, 3, 12, 4}, laguerre_seed(12)).to_json().dump();
    CHECK(a == b);
    const auto j = nlohmann::ordered_json::parse(a);
    CHECK(j.at("schema_version") == kCertificateSchemaVersion);
    CHECK(j.at("verdict") == "IRREDUCIBLE_CERTIFIED");
    CHECK(j.begin().key() == "schema_version");
}

TEST_CASE("partition check rejects overlap and gaps") {
    Certificate c;
    c.params = {3, 0, 1, 3, 1};
    ExclusionRecord r;
    r.degrees = {1, 2};
    c.records.push_back(r);
    CHECK(certificate_partition_ok(c));
    c.residual = {2};
    CHECK_FALSE(certificate_partition_ok(c));
    c.residual.clear();
    c.records[0].degrees = {1};
    CHECK_FALSE(certificate_partition_ok(c));
}
}
