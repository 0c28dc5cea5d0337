#include "doctest.h"

#include "ghl/error.hpp"
#include "ghl/poly.hpp"

using namespace ghl;

namespace {
IntegerPolynomial P(std::initializer_list<long> c) {
    std::vector<mpz_class> v;
    for (long x : c) v.emplace_back(x);
    return IntegerPolynomial(v);
}
}  // namespace

TEST_SUITE("poly") {
TEST_CASE("build_ghl small cases") {
    CHECK(build_ghl({3, -1, 2, 1, 1}, ones_seed(1)) == P({2, 1}));
    CHECK(build_ghl({3, 0, 1, 2, 1}, ones_seed(2)) == P({28, 7, 1}));
    CHECK(build_ghl({4, 0, 1, 2, 1}, laguerre_seed(2)) == P({45, -18, 1}));
    CHECK(build_ghl({4, 0, 3, 2, 1}, laguerre_seed(2)) == P({77, -22, 1}));
}

TEST_CASE("build_ghl n=43 laguerre, d=4") {
    const GhlParams prm{4, -1, 1, 43, 1};
    const auto g = build_ghl(prm, laguerre_seed(43));
    CHECK(g.degree() == 43);
    CHECK(g.leading() == -1);
    mpz_class prod = 1;
    for (int i = 1; i <= 43; ++i) prod *= 1 + 4 * (i - 1);
    CHECK(g[0] == prod);
    CHECK(g[0] == mpz_class("76611717648254976682242461172448360115302786846982603080768655917909423828125"));
}

TEST_CASE("coefficients follow the product formula") {
    const GhlParams prm{3, 0, 2, 9, 1};
    SeedCoefficients seed;
    for (int j = 0; j <= 9; ++j) seed.values.emplace_back(j * j - 7);
    const auto g = build_ghl(prm, seed);
    for (int j = 0; j <= 9; ++j) {
        mpz_class c = seed.values[j];
        for (int i = j + 1; i <= 9; ++i) c *= 2 + 3 * i;
        CHECK(g.coeff(j) == c);
    }
}

TEST_CASE("parameter and seed validation") {
    CHECK_THROWS_AS(build_ghl({4, 0, 2, 3, 1}, ones_seed(3)), Error);
    CHECK_THROWS_AS(build_ghl({3, 0, 1, 3, 2}, ones_seed(3)), Error);
    CHECK_THROWS_AS(build_ghl({3, 0, 1, 3, 1}, ones_seed(2)), Error);
    try {
        build_ghl({3, 0, 1, 3, 1}, ones_seed(2));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::length_mismatch);
    }
}

TEST_CASE("substitute_power") {
    CHECK(substitute_power(P({2, 1}), 3) == P({2, 0, 0, 1}));
    CHECK(substitute_power(P({28, 7, 1}), 3) == P({28, 0, 0, 7, 0, 0, 1}));
    CHECK(substitute_power(P({5, -1, 3}), 1) == P({5, -1, 3}));
    CHECK(build_ghl_power({3, -1, 2, 1, 3}, ones_seed(1)) == P({2, 0, 0, 1}));
}

TEST_CASE("laguerre seed rows") {
    auto vals = [](std::int64_t n) {
        std::vector<long> out;
        for (const auto& v : laguerre_seed(n).values) out.push_back(v.get_si());
        return out;
    };
    CHECK(vals(2) == std::vector<long>{1, -2, 1});
    CHECK(vals(4) == std::vector<long>{1, -4, 6, -4, 1});
    CHECK(vals(5) == std::vector<long>{1, -5, 10, -10, 5, -1});
}

TEST_CASE("hermite polynomials match the recurrence") {
    CHECK(hermite_polynomial(1) == P({0, 2}));
    CHECK(hermite_polynomial(2) == P({-2, 0, 4}));
    CHECK(hermite_polynomial(3) == P({0, -12, 0, 8}));
    IntegerPolynomial prev = P({1}), cur = P({0, 2});
    const auto x2 = P({0, 2});
    for (int m = 1; m < 14; ++m) {
        auto next = x2 * cur - prev.scaled(2 * m);
        prev = cur;
        cur = next;
        CHECK(hermite_polynomial(m + 1) == cur);
    }
}

TEST_CASE("polynomial arithmetic") {
    const auto a = P({2, 1});
    CHECK(a * a == P({4, 4, 1}));
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK(P({4, 4, 1}).evaluate(-2) == 0);
    CHECK(P({1, 0, 3}).str().find('3') != std::string::npos);
}
}
