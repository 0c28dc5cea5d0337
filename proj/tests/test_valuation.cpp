#include "doctest.h"

#include "ghl/error.hpp"
#include "ghl/primes.hpp"
#include "ghl/valuation.hpp"

using namespace ghl;

namespace {
std::int64_t count_factorial(std::uint64_t p, std::int64_t m) {
    std::int64_t total = 0;
    for (std::int64_t i = 2; i <= m; ++i) {
        std::int64_t x = i;
        while (x % static_cast<std::int64_t>(p) == 0) {
            x /= static_cast<std::int64_t>(p);
            ++total;
        }
    }
    return total;
}
}  // namespace

TEST_SUITE("valuation") {
TEST_CASE("nu basics") {
    CHECK(nu(2, std::int64_t{40}) == Valuation(3));
    CHECK(nu(5, std::int64_t{0}).is_infinite());
    CHECK(nu(7, std::int64_t{1}) == Valuation(0));
    CHECK(nu(3, mpz_class("-4782969")) == Valuation(14));
    CHECK_THROWS_AS(nu(4, std::int64_t{8}), Error);
    CHECK(Valuation(3) < Valuation::infinity());
    CHECK((Valuation(2) + Valuation::infinity()).is_infinite());
    CHECK(Valuation::infinity().str() == "inf");
}

TEST_CASE("digit sums") {
    CHECK(digit_sum(2, 43) == 4);
    CHECK(digit_sum(3, 9) == 1);
    CHECK(digit_sum(2, 42) == 3);
}

TEST_CASE("Legendre against direct count") {
    CHECK(ord_factorial(2, 10) == 8);
    CHECK(ord_factorial(3, 9) == 4);
    CHECK(ord_factorial(11, 0) == 0);
    for (auto p : primes_up_to(50))
        for (std::int64_t m = 0; m <= 600; m += 7) CHECK(ord_factorial(p, m) == count_factorial(p, m));
}

TEST_CASE("tail products") {
    const GhlParams prm{3, -1, 2, 43, 1};
    CHECK(ord_tail_product(2, prm, 42) == Valuation(7));
    CHECK(ord_tail_product(5, prm, 43) == Valuation(0));
    CHECK(ord_tail_product(2, prm, 0) == Valuation(7 + ord_factorial(2, 42)));
    CHECK(ord_tail_product(2, prm, 0) == Valuation(46));
}

TEST_CASE("2-power tail identity for d = 3") {
    int checked = 0;
    for (std::int64_t u : {-1, 0})
        for (std::int64_t alpha : {1, 2})
            for (std::int64_t a = 1; a <= 20; ++a) {
                const std::int64_t top = std::int64_t{1} << a;
                if ((top - alpha) % 3 != 0) continue;
                const std::int64_t n = (top - alpha) / 3 - u;
                if (n < 3) continue;
                const GhlParams prm{3, u, alpha, n, 1};
                for (std::int64_t l = 1; l < n - 1; l += std::max<std::int64_t>(1, n / 200)) {
                    CHECK(ord_tail_product(2, prm, l - 1) == Valuation(a + ord_factorial(2, n - l)));
                    ++checked;
                }
            }
    CHECK(checked > 100);
}

TEST_CASE("phi sequence") {
    auto phi = phi_sequence(2, {3, 0, 2, 4, 1});
    REQUIRE(phi.size() == 4);
    CHECK(phi[0] == Rational(0));
    CHECK(phi[1] == Rational(3, 2));
    CHECK(phi[2] == Rational(1));
    CHECK(phi[3] == Rational(1));
    phi = phi_sequence(7, {3, 0, 1, 3, 1});
    CHECK(phi == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1, 3)});
    for (const auto& v : phi_sequence(101, {3, 0, 1, 20, 1})) CHECK(v == Rational(0));
}

TEST_CASE("coefficient valuations agree with the built polynomial") {
    const GhlParams prm{4, -1, 3, 30, 4};
    const auto seed = laguerre_seed(30);
    const auto g = build_ghl_power(prm, seed);
    for (auto p : {2ULL, 3ULL, 5ULL, 7ULL, 29ULL, 113ULL}) {
        const auto v = ghl_coefficient_valuations(p, prm, seed);
        REQUIRE(v.size() == static_cast<std::size_t>(g.degree() + 1));
        for (std::int64_t j = 0; j <= g.degree(); ++j) CHECK(v[j] == nu(p, g[j]));
    }
}
}
