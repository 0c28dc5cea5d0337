#include "ghl/valuation.hpp"

#include "ghl/error.hpp"
#include "ghl/primes.hpp"

namespace ghl {
namespace {

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) fail(Errc::not_prime, std::to_string(p) + " is not prime");
}

std::int64_t nu_small(std::uint64_t p, std::int64_t r) {
    std::uint64_t m = r < 0 ? 0 - static_cast<std::uint64_t>(r) : static_cast<std::uint64_t>(r);
    std::int64_t v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

Valuation nu_big(std::uint64_t p, const mpz_class& r) {
    if (r == 0) return Valuation::infinity();
    if (mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p)) == 0) return Valuation(0);
    mpz_class rest;
    mpz_class prime(static_cast<unsigned long>(p));
    const auto count = mpz_remove(rest.get_mpz_t(), r.get_mpz_t(), prime.get_mpz_t());
    return Valuation(static_cast<std::int64_t>(count));
}

}  // namespace

std::int64_t Valuation::value() const {
    if (infinite_) fail(Errc::precondition, "value() of an infinite valuation");
    return value_;
}

Valuation nu(std::uint64_t p, const mpz_class& r) {
    require_prime(p);
    return nu_big(p, r);
}

Valuation nu(std::uint64_t p, std::int64_t r) {
    require_prime(p);
    if (r == 0) return Valuation::infinity();
    return Valuation(nu_small(p, r));
}

std::int64_t digit_sum(std::uint64_t p, std::int64_t m) {
    require_prime(p);
    if (m < 0) fail(Errc::invalid_params, "digit_sum of a negative integer");
    std::int64_t s = 0;
    auto rest = static_cast<std::uint64_t>(m);
    while (rest != 0) {
        s += static_cast<std::int64_t>(rest % p);
        rest /= p;
    }
    return s;
}

std::int64_t ord_factorial(std::uint64_t p, std::int64_t m) {
    const std::int64_t s = digit_sum(p, m);
    return (m - s) / static_cast<std::int64_t>(p - 1);
}

Valuation ord_tail_product(std::uint64_t p, const GhlParams& params, std::int64_t l) {
    require_prime(p);
    if (l < 0 || l > params.n) fail(Errc::out_of_range, "index outside 0..n");
    std::int64_t total = 0;
    for (std::int64_t i = l + 1; i <= params.n; ++i) total += nu_small(p, params.term(i));
    return Valuation(total);
}

std::vector<Rational> phi_sequence(std::uint64_t p, const GhlParams& params) {
    require_prime(p);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(params.n));
    std::int64_t running = 0;
    for (std::int64_t j = 1; j <= params.n; ++j) {
        running += nu_small(p, params.term(j));
        out.emplace_back(running, j);
    }
    return out;
}

std::vector<Valuation> ghl_coefficient_valuations(std::uint64_t p, const GhlParams& params,
                                                  const SeedCoefficients& seed) {
    params.validate();
    seed.validate(params.n);
    require_prime(p);
    std::vector<Valuation> out(static_cast<std::size_t>(params.n * params.delta + 1), Valuation::infinity());
    std::int64_t tail = 0;  // nu_p prod_{i=j+1}^{n}
    for (std::int64_t j = params.n; j >= 0; --j) {
        out[static_cast<std::size_t>(j * params.delta)] = nu_big(p, seed.values[static_cast<std::size_t>(j)]) + Valuation(tail);
        if (j >= 1) tail += nu_small(p, params.term(j));
    }
    return out;
}

}  // namespace ghl
