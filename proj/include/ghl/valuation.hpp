#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ghl/poly.hpp"
#include "ghl/rational.hpp"

namespace ghl {

/// p-adic valuation: a nonnegative integer, or infinity for nu(0).
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(std::int64_t value) : value_(value) {}
    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }
    /// Finite value; callers must check is_finite() first.
    std::int64_t value() const;

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

Valuation nu(std::uint64_t p, const mpz_class& r);
Valuation nu(std::uint64_t p, std::int64_t r);

/// Sum of the base-p digits of m.
std::int64_t digit_sum(std::uint64_t p, std::int64_t m);

/// ord_p(m!) via Legendre's digit-sum formula.
std::int64_t ord_factorial(std::uint64_t p, std::int64_t m);

/// nu_p of prod_{i=l+1}^{n} (alpha + (u+i)d), summed factor by factor.
Valuation ord_tail_product(std::uint64_t p, const GhlParams& params, std::int64_t l);

/// phi_j = ord_p(Delta_j) / j for j = 1..n, Delta_j = prod_{i=1}^{j} (alpha + (u+i)d).
std::vector<Rational> phi_sequence(std::uint64_t p, const GhlParams& params);

/// nu_p of every coefficient of G(x^delta), indexed by power, computed from
/// the factored form (seed valuation plus tail-product valuation).
std::vector<Valuation> ghl_coefficient_valuations(std::uint64_t p, const GhlParams& params,
                                                  const SeedCoefficients& seed);

}  // namespace ghl
