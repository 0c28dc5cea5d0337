#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ghl {

/// q = u + alpha/d in lowest terms, the degree n and the substitution
/// exponent delta (G(x) for delta = 1, G(x^d) for delta = d).
struct GhlParams {
    std::int64_t d = 1;
    std::int64_t u = 0;
    std::int64_t alpha = 0;
    std::int64_t n = 1;
    std::int64_t delta = 1;

    /// Throws Error(invalid_params) unless gcd(alpha, d) = 1, 1 <= alpha < d,
    /// delta in {1, d} and n >= 1.
    void validate() const;

    /// alpha + (u + i) d, the i-th factor of the coefficient products.
    std::int64_t term(std::int64_t i) const noexcept { return alpha + (u + i) * d; }

    friend bool operator==(const GhlParams&, const GhlParams&) = default;
};

/// Seed a_0..a_n multiplying the coefficient products.
struct SeedCoefficients {
    std::vector<mpz_class> values;
    std::string name = "custom";

    void validate(std::int64_t n) const;
};

SeedCoefficients ones_seed(std::int64_t n);

/// a_j = (-1)^j binomial(n, j); with this seed G(x) = d^n n! L_n^{(q)}(x/d).
SeedCoefficients laguerre_seed(std::int64_t n);

/// Dense integer polynomial, lowest power first, trailing zeros trimmed.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<mpz_class> coeffs);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
    const mpz_class& operator[](std::size_t i) const { return coeffs_[i]; }
    /// Coefficient of x^i, zero beyond the degree.
    mpz_class coeff(std::int64_t i) const;
    const mpz_class& leading() const { return coeffs_.back(); }
    std::span<const mpz_class> coeffs() const noexcept { return coeffs_; }

    mpz_class evaluate(const mpz_class& x) const;

    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;
    friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
    friend IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b);
    friend IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b);
    IntegerPolynomial scaled(const mpz_class& c) const;

    std::string str() const;

private:
    std::vector<mpz_class> coeffs_;
};

/// Product of the factors alpha + (u+i)d for i = lo..hi (1 when lo > hi).
mpz_class term_product(const GhlParams& params, std::int64_t lo, std::int64_t hi);

/// G(x) = sum_j a_j x^j prod_{i=j+1}^{n} (alpha + (u+i)d). Ignores params.delta.
IntegerPolynomial build_ghl(const GhlParams& params, const SeedCoefficients& seed);

/// f(x) -> f(x^delta).
IntegerPolynomial substitute_power(const IntegerPolynomial& poly, std::int64_t delta);

/// G(x^delta) with delta taken from the params.
IntegerPolynomial build_ghl_power(const GhlParams& params, const SeedCoefficients& seed);

/// Physicists' Hermite polynomial H_m, assembled from G with d = 2.
IntegerPolynomial hermite_polynomial(std::int64_t m);

}  // namespace ghl
