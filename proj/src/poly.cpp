#include "ghl/poly.hpp"

#include <numeric>
#include <sstream>

#include "ghl/error.hpp"

namespace ghl {

void GhlParams::validate() const {
    if (d < 2) fail(Errc::invalid_params, "d must be at least 2");
    if (alpha < 1 || alpha >= d) fail(Errc::invalid_params, "alpha must satisfy 1 <= alpha < d");
    if (std::gcd(alpha, d) != 1) fail(Errc::invalid_params, "gcd(alpha, d) must be 1");
    if (n < 1) fail(Errc::invalid_params, "n must be positive");
    if (delta != 1 && delta != d) fail(Errc::invalid_params, "delta must be 1 or d");
}

void SeedCoefficients::validate(std::int64_t n) const {
    if (static_cast<std::int64_t>(values.size()) != n + 1)
        fail(Errc::length_mismatch, "seed has " + std::to_string(values.size()) + " entries, expected " +
                                        std::to_string(n + 1));
    if (values.front() == 0 || values.back() == 0) fail(Errc::seed_violation, "seed needs a_0 != 0 and a_n != 0");
}

SeedCoefficients ones_seed(std::int64_t n) {
    return {std::vector<mpz_class>(static_cast<std::size_t>(n + 1), mpz_class(1)), "ones"};
}

SeedCoefficients laguerre_seed(std::int64_t n) {
    SeedCoefficients seed{{}, "laguerre"};
    seed.values.reserve(static_cast<std::size_t>(n + 1));
    mpz_class binom = 1;
    for (std::int64_t j = 0; j <= n; ++j) {
        seed.values.push_back(j % 2 == 0 ? binom : mpz_class(-binom));
        binom = binom * (n - j) / (j + 1);
    }
    return seed;
}

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntegerPolynomial::coeff(std::int64_t i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

mpz_class IntegerPolynomial::evaluate(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntegerPolynomial(std::move(out));
}

IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return IntegerPolynomial(std::move(out));
}

IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    return a + b.scaled(-1);
}

IntegerPolynomial IntegerPolynomial::scaled(const mpz_class& c) const {
    std::vector<mpz_class> out = coeffs_;
    for (auto& v : out) v *= c;
    return IntegerPolynomial(std::move(out));
}

std::string IntegerPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::int64_t i = degree(); i >= 0; --i) {
        const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i >= 1) os << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

mpz_class term_product(const GhlParams& params, std::int64_t lo, std::int64_t hi) {
    mpz_class acc = 1;
    for (std::int64_t i = lo; i <= hi; ++i) acc *= static_cast<long>(params.term(i));
    return acc;
}

namespace {

// Works for n >= 0; the public entry point insists on n >= 1.
IntegerPolynomial assemble(const GhlParams& params, const std::vector<mpz_class>& seed) {
    const std::int64_t n = static_cast<std::int64_t>(seed.size()) - 1;
    std::vector<mpz_class> coeffs(seed.size());
    mpz_class tail = 1;  // prod_{i=j+1}^{n}
    for (std::int64_t j = n; j >= 0; --j) {
        coeffs[static_cast<std::size_t>(j)] = seed[static_cast<std::size_t>(j)] * tail;
        tail *= static_cast<long>(params.term(j));
    }
    return IntegerPolynomial(std::move(coeffs));
}

}  // namespace

IntegerPolynomial build_ghl(const GhlParams& params, const SeedCoefficients& seed) {
    params.validate();
    seed.validate(params.n);
    return assemble(params, seed.values);
}

IntegerPolynomial substitute_power(const IntegerPolynomial& poly, std::int64_t delta) {
    if (delta < 1) fail(Errc::invalid_params, "substitution exponent must be positive");
    if (poly.is_zero()) return {};
    std::vector<mpz_class> out(static_cast<std::size_t>(poly.degree() * delta + 1), 0);
    for (std::int64_t l = 0; l <= poly.degree(); ++l) out[static_cast<std::size_t>(l * delta)] = poly[static_cast<std::size_t>(l)];
    return IntegerPolynomial(std::move(out));
}

IntegerPolynomial build_ghl_power(const GhlParams& params, const SeedCoefficients& seed) {
    return substitute_power(build_ghl(params, seed), params.delta);
}

IntegerPolynomial hermite_polynomial(std::int64_t m) {
    if (m < 1) fail(Errc::invalid_params, "Hermite index must be positive");
    // H_{2k}   = (-1)^k 2^k   G_{-1/2}(2x^2)
    // H_{2k+1} = (-1)^k 2^{k+1} x G_{1/2}(2x^2), both with the Laguerre seed.
    const std::int64_t k = m / 2;
    const bool odd = (m % 2) != 0;
    const GhlParams params{.d = 2, .u = odd ? 0 : -1, .alpha = 1, .n = k, .delta = 2};
    std::vector<mpz_class> seed = k == 0 ? std::vector<mpz_class>{1} : laguerre_seed(k).values;
    IntegerPolynomial g = assemble(params, seed);

    std::vector<mpz_class> scaled(g.coeffs().begin(), g.coeffs().end());
    mpz_class pow2 = 1;
    for (auto& c : scaled) {
        c *= pow2;
        pow2 *= 2;
    }
    IntegerPolynomial h = substitute_power(IntegerPolynomial(std::move(scaled)), 2);

    mpz_class factor = 1;
    mpz_mul_2exp(factor.get_mpz_t(), factor.get_mpz_t(), static_cast<mp_bitcnt_t>(odd ? k + 1 : k));
    if (k % 2 != 0) factor = -factor;
    h = h.scaled(factor);
    if (odd) h = h * IntegerPolynomial({0, 1});
    return h;
}

}  // namespace ghl
