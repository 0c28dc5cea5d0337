#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ghl {

/// Deterministic primality for the full 64-bit range (Miller-Rabin with the
/// first twelve prime bases).
bool is_prime(std::uint64_t m) noexcept;

/// Primes p <= limit in ascending order (plain Eratosthenes; meant for small
/// limits such as trial-division bases and criterion prime lists).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Prime factorization by trial division, ascending primes with exponents.
/// Intended for the small terms alpha + (u+i)d; fine up to roughly 1e12.
std::vector<std::pair<std::uint64_t, int>> factor_trial(std::uint64_t m);

/// Largest prime factor with P(1) = 1. m must be nonzero.
std::uint64_t gpf_trial(std::uint64_t m);

}  // namespace ghl
