#include "ghl/primes.hpp"

#include <array>

#include "ghl/error.hpp"

namespace ghl {
namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t m) noexcept {
    if (m < 2) return false;
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (m % p == 0) return m == p;
    }
    std::uint64_t d = m - 1;
    int r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    for (std::uint64_t a : bases) {
        std::uint64_t x = pow_mod(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::pair<std::uint64_t, int>> factor_trial(std::uint64_t m) {
    if (m == 0) fail(Errc::invalid_params, "cannot factor 0");
    std::vector<std::pair<std::uint64_t, int>> out;
    auto strip = [&](std::uint64_t p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    // 6k +- 1 wheel
    for (std::uint64_t p = 5; p <= m / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::uint64_t gpf_trial(std::uint64_t m) {
    auto f = factor_trial(m);
    return f.empty() ? 1 : f.back().first;
}

}  // namespace ghl
