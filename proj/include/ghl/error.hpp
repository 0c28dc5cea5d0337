#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghl {

enum class Errc {
    invalid_params,
    length_mismatch,
    not_prime,
    out_of_range,
    precondition,
    degree_too_small,
    prime_divides_leading,
    seed_violation,
    table_too_small,
    family_mismatch,
    polygon_mismatch,
    no_qualifying_prime,
    claim_violation,
    hypothesis,
    consistency,
    parse,
    io,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on the kind.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ghl
