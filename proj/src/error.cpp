#include "ghl/error.hpp"

namespace ghl {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_params: return "invalid_params";
        case Errc::length_mismatch: return "length_mismatch";
        case Errc::not_prime: return "not_prime";
        case Errc::out_of_range: return "out_of_range";
        case Errc::precondition: return "precondition";
        case Errc::degree_too_small: return "degree_too_small";
        case Errc::prime_divides_leading: return "prime_divides_leading";
        case Errc::seed_violation: return "seed_violation";
        case Errc::table_too_small: return "table_too_small";
        case Errc::family_mismatch: return "family_mismatch";
        case Errc::polygon_mismatch: return "polygon_mismatch";
        case Errc::no_qualifying_prime: return "no_qualifying_prime";
        case Errc::claim_violation: return "claim_violation";
        case Errc::hypothesis: return "hypothesis";
        case Errc::consistency: return "consistency";
        case Errc::parse: return "parse";
        case Errc::io: return "io";
    }
    return "unknown";
}

}  // namespace ghl
