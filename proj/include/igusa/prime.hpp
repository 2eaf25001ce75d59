#pragma once

#include "igusa/errors.hpp"
#include "igusa/numeric.hpp"

namespace igusa {

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Global arithmetic context: the prime p plus desk-scale ceilings.
struct PrimeContext {
    Int p;
    long long enum_limit = 10'000'000; // max points any enumeration may visit
    int max_vars = 4;

    explicit PrimeContext(Int prime, long long limit = 10'000'000, int vars = 4)
        : p(std::move(prime)), enum_limit(limit), max_vars(vars) {
        if (!is_prime(p))
            throw ValidationError("p = " + p.str() + " is not prime");
        if (enum_limit <= 0)
            throw ValidationError("enum_limit must be positive");
    }
};

} // namespace igusa
