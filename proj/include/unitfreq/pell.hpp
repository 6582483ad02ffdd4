// Continued-fraction machinery for sqrt(d): period, norm sign, and the
// fundamental Pell solution both as exact big integers and reduced mod p.
#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "unitfreq/arith.hpp"

namespace unitfreq {

struct FieldParams {
    std::uint64_t d = 0;           // squarefree, d = 2,3 (mod 4)
    std::uint64_t sqrt_floor = 0;  // floor(sqrt(d))
};

// Validates d (squarefree, = 2,3 mod 4); throws invalid_argument otherwise.
FieldParams make_field(std::uint64_t d);
// Skips the squarefree check; for d values already filtered by a range sieve.
FieldParams make_field_unchecked(std::uint64_t d);

// One full period of the continued fraction of sqrt(d): quotients a_0 .. a_l
// where l is the period length.
struct CFExpansion {
    std::vector<std::uint64_t> quotients;
    std::uint32_t period = 0;

    int norm_sign() const { return (period & 1) ? -1 : +1; }  // N(eps) = (-1)^l
};

CFExpansion cf_expand(const FieldParams& f);

// Fundamental unit eps = x1 + y1*sqrt(d), the minimal positive Pell solution;
// x1^2 - d*y1^2 = norm_sign exactly.
struct UnitExact {
    mpz_class x1;
    mpz_class y1;
    int norm_sign = 0;
};

UnitExact fundamental_unit_exact(const FieldParams& f);

// Fundamental unit with coordinates reduced mod p (32-bit arithmetic path).
struct UnitResidue {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t p = 0;
    std::uint64_t d_mod_p = 0;
    int norm_sign = 0;
};

// Convergent recurrence with every step reduced mod p. Precondition: p is an
// odd prime below 2^32 with p not dividing d (the prime part is the caller's
// contract on this cached-expansion path).
UnitResidue unit_residue_from_cf(const CFExpansion& cf, std::uint64_t d, std::uint64_t p);

// Full pipeline for one (d, p): validates p, expands, reduces.
UnitResidue fundamental_unit_mod_p(const FieldParams& f, std::uint64_t p);

}  // namespace unitfreq
