// Order finding for one (d, p) pair: n(p) = min{v : eps^v in O_p}, i.e. the
// least power of the fundamental unit whose sqrt(d)-coordinate vanishes mod p,
// together with the quotient q = q0/n(p).
#pragma once

#include <cstdint>

#include "unitfreq/arith.hpp"
#include "unitfreq/pell.hpp"
#include "unitfreq/ringmod.hpp"

namespace unitfreq {

// The four (norm, Legendre) cases:
//   j=1: N=+1,(d/p)=+1   j=2: N=+1,(d/p)=-1   j=3: N=-1,(d/p)=+1   j=4: N=-1,(d/p)=-1
struct CaseKey {
    int j = 0;
};

CaseKey case_key(int norm_sign, int ls);
int case_norm(CaseKey key);  // +1 for j in {1,2}, -1 otherwise
int case_ls(CaseKey key);    // +1 for j in {1,3}, -1 otherwise

struct OrderResult {
    std::uint64_t d = 0;
    std::uint64_t p = 0;
    CaseKey key;
    std::uint64_t q0 = 0;  // the proven multiple of n(p): (p-ls)/2 for N=+1, p-ls for N=-1
    std::uint64_t n = 0;   // n(p)
    std::uint64_t q = 0;   // q0 / n
};

// q0 is factored with the tables (so tables.limit >= p+1 is required); for each
// prime factor the largest exponent b with y(eps^(q0/pi^b)) = 0 mod p is found
// by ascending b with early exit, one fast exponentiation per test.
OrderResult order_and_quotient(const UnitResidue& unit, std::uint64_t d, const PrimeTables& tables);

// Independent oracle: single multiplications eps, eps^2, ... until the
// y-coordinate vanishes. cap >= p+1 required; exceeding it means a broken
// precondition or an arithmetic bug and raises.
std::uint64_t naive_order(const UnitResidue& unit, std::uint64_t cap);

}  // namespace unitfreq
