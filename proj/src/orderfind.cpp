#include "unitfreq/orderfind.hpp"

#include <stdexcept>
#include <string>

namespace unitfreq {

CaseKey case_key(int norm_sign, int ls) {
    if (norm_sign > 0) return {ls > 0 ? 1 : 2};
    return {ls > 0 ? 3 : 4};
}

int case_norm(CaseKey key) {
    return (key.j == 1 || key.j == 2) ? +1 : -1;
}

int case_ls(CaseKey key) {
    return (key.j == 1 || key.j == 3) ? +1 : -1;
}

OrderResult order_and_quotient(const UnitResidue& unit, std::uint64_t d, const PrimeTables& tables) {
    const std::uint64_t p = unit.p;
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("order_and_quotient: p must be an odd prime");
    if (tables.limit < p + 1)
        throw std::invalid_argument("order_and_quotient: tables.limit must be >= p+1");
    if (!tables.is_prime[p]) throw std::invalid_argument("order_and_quotient: p is not prime");
    if (unit.d_mod_p == 0 || d % p != unit.d_mod_p)
        throw std::invalid_argument("order_and_quotient: p divides d or residue mismatch");

    const int ls = jacobi(unit.d_mod_p, p);
    const std::uint64_t q0 = (unit.norm_sign > 0) ? (ls > 0 ? (p - 1) / 2 : (p + 1) / 2)
                                                  : (ls > 0 ? p - 1 : p + 1);

    const RingCtx ctx{p, unit.d_mod_p};
    const RingElem base{unit.x, unit.y};

    // n(p) divides q0, so eps^q0 must already lie in O_p
    if (pow(base, q0, ctx).y != 0)
        throw std::runtime_error("order_and_quotient: eps^q0 not in O_p (d=" + std::to_string(d) +
                                 " p=" + std::to_string(p) + ")");

    // strip from q0 the largest power of each prime factor that keeps the
    // y-coordinate divisible by p; the candidate set is downward closed, so
    // ascend b and stop at the first failure
    std::uint64_t nu = 1;
    for (const PrimeFactor& f : factorize(q0, tables)) {
        std::uint64_t pe = f.prime;
        std::uint32_t b = 0;
        while (b < f.exponent && pow(base, q0 / pe, ctx).y == 0) {
            ++b;
            pe *= f.prime;
        }
        nu *= pe / f.prime;  // pe == f.prime^(b+1)
    }

    return {d, p, case_key(unit.norm_sign, ls), q0, q0 / nu, nu};
}

std::uint64_t naive_order(const UnitResidue& unit, std::uint64_t cap) {
    if (cap < unit.p + 1) throw std::invalid_argument("naive_order: cap must be >= p+1");
    const RingCtx ctx{unit.p, unit.d_mod_p};
    const RingElem base{unit.x, unit.y};
    RingElem z = base;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (z.y == 0) return k;
        z = mul(z, base, ctx);
    }
    throw std::runtime_error("naive_order: no exponent up to cap=" + std::to_string(cap) +
                             " (p=" + std::to_string(unit.p) + ")");
}

}  // namespace unitfreq
