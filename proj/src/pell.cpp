#include "unitfreq/pell.hpp"

#include <stdexcept>
#include <string>

namespace unitfreq {

namespace {

constexpr std::uint64_t kPeriodCap = 10'000'000;

[[noreturn]] void corrupt_state(std::uint64_t d, std::uint64_t k) {
    throw std::runtime_error("cf_expand: corrupted P,Q state at d=" + std::to_string(d) +
                             " step=" + std::to_string(k));
}

}  // namespace

FieldParams make_field(std::uint64_t d) {
    if (!classify_d(d))
        throw std::invalid_argument("d must be positive, squarefree and congruent to 2 or 3 mod 4 (got " +
                                    std::to_string(d) + ")");
    return {d, isqrt_u64(d)};
}

FieldParams make_field_unchecked(std::uint64_t d) {
    return {d, isqrt_u64(d)};
}

// Standard P,Q recurrence for sqrt(d):
//   P_0 = 0, Q_0 = 1, a_k = floor((P_k + a_0)/Q_k),
//   P_{k+1} = a_k Q_k - P_k, Q_{k+1} = (d - P_{k+1}^2)/Q_k.
// The period ends at the first return of (P, Q) to its k = 1 state.
CFExpansion cf_expand(const FieldParams& f) {
    const std::uint64_t d = f.d;
    const std::uint64_t a0 = f.sqrt_floor;

    CFExpansion cf;
    cf.quotients.push_back(a0);

    std::uint64_t P = a0;            // P_1
    std::uint64_t Q = d - a0 * a0;   // Q_1 >= 1 since d is not a square
    const std::uint64_t P1 = P, Q1 = Q;

    for (std::uint64_t k = 1;; ++k) {
        if (k > kPeriodCap)
            throw std::runtime_error("cf_expand: period cap exceeded at d=" + std::to_string(d));
        // in the periodic part 1 <= P <= a0 and 1 <= Q <= 2*a0 + 1
        if (P == 0 || P > a0 || Q == 0 || Q > 2 * a0 + 1) corrupt_state(d, k);

        const std::uint64_t a = (P + a0) / Q;
        cf.quotients.push_back(a);

        const std::uint64_t P_next = a * Q - P;
        if (P_next == 0 || P_next > a0) corrupt_state(d, k);
        const std::uint64_t num = d - P_next * P_next;
        if (num % Q != 0) corrupt_state(d, k);
        const std::uint64_t Q_next = num / Q;

        P = P_next;
        Q = Q_next;
        if (P == P1 && Q == Q1) {
            cf.period = static_cast<std::uint32_t>(k);
            break;
        }
    }
    return cf;
}

// (x1, y1) is the convergent h_{l-1}/k_{l-1} of [a_0; a_1, ...] where l is the
// period, with h_{-1} = 1, h_{-2} = 0, k_{-1} = 0, k_{-2} = 1.
UnitExact fundamental_unit_exact(const FieldParams& f) {
    const CFExpansion cf = cf_expand(f);

    mpz_class h = 1, h2 = 0;  // h_{k-1}, h_{k-2}
    mpz_class k = 0, k2 = 1;
    for (std::uint32_t i = 0; i < cf.period; ++i) {
        const unsigned long a = static_cast<unsigned long>(cf.quotients[i]);
        mpz_class hn = a * h + h2;
        mpz_class kn = a * k + k2;
        h2 = h;
        h = hn;
        k2 = k;
        k = kn;
    }

    UnitExact u{h, k, cf.norm_sign()};
    const mpz_class lhs = u.x1 * u.x1 - mpz_class(static_cast<unsigned long>(f.d)) * u.y1 * u.y1;
    if (lhs != u.norm_sign)
        throw std::runtime_error("fundamental_unit_exact: Pell identity violated at d=" +
                                 std::to_string(f.d));
    return u;
}

UnitResidue unit_residue_from_cf(const CFExpansion& cf, std::uint64_t d, std::uint64_t p) {
    if (p < 3 || (p & 1) == 0 || p > 0xFFFFFFFFull)
        throw std::invalid_argument("unit_residue_from_cf: p must be an odd prime below 2^32");
    const std::uint64_t dp = d % p;
    if (dp == 0) throw std::invalid_argument("unit_residue_from_cf: p divides d");

    // same convergent recurrence, coordinates reduced mod p at every step;
    // a < p and h,k < p keep a*h + h2 < p^2 + p < 2^64
    std::uint64_t h = 1 % p, h2 = 0;
    std::uint64_t k = 0, k2 = 1 % p;
    for (std::uint32_t i = 0; i < cf.period; ++i) {
        const std::uint64_t a = cf.quotients[i] % p;
        const std::uint64_t hn = (a * h + h2) % p;
        const std::uint64_t kn = (a * k + k2) % p;
        h2 = h;
        h = hn;
        k2 = k;
        k = kn;
    }
    return {h, k, p, dp, cf.norm_sign()};
}

UnitResidue fundamental_unit_mod_p(const FieldParams& f, std::uint64_t p) {
    if (p < 3 || (p & 1) == 0 || !is_prime_u64(p))
        throw std::invalid_argument("fundamental_unit_mod_p: p must be an odd prime");
    if (f.d % p == 0) throw std::invalid_argument("fundamental_unit_mod_p: p divides d");
    return unit_residue_from_cf(cf_expand(f), f.d, p);
}

}  // namespace unitfreq
