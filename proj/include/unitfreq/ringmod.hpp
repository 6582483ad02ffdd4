// Arithmetic in Z[sqrt(d)]/(p): coordinate pairs x + y*sqrt(d) with both
// coordinates reduced mod p. Elements are bare pairs; the (p, d mod p)
// context is created once per task and passed explicitly.
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace unitfreq {

struct RingElem {
    std::uint64_t x = 1;
    std::uint64_t y = 0;
};

struct RingCtx {
    std::uint64_t p;  // odd prime < 2^32
    std::uint64_t d;  // d mod p, nonzero
};

inline RingCtx make_ring_ctx(std::uint64_t p, std::uint64_t d) {
    if (p < 3 || (p & 1) == 0 || p > 0xFFFFFFFFull)
        throw std::invalid_argument("ring context: p must be an odd prime below 2^32");
    const std::uint64_t dp = d % p;
    if (dp == 0) throw std::invalid_argument("ring context: p divides d");
    return {p, dp};
}

// (x1 + y1*s)(x2 + y2*s) = (x1*x2 + d*y1*y2) + (x1*y2 + y1*x2)*s, s^2 = d.
// Triple product d*y1*y2 < 2^96; double-width accumulation, single reduction.
inline RingElem mul(const RingElem a, const RingElem b, const RingCtx c) {
    const unsigned __int128 xr =
        static_cast<unsigned __int128>(a.x) * b.x + static_cast<unsigned __int128>(c.d) * a.y * b.y;
    const unsigned __int128 yr =
        static_cast<unsigned __int128>(a.x) * b.y + static_cast<unsigned __int128>(a.y) * b.x;
    return {static_cast<std::uint64_t>(xr % c.p), static_cast<std::uint64_t>(yr % c.p)};
}

// base^e by left-to-right binary exponentiation; pow(base, 0) = 1.
inline RingElem pow(const RingElem base, std::uint64_t e, const RingCtx c) {
    if (e == 0) return {1, 0};
    RingElem r = base;
    for (int i = 62 - std::countl_zero(e); i >= 0; --i) {
        r = mul(r, r, c);
        if ((e >> i) & 1) r = mul(r, base, c);
    }
    return r;
}

// N(x + y*sqrt(d)) = x^2 - d*y^2 mod p
inline std::uint64_t ring_norm(const RingElem a, const RingCtx c) {
    const std::uint64_t x2 = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.x) * a.x % c.p);
    const std::uint64_t dy2 = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(c.d) * a.y % c.p * a.y % c.p);
    return (x2 + c.p - dy2) % c.p;
}

}  // namespace unitfreq
