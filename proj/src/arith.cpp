#include "unitfreq/arith.hpp"

#include <cmath>
#include <string>

namespace unitfreq {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kTableCap = 200'000'000;  // spf is uint32; cap well below 2^32

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

PrimeTables build_tables(std::uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("build_tables: limit must be >= 2");
    if (limit > kTableCap) throw std::invalid_argument("build_tables: limit exceeds table cap");

    PrimeTables t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    t.is_prime.assign(limit + 1, false);

    // linear sieve: every n is struck exactly once, by spf[n]
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::uint32_t>(i);
            t.primes.push_back(static_cast<std::uint32_t>(i));
            t.is_prime[i] = true;
        }
        for (std::uint32_t p : t.primes) {
            if (p > t.spf[i] || p > limit / i) break;
            t.spf[i * p] = p;
        }
    }
    return t;
}

Factorization factorize(std::uint64_t n, const PrimeTables& tables) {
    if (n == 0 || n > tables.limit)
        throw std::invalid_argument("factorize: n must satisfy 1 <= n <= tables.limit");
    Factorization f;
    while (n > 1) {
        const std::uint64_t p = tables.spf[n];
        std::uint32_t e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        f.push(p, e);
    }
    return f;
}

int jacobi(std::uint64_t a, std::uint64_t n) {
    if (n == 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
    a %= n;
    int s = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const std::uint64_t r = n & 7;  // (2/n) = -1 iff n = 3,5 (mod 8)
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) s = -s;  // reciprocity flip when both = 3 (mod 4)
        a %= n;
    }
    return n == 1 ? s : 0;
}

int legendre(std::int64_t d, std::uint64_t p) {
    if (p < 3 || (p & 1) == 0 || !is_prime_u64(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    __int128 r = static_cast<__int128>(d) % static_cast<__int128>(p);
    if (r < 0) r += static_cast<__int128>(p);
    const std::uint64_t a = static_cast<std::uint64_t>(r);
    if (a == 0) throw std::invalid_argument("legendre: p divides d");
    return jacobi(a, p);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // witness set deterministic for all 64-bit n
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::optional<int> classify_d(std::uint64_t d) {
    const int residue = static_cast<int>(d & 3);
    if (d < 2 || (residue != 2 && residue != 3)) return std::nullopt;
    std::uint64_t n = d;
    for (std::uint64_t f = 2; f * f <= n; f = (f == 2 ? 3 : f + 2)) {
        if (n % f != 0) continue;
        n /= f;
        if (n % f == 0) return std::nullopt;
    }
    return residue;
}

std::optional<int> classify_d(std::uint64_t d, const PrimeTables& tables) {
    if (d < 2 || d > tables.limit)
        throw std::invalid_argument("classify_d: d must satisfy 2 <= d <= tables.limit");
    const int residue = static_cast<int>(d & 3);
    if (residue != 2 && residue != 3) return std::nullopt;
    std::uint64_t n = d;
    while (n > 1) {
        const std::uint64_t p = tables.spf[n];
        n /= p;
        if (n % p == 0) return std::nullopt;
    }
    return residue;
}

std::vector<std::uint64_t> valid_d_in_range(std::uint64_t d_min, std::uint64_t d_max) {
    if (d_min < 2 || d_max < d_min)
        throw std::invalid_argument("valid_d_in_range: need 2 <= d_min <= d_max");

    const std::uint64_t span = d_max - d_min + 1;
    std::vector<bool> blocked(span, false);

    // strike multiples of p^2 for every prime p <= sqrt(d_max)
    const std::uint64_t root = isqrt_u64(d_max);
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t p = 2; p <= root; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p * p; m <= root; m += p) composite[m] = true;
        const std::uint64_t p2 = p * p;
        std::uint64_t first = ((d_min + p2 - 1) / p2) * p2;
        for (std::uint64_t m = first; m <= d_max; m += p2) blocked[m - d_min] = true;
    }

    std::vector<std::uint64_t> out;
    for (std::uint64_t d = d_min; d <= d_max; ++d) {
        const std::uint64_t r = d & 3;
        if ((r == 2 || r == 3) && !blocked[d - d_min]) out.push_back(d);
    }
    return out;
}

}  // namespace unitfreq
