// Integer arithmetic substrate: sieves, factorization, Jacobi/Legendre symbols,
// squarefree classification of discriminant candidates.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace unitfreq {

struct PrimeFactor {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;
};

// Prime factorization of a 64-bit value. 2*3*5*...*53 > 2^64, so at most
// 15 distinct primes; fixed capacity keeps the hot path allocation-free.
struct Factorization {
    static constexpr int max_factors = 15;
    std::array<PrimeFactor, max_factors> factors{};
    int count = 0;

    const PrimeFactor* begin() const { return factors.data(); }
    const PrimeFactor* end() const { return factors.data() + count; }
    int size() const { return count; }
    bool empty() const { return count == 0; }
    const PrimeFactor& operator[](int i) const { return factors[static_cast<std::size_t>(i)]; }

    void push(std::uint64_t p, std::uint32_t e) {
        if (count >= max_factors) throw std::logic_error("factorization overflow");
        factors[static_cast<std::size_t>(count++)] = {p, e};
    }
};

// Sieve tables over [0, limit]: primality bitset plus smallest-prime-factor
// array. Immutable after construction; safe to share across threads.
struct PrimeTables {
    std::uint64_t limit = 0;
    std::vector<bool> is_prime;          // is_prime[n] iff n prime
    std::vector<std::uint32_t> spf;      // least prime factor; spf[n] == n iff n prime
    std::vector<std::uint32_t> primes;   // all primes <= limit, ascending
};

// Linear sieve. limit in [2, 2*10^8]; anything else is invalid-argument.
PrimeTables build_tables(std::uint64_t limit);

// Complete factorization of n, 1 <= n <= tables.limit; n = 1 gives the empty list.
Factorization factorize(std::uint64_t n, const PrimeTables& tables);

// Jacobi symbol (a/n) for odd n >= 1, by binary quadratic reciprocity.
int jacobi(std::uint64_t a, std::uint64_t n);

// Legendre symbol (d/p) for an odd prime p not dividing d; result is +1 or -1.
// Validates p (deterministic Miller-Rabin) and the p-does-not-divide-d precondition.
int legendre(std::int64_t d, std::uint64_t p);

// Deterministic Miller-Rabin for 64-bit n.
bool is_prime_u64(std::uint64_t n);

// floor(sqrt(n))
std::uint64_t isqrt_u64(std::uint64_t n);

// Residue class (2 or 3) when d is squarefree and d = 2,3 (mod 4); nullopt otherwise.
// Trial-division variant is total for every d; the table variant walks the spf
// chain and requires d <= tables.limit.
std::optional<int> classify_d(std::uint64_t d);
std::optional<int> classify_d(std::uint64_t d, const PrimeTables& tables);

// All valid d in [d_min, d_max], ascending, via a squarefree sieve over the range.
std::vector<std::uint64_t> valid_d_in_range(std::uint64_t d_min, std::uint64_t d_max);

}  // namespace unitfreq
