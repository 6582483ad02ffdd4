#include <doctest.h>

#include <cstdint>
#include <vector>

#include "unitfreq/pell.hpp"
#include "unitfreq/ringmod.hpp"

using namespace unitfreq;

TEST_SUITE("pell") {

TEST_CASE("make_field accepts valid d and fills sqrt_floor") {
    CHECK(make_field(2).sqrt_floor == 1);
    CHECK(make_field(3).sqrt_floor == 1);
    CHECK(make_field(10).sqrt_floor == 3);
    CHECK(make_field(9998).sqrt_floor == 99);
}

TEST_CASE("make_field rejects invalid d") {
    CHECK_THROWS_AS(make_field(0), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(4), std::invalid_argument);   // square
    CHECK_THROWS_AS(make_field(5), std::invalid_argument);   // 1 mod 4
    CHECK_THROWS_AS(make_field(12), std::invalid_argument);  // 0 mod 4
    CHECK_THROWS_AS(make_field(18), std::invalid_argument);  // 2 mod 4 but 9 | 18
}

TEST_CASE("cf_expand worked examples") {
    const CFExpansion c2 = cf_expand(make_field(2));  // sqrt(2) = [1; 2...]
    CHECK(c2.period == 1);
    CHECK(c2.quotients == std::vector<std::uint64_t>{1, 2});
    CHECK(c2.norm_sign() == -1);

    const CFExpansion c3 = cf_expand(make_field(3));  // sqrt(3) = [1; 1, 2...]
    CHECK(c3.period == 2);
    CHECK(c3.quotients == std::vector<std::uint64_t>{1, 1, 2});
    CHECK(c3.norm_sign() == +1);

    const CFExpansion c7 = cf_expand(make_field(7));  // sqrt(7) = [2; 1, 1, 1, 4...]
    CHECK(c7.period == 4);
    CHECK(c7.quotients == std::vector<std::uint64_t>{2, 1, 1, 1, 4});
    CHECK(c7.norm_sign() == +1);

    const CFExpansion c10 = cf_expand(make_field(10));  // sqrt(10) = [3; 6...]
    CHECK(c10.period == 1);
    CHECK(c10.quotients == std::vector<std::uint64_t>{3, 6});
    CHECK(c10.norm_sign() == -1);
}

TEST_CASE("cf_expand structural invariants for all valid d <= 1000") {
    for (std::uint64_t d : valid_d_in_range(2, 1000)) {
        const FieldParams f = make_field(d);
        const CFExpansion cf = cf_expand(f);
        REQUIRE(cf.period >= 1);
        REQUIRE(cf.quotients.size() == cf.period + 1);
        CHECK(cf.quotients[0] == f.sqrt_floor);
        // last quotient of the period is 2*a0, the inner part is a palindrome
        CHECK(cf.quotients[cf.period] == 2 * f.sqrt_floor);
        for (std::uint32_t i = 1, j = cf.period - 1; i < j; ++i, --j)
            CHECK(cf.quotients[i] == cf.quotients[j]);
        for (std::uint64_t a : cf.quotients) CHECK(a >= 1);
    }
}

TEST_CASE("fundamental_unit_exact hand values") {
    const UnitExact u2 = fundamental_unit_exact(make_field(2));
    CHECK(u2.x1 == 1);
    CHECK(u2.y1 == 1);
    CHECK(u2.norm_sign == -1);

    const UnitExact u3 = fundamental_unit_exact(make_field(3));
    CHECK(u3.x1 == 2);
    CHECK(u3.y1 == 1);
    CHECK(u3.norm_sign == +1);

    const UnitExact u7 = fundamental_unit_exact(make_field(7));
    CHECK(u7.x1 == 8);
    CHECK(u7.y1 == 3);
    CHECK(u7.norm_sign == +1);

    const UnitExact u10 = fundamental_unit_exact(make_field(10));
    CHECK(u10.x1 == 3);
    CHECK(u10.y1 == 1);
    CHECK(u10.norm_sign == -1);

    const UnitExact u19 = fundamental_unit_exact(make_field(19));
    CHECK(u19.x1 == 170);
    CHECK(u19.y1 == 39);
    CHECK(u19.norm_sign == +1);

    const UnitExact u46 = fundamental_unit_exact(make_field(46));
    CHECK(u46.x1 == 24335);
    CHECK(u46.y1 == 3588);
    CHECK(u46.norm_sign == +1);
}

TEST_CASE("fundamental_unit_exact satisfies the Pell identity, d <= 2000") {
    for (std::uint64_t d : valid_d_in_range(2, 2000)) {
        const UnitExact u = fundamental_unit_exact(make_field(d));
        CHECK(u.x1 >= 1);
        CHECK(u.y1 >= 1);
        const mpz_class lhs = u.x1 * u.x1 - mpz_class(static_cast<unsigned long>(d)) * u.y1 * u.y1;
        CHECK(lhs == u.norm_sign);
        CHECK(u.norm_sign == cf_expand(make_field(d)).norm_sign());
    }
}

TEST_CASE("unit_residue_from_cf worked examples") {
    const CFExpansion c7 = cf_expand(make_field(7));
    const UnitResidue r3 = unit_residue_from_cf(c7, 7, 3);  // (8, 3) mod 3
    CHECK(r3.x == 2);
    CHECK(r3.y == 0);
    CHECK(r3.p == 3);
    CHECK(r3.d_mod_p == 1);
    CHECK(r3.norm_sign == +1);

    const UnitResidue r5 = unit_residue_from_cf(c7, 7, 5);  // (8, 3) mod 5
    CHECK(r5.x == 3);
    CHECK(r5.y == 3);
    CHECK(r5.norm_sign == +1);
}

TEST_CASE("unit residues match the exact unit mod p") {
    const std::vector<std::uint64_t> primes = {3, 5, 7, 11, 13, 101, 4294967291ull};  // last < 2^32
    for (std::uint64_t d : valid_d_in_range(2, 300)) {
        const FieldParams f = make_field(d);
        const UnitExact u = fundamental_unit_exact(f);
        const CFExpansion cf = cf_expand(f);
        for (std::uint64_t p : primes) {
            if (d % p == 0) continue;
            const UnitResidue r = unit_residue_from_cf(cf, d, p);
            CHECK(r.x == mpz_class(u.x1 % p).get_ui());
            CHECK(r.y == mpz_class(u.y1 % p).get_ui());
            CHECK(r.d_mod_p == d % p);
            CHECK(r.norm_sign == u.norm_sign);
        }
    }
}

TEST_CASE("unit residue has the unit norm in the ring") {
    for (std::uint64_t d : valid_d_in_range(2, 200)) {
        for (std::uint64_t p : {5ull, 13ull, 97ull}) {
            if (d % p == 0) continue;
            const UnitResidue r = fundamental_unit_mod_p(make_field(d), p);
            const RingCtx ctx = make_ring_ctx(p, d);
            const std::uint64_t want = r.norm_sign > 0 ? 1 : p - 1;
            CHECK(ring_norm({r.x, r.y}, ctx) == want);
        }
    }
}

TEST_CASE("fundamental_unit_mod_p validates p") {
    const FieldParams f = make_field(7);
    CHECK_THROWS_AS(fundamental_unit_mod_p(f, 2), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit_mod_p(f, 9), std::invalid_argument);   // composite
    CHECK_THROWS_AS(fundamental_unit_mod_p(f, 0), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit_mod_p(make_field(6), 3), std::invalid_argument);  // p | d
}

}  // TEST_SUITE
