#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqf/arith.hpp"
#include "sqf/interval.hpp"

#include <random>

using namespace sqf;

namespace {
// plain trial division, independent of factorize
std::vector<u64> trial_primes(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}
} // namespace

TEST_CASE("gcd and modular helpers") {
    CHECK(gcd(12, 18) == 6);
    CHECK(gcd(0, 7) == 7);
    CHECK(gcd_signed(-12, 18) == 6);
    CHECK(mod(-1, 5) == 4);
    CHECK(mod(i128(-10), 5) == 0);
    CHECK(powmod(3, 4, 7) == 4);
    CHECK(invmod(3, 7) == 5);
    CHECK_THROWS_AS(invmod(6, 9), std::invalid_argument);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        u64 m = rng() % 1000000 + 2, a = rng() % m;
        if (gcd(a, m) != 1) continue;
        CHECK(mulmod(a, invmod(a, m), m) == 1 % m);
    }
}

TEST_CASE("integer roots") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(u128(1) << 100) == (u64(1) << 50));
    CHECK(icbrt(26) == 2);
    CHECK(icbrt(27) == 3);
    CHECK(is_perfect_square(144));
    CHECK_FALSE(is_perfect_square(145));
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) {
        u128 n = (u128(rng()) << 40) ^ rng();
        u64 r = isqrt(n);
        CHECK(u128(r) * r <= n);
        CHECK(u128(r + 1) * (r + 1) > n);
    }
}

TEST_CASE("primes and factorization agree with trial division") {
    auto ps = primes_up_to(10000);
    CHECK(ps.size() == 1229);
    for (u64 n = 1; n < 20000; ++n) CHECK(is_prime(n) == (n > 1 && trial_primes(n).size() == 1));
    CHECK(is_prime(1000000007));
    CHECK_FALSE(is_prime(u64(4294967291ULL) * 3));
    for (u64 n = 2; n < 5000; ++n) {
        auto t = trial_primes(n);
        std::vector<u64> f;
        for (auto& pe : factorize(n))
            for (int k = 0; k < pe.e; ++k) f.push_back(pe.p);
        CHECK(f == t);
        bool sf = std::adjacent_find(t.begin(), t.end()) == t.end();
        CHECK(is_squarefree_int(n) == sf);
        CHECK(mobius(n) == (sf ? (t.size() % 2 ? -1 : 1) : 0));
    }
    auto mu = mobius_table(5000);
    for (u64 n = 1; n <= 5000; ++n) CHECK(mu[n] == mobius(n));
    CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("odd divisor test") {
    for (u64 p : {3ULL, 5ULL, 7ULL, 101ULL}) {
        OddDivisor d(p);
        for (u64 n = 0; n < 3000; ++n) {
            CHECK(d.divides(n) == (n % p == 0));
            if (n % p == 0) CHECK(d.quotient(n) == n / p);
        }
    }
}

TEST_CASE("checked arithmetic throws on overflow") {
    i128 big = i128(1) << 100;
    CHECK_THROWS_AS(checked_mul(big, big), std::range_error);
    CHECK(checked_pow(3, 4) == 81);
    CHECK(to_string(i128(-12345)) == "-12345");
    CHECK(to_string(u128(1) << 64) == "18446744073709551616");
}

TEST_CASE("interval arithmetic encloses") {
    IntervalValue a = IntervalValue::point(0.1), b = IntervalValue::point(0.2);
    auto s = a + b;
    CHECK(s.contains(0.30000000000000004));
    CHECK(s.lower < s.upper);
    auto q = IntervalValue::around(1, 0.5) / IntervalValue::around(2, 0.5);
    CHECK(q.contains(0.5 / 2.5));
    CHECK(q.contains(1.5 / 1.5));
    CHECK((a * b).contains(0.02));
    CHECK((b - a).contains(0.1));
}
