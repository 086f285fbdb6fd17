#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqf/density.hpp"

#include <boost/multiprecision/cpp_int.hpp>

using namespace sqf;

TEST_CASE("rho agrees with pair enumeration") {
    const std::pair<i64, i64> params[] = {{256, -27}, {1, 1}, {3, 5}, {-2, 9}, {12, 7}};
    for (auto [al, be] : params)
        for (u64 m = 1; m <= 120; ++m) CHECK(rho(m, al, be).count == rho_by_pairs(m, al, be));
    // prime squares further out
    for (u64 p : {11ULL, 13ULL, 29ULL, 47ULL}) CHECK(rho_prime_power(p, 2, 256, -27) == rho_by_pairs(p * p, 256, -27));
}

TEST_CASE("rho is multiplicative on coprime moduli") {
    for (u64 m = 1; m <= 200; m += 7)
        for (u64 n = 1; n <= 200; n += 11) {
            if (gcd(m, n) != 1) continue;
            CHECK(rho(m * n, 256, -27).count == rho(m, 256, -27).count * rho(n, 256, -27).count);
        }
}

TEST_CASE("closed forms for rho(p^2)") {
    CHECK(rho_prime_power(2, 2, 256, -27) == 8);
    CHECK(rho_prime_power(3, 2, 256, -27) == 27);
    CHECK(rho_prime_power(5, 2, 256, -27) == 45);
    for (u64 p : primes_up_to(300)) CHECK(rho_formula_check(p));
    // 2p^2 - p holds whenever p does not divide alpha*beta
    for (u64 p : primes_up_to(60))
        for (auto [al, be] : {std::pair<i64, i64>{1, 1}, {7, -5}, {11, 13}})
            if (uabs(al) % p && uabs(be) % p) CHECK(rho_prime_power(p, 2, al, be) == 2 * p * p - p);
}

TEST_CASE("partial product at 2 and 3 is exactly one third") {
    Fraction f = partial_product(256, -27, {2, 3});
    CHECK(f.num == 1);
    CHECK(f.den == 3);
}

TEST_CASE("euler product for (1,1) up to 100 encloses the brute product") {
    using boost::multiprecision::cpp_rational;
    cpp_rational exact = 1;
    for (u64 p : primes_up_to(100)) {
        u64 r = rho_by_pairs(p * p, 1, 1);
        exact *= 1 - cpp_rational(r, p * p * p * p);
    }
    auto e = euler_product(1, 1, 100);
    double ex = exact.convert_to<double>();
    CHECK(e.finite_part.contains(ex));
    CHECK(e.value.lower <= ex);
    CHECK(e.value.upper >= ex * (1 - 2.0 / 100) - 1e-12);
    CHECK(e.finite_part.width() < 1e-12);
}

TEST_CASE("euler product for (256,-27)") {
    auto e = euler_product(256, -27, 100000, 50);
    CHECK(e.value.width() < 1e-4);
    CHECK(e.value.lower >= 0.28035 - 0.0005);
    CHECK(e.value.upper <= 0.28035 + 0.0005);
    for (auto& f : e.factors) {
        CHECK(f.factor > 0);
        CHECK(f.factor <= 1);
    }
    CHECK(e.factors[0].p == 2);
    CHECK(e.factors[0].factor == doctest::Approx(0.5));
    CHECK(e.factors[1].factor == doctest::Approx(2.0 / 3));
}

TEST_CASE("euler product intervals nest") {
    auto a = euler_product(256, -27, 1000), b = euler_product(256, -27, 10000), c = euler_product(256, -27, 100000);
    CHECK(a.value.contains(b.value));
    CHECK(b.value.contains(c.value));
    auto d = euler_product(6, 35, 50), e = euler_product(6, 35, 500);
    CHECK(d.value.contains(e.value));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(check_density_params(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(check_density_params(4, 8), std::invalid_argument);
    CHECK_NOTHROW(check_density_params(6, 10));
    CHECK_THROWS_AS(euler_product(256, -27, 3), std::invalid_argument);
}
