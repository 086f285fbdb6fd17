#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqf/fp_poly.hpp"
#include "sqf/orbits.hpp"

#include <random>

using namespace sqf;

namespace {

// factor type by counting roots and monic irreducible quadratic divisors directly
FactorType type_by_search(const FpPoly& f) {
    u64 p = f.p;
    int roots = 0;
    for (u64 x = 0; x < p; ++x) roots += f.eval(x) == 0;
    int irr_quads = 0;
    for (u64 b = 0; b < p; ++b)
        for (u64 c = 0; c < p; ++c) {
            FpPoly q(p, {c, b, 1});
            bool irr = true;
            for (u64 x = 0; x < p; ++x) irr = irr && q.eval(x) != 0;
            if (irr && poly_rem(f, q).is_zero()) ++irr_quads;
        }
    if (roots == 4) return FactorType::t1111;
    if (roots == 2) return FactorType::t112;
    if (roots == 1) return FactorType::t13;
    return irr_quads == 2 ? FactorType::t22 : FactorType::t4;
}

u64 disc_by_resultant_free_formula(u64 p, u64 c1, u64 c2, u64 c3, u64 c4) {
    // product of squared root differences is not available; use the classical quartic formula
    auto m = [p](i128 v) { return u64(mod(v, p)); };
    i128 a = 1, b = c1, c = c2, d = c3, e = c4;
    i128 D = 256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e +
             144 * a * a * c * d * d * e - 27 * a * a * d * d * d * d + 144 * a * b * b * c * e * e -
             6 * a * b * b * d * d * e - 80 * a * b * c * c * d * e + 18 * a * b * c * d * d * d +
             16 * a * c * c * c * c * e - 4 * a * c * c * c * d * d - 27 * b * b * b * b * e * e +
             18 * b * b * b * c * d * e - 4 * b * b * b * d * d * d - 4 * b * b * c * c * c * e +
             b * b * c * c * d * d;
    return m(D);
}

FpMatrix random_fp(std::mt19937_64& rng, u64 p) {
    FpMatrix B;
    B.p = p;
    for (auto& e : B.e) e = rng() % p;
    return B;
}

} // namespace

TEST_CASE("polynomial arithmetic over F_p") {
    FpPoly a(7, {1, 2, 3}), b(7, {6, 1});
    CHECK((a + b) == FpPoly(7, {0, 3, 3}));
    CHECK((a - a).is_zero());
    CHECK((a * b) == FpPoly(7, {6, 6 * 2 % 7 + 1, (3 * 6 + 2) % 7, 3}));
    FpPoly q = poly_div(a * b, b), r = poly_rem(a * b, b);
    CHECK(q == a);
    CHECK(r.is_zero());
    CHECK(poly_gcd(a * b, b * b) == b.monic());
    CHECK(FpPoly(5, {0, 0, 0, 0, 0}).degree() == -1);
    FpPoly m(11, {3, 0, 1, 0, 0, 1});
    // x^e mod m against repeated multiplication
    FpPoly acc(11, {1});
    for (u64 e = 0; e < 40; ++e) {
        CHECK(powmod_x(e, m) == poly_rem(acc, m));
        acc = acc * FpPoly(11, {0, 1});
    }
    CHECK(FpPoly(5, {1, 2, 3, 4}).derivative() == FpPoly(5, {2, 1, 2}));
}

TEST_CASE("factorization type agrees with direct search") {
    for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL})
        for (u64 c1 = 0; c1 < p; ++c1)
            for (u64 c2 = 0; c2 < p; c2 += (p > 5 ? 2 : 1))
                for (u64 c3 = 0; c3 < p; ++c3)
                    for (u64 c4 = 0; c4 < p; ++c4) {
                        u64 d = quartic_discriminant_fp(p, c1, c2, c3, c4);
                        CHECK(d == disc_by_resultant_free_formula(p, c1, c2, c3, c4));
                        if (d == 0) continue;
                        FpPoly f = quartic(p, c1, c2, c3, c4);
                        CHECK(factorization_type(f) == type_by_search(f));
                    }
}

TEST_CASE("finite field invariants match exact ones") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 2000; ++t) {
        SymMatrix B;
        for (auto& e : B.e4) e = 4 * (i64(rng() % 41) - 20);
        auto f = invariant_poly(B);
        for (u64 p : {3ULL, 5ULL, 13ULL}) {
            FpMatrix Bp = FpMatrix::from(B, p);
            auto fp = invariant_poly_fp(Bp);
            for (int k = 0; k < 4; ++k) CHECK(fp[k] == u64(mod(f.c[k].num, p)));
            Rational D = f.discriminant();
            CHECK(discriminant_fp(Bp) == u64(mod(D.num, p)));
        }
    }
}

TEST_CASE("solubility and distinguishedness agree with the scans") {
    for (u64 p : {3ULL, 5ULL}) {
        std::mt19937_64 rng(p);
        int tested = 0;
        for (int t = 0; t < (p == 3 ? 10000 : 3000); ++t) {
            FpMatrix B = random_fp(rng, p);
            if (discriminant_fp(B) == 0) {
                CHECK_THROWS_AS(is_distinguished_fp(B), DomainError);
                continue;
            }
            ++tested;
            CHECK(is_soluble_fp(B) == is_soluble_scan(B));
            CHECK(is_distinguished_fp(B) == is_distinguished_scan(B));
        }
        CHECK(tested > 100);
    }
}

TEST_CASE("matrices with b11 = b12 = 0 are distinguished") {
    std::mt19937_64 rng(22);
    for (u64 p : {3ULL, 5ULL, 7ULL})
        for (int t = 0; t < 2000; ++t) {
            FpMatrix B = random_fp(rng, p);
            B.e[SymMatrix::index(0, 0)] = 0;
            B.e[SymMatrix::index(0, 1)] = 0;
            if (discriminant_fp(B) == 0) continue;
            CHECK(is_distinguished_fp(B));
        }
}

TEST_CASE("even factorization counts re-derive the table") {
    for (u64 p : {3ULL, 5ULL, 7ULL}) {
        std::array<int, 5> seen_j2{-1, -1, -1, -1, -1};
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b)
                for (u64 c = 0; c < p; ++c) {
                    if (quartic_discriminant_fp(p, 0, a, b, c) == 0) continue;
                    FpPoly f = quartic(p, 0, a, b, c);
                    int j2 = enumerate_even_factorizations(f).j2();
                    int t = int(factorization_type(f));
                    if (seen_j2[t] < 0) seen_j2[t] = j2;
                    CHECK(seen_j2[t] == j2);
                    CHECK(even_factorizations(f) == j2);
                }
        for (const auto& row : factor_type_table()) {
            int s = seen_j2[int(row.type)];
            if (s >= 0) CHECK(row.j2 == s);
        }
    }
    for (const auto& row : factor_type_table()) CHECK(row.n_dist >= 1);
}

TEST_CASE("census re-derives distinguished orbit counts") {
    for (u64 p : {3ULL, 5ULL}) {
        auto c = dp_census_brute(p);
        u64 G = group_order_fp(p);
        CHECK(c.insoluble == 0);
        CHECK(c.fiber_min > 0);
        for (const auto& row : factor_type_table()) {
            int t = int(row.type);
            if (c.type_polys[t] == 0) continue;
            // each polynomial contributes G / j2 * (j2 - n_dist) non-distinguished matrices
            u64 per = c.type_nondist[t] / c.type_polys[t];
            CHECK(c.type_nondist[t] % c.type_polys[t] == 0);
            CHECK(per * u64(row.j2) % G == 0);
            CHECK(row.j2 - int(per * u64(row.j2) / G) == row.n_dist);
        }
        CHECK(c.dp == count_dp(p, DpMethod::orbit_formula));
    }
    CHECK(count_dp(3, DpMethod::brute) == 576);
    CHECK(count_dp(5, DpMethod::orbit_formula) == 46800);
    CHECK(count_dp(7, DpMethod::orbit_formula) == 846720);
    CHECK_THROWS_AS(count_dp(7, DpMethod::brute), BudgetExceeded);
    CHECK_THROWS_AS(count_dp(4, DpMethod::orbit_formula), std::invalid_argument);
}

TEST_CASE("d_p over p^8 settles near its limit") {
    for (u64 p : primes_up_to(200)) {
        if (p < 7) continue;
        double r = double(count_dp(p, DpMethod::orbit_formula)) / std::pow(double(p), 8);
        CHECK(r > 0.1);
        CHECK(r < 0.35);
    }
}
