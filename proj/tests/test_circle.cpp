#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqf/circle.hpp"
#include "sqf/special.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <random>

using namespace sqf;

namespace {

VSlice slice(std::initializer_list<std::pair<VIdx, i64>> kv) {
    VSlice v;
    for (auto [k, x] : kv) v.b[k] = x;
    return v;
}

const VSlice kB0a = slice({{v11, 1}});
const VSlice kB0b = slice({{v12, 1}, {v34, 1}, {v22, 1}, {v33, -2}});
const VSlice kB0c = slice({{v14, 1}, {v11, 1}, {v44, -2}});

// r^-9 sum over all of (Z/r)^9, the plain definition
std::complex<double> cq_inner_brute(i64 a, u64 r) {
    u64 total = 1;
    for (int i = 0; i < 9; ++i) total *= r;
    std::complex<double> s = 0;
    VSlice B;
    for (u64 idx = 0; idx < total; ++idx) {
        u64 t = idx;
        for (int k = 0; k < 9; ++k) {
            B.b[k] = i64(t % r);
            t /= r;
        }
        s += expi(double(mod(i128(a) * q_form(B), r)) / double(r));
    }
    return s / double(total);
}

} // namespace

TEST_CASE("quadratic form and its polarization") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 5000; ++t) {
        VSlice x, y, s;
        for (int k = 0; k < 9; ++k) {
            x.b[k] = i64(rng() % 41) - 20;
            y.b[k] = i64(rng() % 41) - 20;
            s.b[k] = x.b[k] + y.b[k];
        }
        CHECK(q_form(s) == q_form(x) + q_form(y) + bilinear(x, y));
        CHECK(bilinear(x, x) == 2 * q_form(x));
        CHECK(VSlice::from_matrix(x.to_matrix()).b == x.b);
    }
    CHECK(q_form(kB0a) == 0);
    CHECK(q_form(kB0b) == 0);
    CHECK(q_form(kB0c) == 0);
    CHECK(q_form(slice({{v14, 1}})) == -2);
}

TEST_CASE("hyperbolic and Gauss sums") {
    for (u64 r = 1; r <= 40; ++r)
        for (i64 a = -5; a <= 5; ++a) {
            CHECK(hyperbolic_sum(a, r) == i64(r * gcd(u64(mod(a, r)), r)));
            // Gauss sum against a direct double sum
            std::complex<double> s = 0;
            for (u64 x = 0; x < r; ++x) s += expi(double(a) * double(x * x) / double(r));
            auto g = gauss_sum(a, r);
            CHECK(std::abs(g.value - s) < 1e-9);
        }
    // |G(1, p)| = sqrt(p)
    for (u64 p : {3ULL, 5ULL, 7ULL, 101ULL}) CHECK(std::abs(gauss_sum(1, p).value) == doctest::Approx(std::sqrt(double(p))));
}

TEST_CASE("C_q by three methods") {
    CHECK(Cq(1, CqMethod::brute) == doctest::Approx(1.0));
    CHECK(Cq(1, CqMethod::ramanujan) == doctest::Approx(1.0));
    for (u64 r = 2; r <= 6; ++r) {
        double b = Cq(r, CqMethod::brute);
        CHECK(Cq(r, CqMethod::factored) == doctest::Approx(b).epsilon(1e-9));
        CHECK(Cq(r, CqMethod::ramanujan) == doctest::Approx(b).epsilon(1e-9));
    }
    for (u64 r = 7; r <= 200; ++r) {
        auto f = Cq_value(r, CqMethod::factored), g = Cq_value(r, CqMethod::ramanujan);
        CHECK(std::fabs(f.value - g.value) <= f.error + g.error + 1e-14);
    }
    CHECK_THROWS_AS(Cq(7, CqMethod::brute), BudgetExceeded);
    CHECK_THROWS_AS(Cq(0, CqMethod::ramanujan), std::invalid_argument);
}

TEST_CASE("C_q is multiplicative and bounded") {
    for (u64 r = 1; r <= 30; ++r)
        for (u64 s = 1; r * s <= 30; ++s) {
            if (gcd(r, s) != 1) continue;
            CHECK(Cq(r * s, CqMethod::ramanujan) ==
                  doctest::Approx(Cq(r, CqMethod::ramanujan) * Cq(s, CqMethod::ramanujan)).epsilon(1e-9));
        }
    for (u64 r = 1; r <= 2000; ++r) CHECK(std::fabs(Cq(r, CqMethod::ramanujan)) <= 4 * std::pow(double(r), -3.5) + 1e-15);
}

TEST_CASE("C_q inner sum") {
    for (u64 r : {2ULL, 3ULL, 4ULL, 5ULL})
        for (i64 a = 1; a < i64(r); ++a) {
            if (gcd(u64(a), r) != 1) continue;
            CHECK(std::abs(cq_inner(a, r) - cq_inner_brute(a, r)) < 1e-9);
        }
}

TEST_CASE("singular series") {
    auto S = singular_series(1e-9);
    CHECK(S.width() < 1e-8);
    CHECK(S.lower > 1.25);
    CHECK(S.upper < 1.26);
    auto P = singular_series_product(1e-9);
    CHECK(P.lower <= S.upper);
    CHECK(S.lower <= P.upper);
    // the p = 2 factor is irregular; odd primes give the zeta shape
    double odd = 1;
    for (u64 p : primes_up_to(101)) {
        auto f = singular_series_p(p, 1e-13);
        CHECK(f.lower > 0);
        if (p > 2) odd *= f.mid();
    }
    CHECK(odd > 1);
    CHECK(std::fabs(S.mid() - 1) < 4 * (gsl_sf_zeta(3.5) - 1));
    CHECK_THROWS_AS(singular_series_p(9, 1e-9), std::invalid_argument);
}

TEST_CASE("C_q arm against the literal sum") {
    struct Case {
        u64 m;
        VSlice B0;
    };
    const Case cases[] = {{1, VSlice{}}, {3, kB0a}, {3, kB0b}, {3, kB0c}, {5, kB0b}, {5, kB0c}};
    for (auto& c : cases)
        for (u64 r : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL})
            for (i64 a = 1; a <= i64(r); ++a) {
                if (gcd(u64(a) % r, r) != 1) continue;
                auto arm = cq_arm(a, r, c.m, c.B0);
                auto direct = cq_arm_direct(a, r, c.m, c.B0);
                CHECK(std::abs(arm.value - direct) < 1e-12);
                if (arm.structural_zero) CHECK(std::abs(direct) < 1e-12);
                if (gcd(r, c.m) == 1) {
                    // reduces to the plain inner sum at a times the inverse of m, up to a phase
                    i64 ab = i64(mulmod(u64(mod(a, r)), r == 1 ? 0 : invmod(c.m % r, r), r));
                    double want = std::pow(double(c.m), -9.0) * std::abs(cq_inner(r == 1 ? 0 : ab, r));
                    CHECK(std::abs(arm.value) == doctest::Approx(want).epsilon(1e-9));
                }
            }
    // arms with gcd(r, m) > 1 vanish for these base points
    for (u64 r : {3ULL, 6ULL, 9ULL, 12ULL})
        for (i64 a : {1, 5, 7})
            if (gcd(u64(a), r) == 1) CHECK(std::abs(cq_arm(a, r, 3, kB0c).value) < 1e-12);
    CHECK_THROWS_AS(cq_arm(1, 5, 4, kB0a), std::invalid_argument);
    CHECK_THROWS_AS(cq_arm(3, 6, 1, VSlice{}), std::invalid_argument);
    CHECK_THROWS_AS(cq_arm(1, 5, 3, slice({{v14, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(cq_arm(1, 5, 3, slice({{v11, 3}})), std::invalid_argument);
}

TEST_CASE("Fresnel integrals and special functions") {
    auto f = fresnel(1.0);
    CHECK(f.C == doctest::Approx(0.7798934004).epsilon(1e-9));
    CHECK(f.S == doctest::Approx(0.4382591474).epsilon(1e-9));
    auto g = fresnel(10.0);
    CHECK(g.C == doctest::Approx(0.4998986942).epsilon(1e-8));
    CHECK(g.S == doctest::Approx(0.4681699785).epsilon(1e-8));
    CHECK(fresnel(-1.0).C == doctest::Approx(-0.7798934004).epsilon(1e-9));
    CHECK(si_ratio(0) == 1.0);
    CHECK(si_ratio(1.0) == doctest::Approx(0.9460830704).epsilon(1e-9));
    // closed form against a midpoint rule
    for (double al : {0.0, 0.01, -0.3, 1.7})
        for (double be : {0.0, 0.2, -0.45}) {
            std::complex<double> s = 0;
            int n = 200000;
            double lo = -1.5, hi = 2.5, h = (hi - lo) / n;
            for (int k = 0; k < n; ++k) {
                double x = lo + (k + 0.5) * h;
                s += expi(al * x * x + be * x + 0.1) * h;
            }
            CHECK(std::abs(quadratic_phase_integral(al, be, 0.1, lo, hi) - s) < 1e-6);
        }
    CHECK(std::abs(square_phase_integral(0) - 1.0) < 1e-14);
}

TEST_CASE("exponential sums track integrals when the derivative is small") {
    CHECK(exp_sum_vs_integral_check({0, 0, 0}, 0, 100) <= 1.0 + 1e-9);
    CHECK(exp_sum_vs_integral_check({1.0 / 8000, 0, 0}, -1000, 1000) <= 10);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 100; ++t) {
        double lo = 100 * U(rng), len = 500 * (U(rng) + 1.01);
        double hi = lo + len;
        double alpha = 0.2 * U(rng) / (std::fabs(lo) + std::fabs(hi) + 1);
        double beta = 0.09 * U(rng);
        QuadraticPhase f{alpha, beta, U(rng)};
        REQUIRE(std::fabs(f.derivative(lo)) <= 0.5);
        REQUIRE(std::fabs(f.derivative(hi)) <= 0.5);
        CHECK(exp_sum_vs_integral_check(f, lo, hi) <= 10);
    }
    CHECK_THROWS_AS(exp_sum_vs_integral_check({0.01, 0, 0}, 0, 100), std::invalid_argument);
}

TEST_CASE("singular integral") {
    auto r1 = singular_integral(BoxSpec::standard(1), IntegralMethod::slab);
    CHECK(r1.value.mid() == doctest::Approx(512 * 0.2933485).epsilon(1e-5));
    CHECK(r1.value.width() < 1e-3 * r1.value.mid());
    auto r2 = singular_integral(BoxSpec::standard(2), IntegralMethod::slab);
    CHECK(r2.value.mid() / r1.value.mid() == doctest::Approx(128).epsilon(1e-5));

    IntegralOptions o;
    o.samples = 2000000;
    o.seed = 5;
    auto mc = singular_integral(BoxSpec::standard(1), IntegralMethod::montecarlo, o);
    CHECK(mc.value.lower <= r1.value.upper);
    CHECK(r1.value.lower <= mc.value.upper);

    BoxSpec odd = BoxSpec::standard(1);
    odd.half[v11] *= 2;
    odd.half[v44] *= 0.5;
    odd.half[v13] *= 3;
    odd.half[v24] /= 3;
    CHECK(odd.satisfies_products());
    auto s2 = singular_integral(odd, IntegralMethod::slab);
    auto m2 = singular_integral(odd, IntegralMethod::montecarlo, o);
    CHECK(m2.value.lower <= s2.value.upper);
    CHECK(s2.value.lower <= m2.value.upper);
    CHECK(BoxSpec::standard(3).volume() == doctest::Approx(BoxSpec::standard(1).volume() * std::pow(3.0, 9) * 16 / 16));
}

TEST_CASE("sieve weights stay in band") {
    auto t = selberg_quantities(7, 60, 1e4, 30);
    CHECK(!t.rows.empty());
    CHECK(t.pass_fraction >= 0.8);
    for (auto& row : t.rows) {
        CHECK(row.g > 0);
        CHECK(row.h == doctest::Approx(row.g / (1 - row.g)));
        CHECK(row.dp == count_dp(row.p, DpMethod::orbit_formula));
    }
    CHECK(t.H > 1);
    CHECK(t.terms > 1);
    auto t2 = selberg_quantities(7, 60, 1e6, 30);
    CHECK(t2.H >= t.H);
    CHECK_THROWS_AS(selberg_quantities(5, 60, 1e4, 30), std::invalid_argument);
}

TEST_CASE("sampled q = 0 points are mostly distinguished") {
    auto w = integer_widths(BoxSpec::standard(30));
    auto rows = distinguished_fraction(w, {5, 7, 11}, 3000, 9);
    REQUIRE(rows.size() == 3);
    for (auto& r : rows) {
        CHECK(r.sampled == 3000);
        CHECK(r.nondegenerate <= r.sampled);
        CHECK(r.distinguished <= r.nondegenerate);
        CHECK(r.nondegenerate > r.sampled / 2);
        CHECK(r.distinguished > r.nondegenerate / 2);
    }
}
