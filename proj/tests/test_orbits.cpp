#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqf/circle.hpp"
#include "sqf/orbits.hpp"
#include "sqf/sieve.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <random>

using namespace sqf;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

// det of (4 A0 x - 4B) at integer x by fraction-free elimination
cpp_int det_at(const SymMatrix& B, i64 x) {
    cpp_int M[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M[i][j] = cpp_int((i + j == 3) ? 4 * x : 0) - B.at4(i, j);
    cpp_int prev = 1;
    int sign = 1;
    for (int k = 0; k < 3; ++k) {
        if (M[k][k] == 0) {
            int r = k + 1;
            while (r < 4 && M[r][k] == 0) ++r;
            if (r == 4) return 0;
            for (int j = 0; j < 4; ++j) std::swap(M[k][j], M[r][j]);
            sign = -sign;
        }
        for (int i = k + 1; i < 4; ++i)
            for (int j = k + 1; j < 4; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[3][3];
}

// coefficients of det(A0 x - B) by interpolation through x = 0..4
std::array<cpp_rational, 5> poly_by_interpolation(const SymMatrix& B) {
    std::array<cpp_rational, 5> coef{};
    for (int k = 0; k <= 4; ++k) {
        // Lagrange basis polynomial for node k, expanded
        std::array<cpp_rational, 5> basis{};
        basis[0] = 1;
        cpp_rational denom = 1;
        for (int j = 0; j <= 4; ++j) {
            if (j == k) continue;
            std::array<cpp_rational, 5> nx{};
            for (int d = 0; d < 4; ++d) {
                nx[d + 1] += basis[d];
                nx[d] -= basis[d] * j;
            }
            basis = nx;
            denom *= (k - j);
        }
        cpp_rational yk = cpp_rational(det_at(B, k)) / 256;
        for (int d = 0; d <= 4; ++d) coef[d] += yk * basis[d] / denom;
    }
    return coef;
}

cpp_rational mp(const Rational& r) { return cpp_rational(cpp_int(to_string(r.num)), cpp_int(to_string(r.den))); }

SymMatrix random_matrix(std::mt19937_64& rng, int range) {
    SymMatrix B;
    for (auto& e : B.e4) e = i64(rng() % (2 * range + 1)) - range;
    return B;
}

} // namespace

TEST_CASE("invariant polynomial examples") {
    QuarticPoly f0 = invariant_poly(SymMatrix::zero());
    for (auto& c : f0.c) CHECK(c == Rational(0));
    QuarticPoly fa = invariant_poly(SymMatrix::A0());
    CHECK(fa.c[0] == Rational(-4));
    CHECK(fa.c[1] == Rational(6));
    CHECK(fa.c[2] == Rational(-4));
    CHECK(fa.c[3] == Rational(1));
    QuarticPoly fb = invariant_poly(build_B(1, 2, 3, 4, 5));
    CHECK(fb.str() == "x^4 + x^3 + 2x^2 + 15x + 100");
    CHECK(invariant_poly(build_B(0, 0, 0, 0, 1)).str() == "x^4");
    for (i64 m : {1, 2, 3, 7, 35}) CHECK(build_B(2, -1, 5, 3, m).entry(0, 2) == Rational(m));
}

TEST_CASE("invariant polynomial matches interpolated determinants") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        SymMatrix B = random_matrix(rng, 40);
        auto f = invariant_poly(B);
        auto g = poly_by_interpolation(B);
        CHECK(g[4] == 1);
        for (int k = 1; k <= 4; ++k) CHECK(mp(f.c[k - 1]) == g[4 - k]);
    }
}

TEST_CASE("quartic discriminant") {
    QuarticPoly f;
    f.c = {Rational(0), Rational(0), Rational(2), Rational(3)};
    CHECK(f.discriminant() == Rational(i128(delta(2, 3))));
    for (i64 a = -5; a <= 5; ++a)
        for (i64 b = -5; b <= 5; ++b) {
            f.c = {Rational(0), Rational(0), Rational(a), Rational(b)};
            CHECK(f.discriminant() == Rational(delta(a, b)));
        }
    f.c = {Rational(1, 2), Rational(0), Rational(0), Rational(0)};
    CHECK(f.discriminant() == Rational(0));
}

TEST_CASE("anti-trace and the x^2 coefficient") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100000; ++t) {
        SymMatrix B = random_matrix(rng, 9);
        for (auto& e : B.e4) e *= 4; // integral entries
        auto f = invariant_poly(B);
        bool anti = B.at4(0, 3) == -B.at4(1, 2);
        CHECK((f.c[0] == Rational(0)) == anti);
        if (anti) {
            VSlice v = VSlice::from_matrix(B);
            CHECK(f.c[1] == Rational(q_form(v)));
        }
        if (t % 3 == 0) {
            // force the slice
            B.set4(1, 2, -B.at4(0, 3));
            auto g = invariant_poly(B);
            CHECK(g.c[0] == Rational(0));
            CHECK(g.c[1] == Rational(q_form(VSlice::from_matrix(B))));
        }
    }
}

TEST_CASE("generators preserve A0 and the invariant polynomial") {
    auto gens = gz_generators();
    CHECK(gens.size() >= 4);
    bool has_id = false;
    for (auto& g : gens) {
        CHECK(preserves_A0(g));
        bool id = true;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) id = id && g[i][j] == (i == j);
        has_id |= id;
    }
    CHECK(has_id);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 500; ++t) {
        SymMatrix B = random_matrix(rng, 6);
        auto f = invariant_poly(B);
        SymMatrix C = B;
        int len = int(rng() % 12) + 1;
        for (int k = 0; k < len; ++k) C = act(gens[rng() % gens.size()], C);
        CHECK(invariant_poly(C) == f);
    }
}

TEST_CASE("flag preserving generators keep W00 and |Q|") {
    auto gens = gz_generators();
    std::mt19937_64 rng(8);
    int used = 0;
    for (auto& g : gens) {
        if (!lower_triangular(g)) continue;
        ++used;
        for (int t = 0; t < 200; ++t) {
            SymMatrix B = random_matrix(rng, 20);
            B.set4(0, 0, 0);
            B.set4(0, 1, 0);
            SymMatrix C = act(g, B);
            CHECK(C.at4(0, 0) == 0);
            CHECK(C.at4(0, 1) == 0);
            Rational q1 = q_invariant(B), q2 = q_invariant(C);
            CHECK((q1 == q2 || q1 == Rational(-q2.num, q2.den)));
        }
    }
    CHECK(used >= 4);
    CHECK(q_invariant(SymMatrix::zero()) == Rational(0));
    SymMatrix bad;
    bad.set4(0, 0, 4);
    CHECK_THROWS_AS(q_invariant(bad), DomainError);
}

TEST_CASE("sigma_m") {
    auto e1 = sigma_m(3, 5, 1);
    CHECK(e1.shift == 0);
    CHECK(e1.matrix == build_B(0, 0, 3, 5, 1));
    // smallest weak pair for m = 5 from the W enumeration
    auto weak = enumerate_W(3, 5, DivisibilityKind::weak);
    REQUIRE(!weak.empty());
    std::sort(weak.begin(), weak.end(), [](const PairAB& x, const PairAB& y) { return x.height() < y.height(); });
    auto e = sigma_m(weak[0].a, weak[0].b, 5);
    CHECK(e.matrix.entry(0, 2) == Rational(5));
    for (auto& pr : weak) {
        auto s = sigma_m(pr.a, pr.b, 5);
        QuarticPoly want;
        want.c = {Rational(0), Rational(0), Rational(pr.a), Rational(pr.b)};
        CHECK(invariant_poly(s.matrix) == want);
        CHECK(s.divisibility_ok);
        CHECK(q_invariant(s.matrix) == Rational(5));
    }
    for (auto& pr : enumerate_W(3, 7, DivisibilityKind::weak)) {
        auto s = sigma_m(pr.a, pr.b, 7);
        CHECK(invariant_poly(s.matrix).c[2] == Rational(pr.a));
    }
    CHECK_THROWS_AS(sigma_m(5, 5, 5), std::invalid_argument); // strong, not weak
    CHECK_THROWS_AS(sigma_m(1, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(sigma_m(1, 1, 4), std::invalid_argument);
}
