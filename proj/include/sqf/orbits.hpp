#pragma once

#include "sqf/arith.hpp"
#include "sqf/fp_poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace sqf {

struct Rational {
    i128 num = 0, den = 1;
    Rational() = default;
    Rational(i128 n, i128 d = 1);
    bool is_integer() const { return den == 1; }
    double to_double() const { return double(num) / double(den); }
    std::string str() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// 4x4 symmetric, entries stored as 4*b_ij in the order 11 12 13 14 22 23 24 33 34 44
struct SymMatrix {
    std::array<i64, 10> e4{};

    static int index(int i, int j); // 0-based i, j
    i64 at4(int i, int j) const { return e4[index(i, j)]; }
    void set4(int i, int j, i64 v) { e4[index(i, j)] = v; }
    Rational entry(int i, int j) const { return Rational(at4(i, j), 4); }
    bool integral() const;
    static SymMatrix zero() { return {}; }
    static SymMatrix A0();
    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix scaled(i64 k) const;
    bool operator==(const SymMatrix& o) const { return e4 == o.e4; }
};

struct QuarticPoly {
    std::array<Rational, 4> c; // c1..c4 of x^4 + c1 x^3 + c2 x^2 + c3 x + c4
    Rational discriminant() const;
    double height() const;
    std::string str() const;
    bool operator==(const QuarticPoly& o) const { return c == o.c; }
};

QuarticPoly invariant_poly(const SymMatrix& B);
SymMatrix build_B(i64 c1, i64 c2, i64 c3, i64 c4, i64 m);
Rational q_invariant(const SymMatrix& B);

struct Embedding {
    SymMatrix matrix;
    u64 m = 1;
    i64 shift = 0;                 // r, the CRT-combined double root
    std::array<i128, 4> shifted{}; // c1', c2', c3', c4' of f(x - r)... stored for checks
    bool divisibility_ok = false;  // p | c3', p^2 | c4' for each p | m
};
Embedding sigma_m(i64 a, i64 b, u64 m);

using IntMatrix4 = std::array<std::array<i64, 4>, 4>;
std::vector<IntMatrix4> gz_generators();
bool preserves_A0(const IntMatrix4& g);
bool lower_triangular(const IntMatrix4& g);
SymMatrix act(const IntMatrix4& g, const SymMatrix& B); // g B g^t

// over F_p, p odd
struct FpMatrix {
    u64 p = 3;
    std::array<u64, 10> e{}; // same order as SymMatrix

    static FpMatrix from(const SymMatrix& B, u64 p);
    u64 at(int i, int j) const { return e[SymMatrix::index(i, j)]; }
};

// coefficients c1..c4 of det(A0 x - B) over F_p
std::array<u64, 4> invariant_poly_fp(const FpMatrix& B);
u64 discriminant_fp(const FpMatrix& B);
bool is_soluble_fp(const FpMatrix& B);
bool is_distinguished_fp(const FpMatrix& B);
// the plain double projective scan over (v, w), used as oracle
bool is_distinguished_scan(const FpMatrix& B);
bool is_soluble_scan(const FpMatrix& B);

struct EvenFactorization {
    int rational_pairs = 0;  // {g, h} with g, h over F_p
    int conjugate_pairs = 0; // {g, frob(g)} with g over F_{p^2} only
    bool has_root = false;
    int j2() const { return 1 + rational_pairs + conjugate_pairs; }
    // 1 with a root or a conjugate pair, else 2; the brute census disagrees for types 22 and 4
    int n_dist_rule() const { return (has_root || conjugate_pairs > 0) ? 1 : 2; }
};
// direct enumeration of monic quadratic divisors over F_{p^2}
EvenFactorization enumerate_even_factorizations(const FpPoly& f);

struct TypeData {
    FactorType type;
    int n_dist;
    int j2;
};
// frozen table, regenerated in tests from enumerate_even_factorizations
const std::array<TypeData, 5>& factor_type_table();
int even_factorizations(const FpPoly& f);
int n_distinguished(const FpPoly& f);

enum class DpMethod { brute, orbit_formula };
u64 group_order_fp(u64 p); // p^2 (p^2-1)^2

struct DpCensus {
    u64 p = 0;
    u64 dp = 0;          // not distinguished, f in U
    u64 in_U = 0;        // #B with f_B in U
    u64 polys_in_U = 0;  // #U(F_p)
    u64 fiber_min = 0, fiber_max = 0;
    u64 insoluble = 0;   // should stay 0
    // per FactorType: polynomials in U and non-distinguished B over them
    std::array<u64, 5> type_polys{}, type_nondist{};
};
DpCensus dp_census_brute(u64 p, u64 max_p = 5, int threads = 0);
u64 count_dp(u64 p, DpMethod method, u64 max_brute_p = 5);

} // namespace sqf
