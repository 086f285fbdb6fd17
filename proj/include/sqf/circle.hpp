#pragma once

#include "sqf/arith.hpp"
#include "sqf/interval.hpp"
#include "sqf/orbits.hpp"

#include <array>
#include <complex>
#include <vector>

namespace sqf {

// b23 = -b14 slice, order b11 b12 b13 b14 b22 b24 b33 b34 b44
struct VSlice {
    std::array<i64, 9> b{};
    SymMatrix to_matrix() const;
    static VSlice from_matrix(const SymMatrix& B); // needs b23 = -b14 and integral entries
};

enum VIdx { v11 = 0, v12, v13, v14, v22, v24, v33, v34, v44 };

i128 q_form(const VSlice& B);
i128 bilinear(const VSlice& B1, const VSlice& B2);

// sum_{x,y mod r} e(a x y / r) = r gcd(a, r)
i64 hyperbolic_sum(i64 a, u64 r);

struct ComplexSum {
    std::complex<double> value;
    double error = 0; // bound on accumulated round-off
};
ComplexSum gauss_sum(i64 a, u64 r);

enum class CqMethod { brute, factored, ramanujan };
const char* to_string(CqMethod m);
struct CqValue {
    double value = 0;
    double error = 0;
};
CqValue Cq_value(u64 r, CqMethod method);
double Cq(u64 r, CqMethod method);
// r^-9 sum_{B mod r} e(a q(B)/r), a unit mod r
std::complex<double> cq_inner(i64 a, u64 r);

IntervalValue singular_series(double tolerance);
IntervalValue singular_series_p(u64 p, double tolerance);
// prod over p of the local factors, cross-check for singular_series
IntervalValue singular_series_product(double tolerance, u64 p_max = 2000);

struct ArmValue {
    std::complex<double> value;
    bool structural_zero = false;
    double error = 0;
};
// r^-9 m^-9 sum over B = B0 + m Y, Y mod r... evaluated per coordinate
ArmValue cq_arm(i64 a, u64 r, u64 m, const VSlice& B0);
// literal sum over all B mod rm with B = B0 mod m, small cases only
std::complex<double> cq_arm_direct(i64 a, u64 r, u64 m, const VSlice& B0);

struct BoxSpec {
    std::array<double, 9> half{}; // same order as VSlice
    double X = 1, c1 = 1, c2 = 1;
    static BoxSpec standard(double X, double c2 = 1.0);
    // X14 = c2 X and the four pair products equal c2^2 X^2
    bool satisfies_products(double rel_tol = 1e-12) const;
    bool satisfies_widths(double delta) const;
    double volume() const;
    BoxSpec scaled(double k) const;
};

enum class IntegralMethod { slab, montecarlo };
struct IntegralOptions {
    std::array<double, 3> eps_fractions{1.0, 0.5, 0.25}; // times X^2 * 1e-3
    double rel_tol = 1e-9;
    u64 samples = 10000000;
    u64 seed = 12345;
    double z = 4.0;
    int threads = 0;
};
struct IntegralResult {
    IntervalValue value;
    double zero_width_value = 0; // slab: the eps -> 0 Fourier integral itself
    std::array<double, 3> slab_values{};
    double tail_bound = 0;
    u64 hits = 0;
};
IntegralResult singular_integral(const BoxSpec& box, IntegralMethod method, const IntegralOptions& opt = {});

// integer half-widths of the box
std::array<i64, 9> integer_widths(const BoxSpec& box);
u128 lattice_count(const BoxSpec& box, u64 m, const VSlice& B0, u64 budget_fft = u64(1) << 26);
u128 lattice_count(const std::array<i64, 9>& widths, u64 m, const VSlice& B0, u64 budget_fft = u64(1) << 26);
u128 lattice_count_nested(const std::array<i64, 9>& widths, u64 m, const VSlice& B0);

struct MainTermComparison {
    u64 m = 1;
    VSlice B0;
    u128 count = 0;
    double predicted = 0;
    double ratio = 0;
};
MainTermComparison lattice_main_term(const BoxSpec& box, u64 m, const VSlice& B0, const IntervalValue& S_inf,
                                     const IntervalValue& S_q);

struct SelbergRow {
    u64 p;
    u64 dp;
    IntervalValue Sp;
    double g, h;
    bool in_band;
};
struct SelbergTable {
    std::vector<SelbergRow> rows;
    double D = 0, z = 0;
    double H = 0;
    u64 terms = 0; // squarefree m < sqrt(D) built from the primes
    double pass_fraction = 0;
};
SelbergTable selberg_quantities(u64 p_lo, u64 p_hi, double D, double z);

struct QuadraticPhase {
    double alpha = 0, beta = 0, gamma = 0;
    double derivative(double x) const { return 2 * alpha * x + beta; }
};
// |sum_{lo <= n <= hi} e(f(n)) - int_lo^hi e(f)|, needs |f'| <= 1/2
double exp_sum_vs_integral_check(const QuadraticPhase& f, double lo, double hi);

struct DistinguishedSample {
    u64 p;
    u64 sampled = 0;
    u64 nondegenerate = 0; // discriminant nonzero mod p
    u64 distinguished = 0;
};
// random q = 0 lattice points of the box, tested mod p
std::vector<DistinguishedSample> distinguished_fraction(const std::array<i64, 9>& widths, const std::vector<u64>& primes,
                                                        u64 samples, u64 seed);

} // namespace sqf
