#pragma once

#include "sqf/arith.hpp"
#include "sqf/interval.hpp"

#include <vector>

namespace sqf {

struct LocalDensity {
    u64 modulus = 1;
    u64 count = 1;
    i64 alpha = 1, beta = 1;
};

// largest prime power handled by the residue histogram
inline constexpr u64 kMaxHistogramModulus = u64(1) << 26;

// #{(a,b) mod m : m | beta a^4 + alpha b^3}, multiplicative over prime powers
LocalDensity rho(u64 m, i64 alpha, i64 beta);
u64 rho_prime_power(u64 p, int e, i64 alpha, i64 beta);
// full pair enumeration, the slow oracle
u64 rho_by_pairs(u64 m, i64 alpha, i64 beta);
// p^3 for p in {2,3}, 2p^2 - p otherwise
u64 rho_square_closed_form(u64 p);
bool rho_formula_check(u64 p);

struct Fraction {
    i128 num = 0, den = 1;
};
// exact prod (1 - rho(p^2)/p^4) over the given primes
Fraction partial_product(i64 alpha, i64 beta, const std::vector<u64>& primes);

struct DensityFactor {
    u64 p;
    u64 rho_p2;
    double factor;
    bool closed_form; // 2p^2 - p used since p does not divide alpha*beta
};

struct EulerProduct {
    IntervalValue value;
    IntervalValue finite_part;
    u64 p_max = 0;
    u64 primes_used = 0;
    std::vector<DensityFactor> factors; // p <= table_pmax only
};

void check_density_params(i64 alpha, i64 beta);
EulerProduct euler_product(i64 alpha, i64 beta, u64 p_max, u64 table_pmax = 0);

} // namespace sqf
