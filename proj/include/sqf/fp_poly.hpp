#pragma once

#include "sqf/arith.hpp"

#include <vector>

namespace sqf {

// dense polynomial over F_p, coefficients low to high, always trimmed
struct FpPoly {
    u64 p = 0;
    std::vector<u64> c;

    FpPoly() = default;
    FpPoly(u64 p_, std::vector<u64> coeffs);
    static FpPoly x_power(u64 p, unsigned k);

    int degree() const { return int(c.size()) - 1; } // -1 for zero
    bool is_zero() const { return c.empty(); }
    u64 lead() const { return c.empty() ? 0 : c.back(); }
    u64 eval(u64 x) const;
    void trim();
    FpPoly monic() const;
    FpPoly derivative() const;
    bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
};

FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator*(const FpPoly& a, const FpPoly& b);
FpPoly poly_rem(const FpPoly& a, const FpPoly& m);
FpPoly poly_div(const FpPoly& a, const FpPoly& m);
FpPoly poly_gcd(FpPoly a, FpPoly b); // monic
FpPoly powmod_x(u64 e, const FpPoly& m); // x^e mod m

// monic quartic x^4 + c1 x^3 + c2 x^2 + c3 x + c4 over F_p
FpPoly quartic(u64 p, u64 c1, u64 c2, u64 c3, u64 c4);
u64 quartic_discriminant_fp(u64 p, u64 c1, u64 c2, u64 c3, u64 c4);

// degrees of irreducible factors, squarefree quartics only
enum class FactorType { t1111, t112, t13, t22, t4 };
const char* to_string(FactorType t);
FactorType factorization_type(const FpPoly& f);

} // namespace sqf
