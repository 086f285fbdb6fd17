#include "sqf/fp_poly.hpp"

#include <stdexcept>

namespace sqf {

FpPoly::FpPoly(u64 p_, std::vector<u64> coeffs) : p(p_), c(std::move(coeffs)) {
    for (auto& v : c) v %= p;
    trim();
}

FpPoly FpPoly::x_power(u64 p, unsigned k) {
    std::vector<u64> c(k + 1, 0);
    c[k] = 1 % p;
    return FpPoly(p, c);
}

void FpPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

u64 FpPoly::eval(u64 x) const {
    u64 r = 0;
    for (size_t i = c.size(); i-- > 0;) r = (mulmod(r, x, p) + c[i]) % p;
    return r;
}

FpPoly FpPoly::monic() const {
    if (c.empty()) return *this;
    u64 inv = invmod(lead(), p);
    FpPoly r = *this;
    for (auto& v : r.c) v = mulmod(v, inv, p);
    return r;
}

FpPoly FpPoly::derivative() const {
    std::vector<u64> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(mulmod(c[i], i % p, p));
    return FpPoly(p, d);
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + b.c[i]) % a.p;
    return FpPoly(a.p, r);
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + a.p - b.c[i]) % a.p;
    return FpPoly(a.p, r);
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p, {});
    std::vector<u64> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = (r[i + j] + mulmod(a.c[i], b.c[j], a.p)) % a.p;
    return FpPoly(a.p, r);
}

static void divmod(const FpPoly& a, const FpPoly& m, FpPoly& q, FpPoly& r) {
    if (m.is_zero()) throw std::invalid_argument("polynomial division by zero");
    u64 p = a.p;
    r = a;
    int dm = m.degree();
    std::vector<u64> qc(std::max(0, a.degree() - dm + 1), 0);
    u64 inv = invmod(m.lead(), p);
    while (!r.is_zero() && r.degree() >= dm) {
        int s = r.degree() - dm;
        u64 f = mulmod(r.lead(), inv, p);
        qc[s] = f;
        for (int i = 0; i <= dm; ++i) r.c[s + i] = (r.c[s + i] + p - mulmod(f, m.c[i], p)) % p;
        r.trim();
    }
    q = FpPoly(p, qc);
}

FpPoly poly_rem(const FpPoly& a, const FpPoly& m) {
    FpPoly q, r;
    divmod(a, m, q, r);
    return r;
}

FpPoly poly_div(const FpPoly& a, const FpPoly& m) {
    FpPoly q, r;
    divmod(a, m, q, r);
    return q;
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly powmod_x(u64 e, const FpPoly& m) {
    u64 p = m.p;
    FpPoly result(p, {1});
    FpPoly base = poly_rem(FpPoly::x_power(p, 1), m);
    result = poly_rem(result, m);
    while (e) {
        if (e & 1) result = poly_rem(result * base, m);
        base = poly_rem(base * base, m);
        e >>= 1;
    }
    return result;
}

FpPoly quartic(u64 p, u64 c1, u64 c2, u64 c3, u64 c4) { return FpPoly(p, {c4, c3, c2, c1, 1}); }

u64 quartic_discriminant_fp(u64 p, u64 c1, u64 c2, u64 c3, u64 c4) {
    // general quartic discriminant with leading coefficient 1
    i128 b = c1 % p, c = c2 % p, d = c3 % p, e = c4 % p;
    i128 P = p;
    auto m = [&](i128 x) { return ((x % P) + P) % P; };
    i128 t = 0;
    t = m(t + 256 * m(e * e % P * e));
    t = m(t - 192 * m(b * d % P * e % P * e));
    t = m(t - 128 * m(c * c % P * e % P * e));
    t = m(t + 144 * m(c * d % P * d % P * e));
    t = m(t - 27 * m(d * d % P * d % P * d));
    t = m(t + 144 * m(b * b % P * c % P * e % P * e));
    t = m(t - 6 * m(b * b % P * d % P * d % P * e));
    t = m(t - 80 * m(b * c % P * c % P * d % P * e));
    t = m(t + 18 * m(b * c % P * d % P * d % P * d));
    t = m(t + 16 * m(c * c % P * c % P * c % P * e));
    t = m(t - 4 * m(c * c % P * c % P * d % P * d));
    t = m(t - 27 * m(b * b % P * b % P * b % P * e % P * e));
    t = m(t + 18 * m(b * b % P * b % P * c % P * d % P * e));
    t = m(t - 4 * m(b * b % P * b % P * d % P * d % P * d));
    t = m(t - 4 * m(b * b % P * c % P * c % P * c % P * e));
    t = m(t + m(b * b % P * c % P * c % P * d % P * d));
    return u64(t);
}

const char* to_string(FactorType t) {
    switch (t) {
    case FactorType::t1111: return "1111";
    case FactorType::t112: return "112";
    case FactorType::t13: return "13";
    case FactorType::t22: return "22";
    case FactorType::t4: return "4";
    }
    return "?";
}

FactorType factorization_type(const FpPoly& f) {
    if (f.degree() != 4) throw std::invalid_argument("factorization_type: degree 4 expected");
    u64 p = f.p;
    FpPoly fm = f.monic();
    FpPoly x = FpPoly::x_power(p, 1);
    FpPoly xp = powmod_x(p, fm);
    int r1 = poly_gcd(fm, xp - x).degree();
    FpPoly xp2 = powmod_x(p * p, fm);
    int n2 = (poly_gcd(fm, xp2 - x).degree() - r1) / 2;
    if (r1 == 4) return FactorType::t1111;
    if (r1 == 2 && n2 == 1) return FactorType::t112;
    if (r1 == 1 && n2 == 0) return FactorType::t13;
    if (r1 == 0 && n2 == 2) return FactorType::t22;
    if (r1 == 0 && n2 == 0) return FactorType::t4;
    throw DomainError("factorization_type: quartic is not squarefree");
}

} // namespace sqf
