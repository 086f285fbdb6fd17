#include "sqf/circle.hpp"
#include "sqf/special.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <numeric>

namespace sqf {

namespace {

constexpr double kEps = DBL_EPSILON;

// the four hyperbolic pairs of q and their coefficients
struct PairSpec {
    int i, j;
    i64 coef;
};
constexpr PairSpec kPairs[4] = {{v11, v44, 1}, {v22, v33, 1}, {v12, v34, 2}, {v13, v24, 2}};

std::complex<double> phase(i128 num, u64 den) {
    return expi(double(mod(num, den)) / double(den));
}

} // namespace

SymMatrix VSlice::to_matrix() const {
    SymMatrix M;
    M.set4(0, 0, 4 * b[v11]);
    M.set4(0, 1, 4 * b[v12]);
    M.set4(0, 2, 4 * b[v13]);
    M.set4(0, 3, 4 * b[v14]);
    M.set4(1, 1, 4 * b[v22]);
    M.set4(1, 2, -4 * b[v14]);
    M.set4(1, 3, 4 * b[v24]);
    M.set4(2, 2, 4 * b[v33]);
    M.set4(2, 3, 4 * b[v34]);
    M.set4(3, 3, 4 * b[v44]);
    return M;
}

VSlice VSlice::from_matrix(const SymMatrix& M) {
    if (!M.integral()) throw std::invalid_argument("VSlice: matrix must be integral");
    if (M.at4(1, 2) != -M.at4(0, 3)) throw std::invalid_argument("VSlice: needs b23 = -b14");
    VSlice v;
    v.b = {M.at4(0, 0) / 4, M.at4(0, 1) / 4, M.at4(0, 2) / 4, M.at4(0, 3) / 4, M.at4(1, 1) / 4,
           M.at4(1, 3) / 4, M.at4(2, 2) / 4, M.at4(2, 3) / 4, M.at4(3, 3) / 4};
    return v;
}

i128 q_form(const VSlice& B) {
    const auto& b = B.b;
    i128 s = 0;
    for (const auto& pr : kPairs) s = checked_add(s, checked_mul(pr.coef, checked_mul(b[pr.i], b[pr.j])));
    s = checked_add(s, checked_mul(2, checked_mul(b[v14], b[v14])));
    return -s;
}

i128 bilinear(const VSlice& B1, const VSlice& B2) {
    const auto& x = B1.b;
    const auto& y = B2.b;
    i128 s = 0;
    for (const auto& pr : kPairs) {
        i128 t = checked_add(checked_mul(x[pr.i], y[pr.j]), checked_mul(x[pr.j], y[pr.i]));
        s = checked_add(s, checked_mul(pr.coef, t));
    }
    s = checked_add(s, checked_mul(4, checked_mul(x[v14], y[v14])));
    return -s;
}

i64 hyperbolic_sum(i64 a, u64 r) {
    if (r == 0) throw std::invalid_argument("hyperbolic_sum: r must be positive");
    // inner sum over y is r when r | a x and 0 otherwise
    u64 hits = 0;
    u64 am = mod(a, r);
    for (u64 x = 0; x < r; ++x)
        if (u128(am) * x % r == 0) ++hits;
    return i64(hits * r);
}

ComplexSum gauss_sum(i64 a, u64 r) {
    if (r == 0) throw std::invalid_argument("gauss_sum: r must be positive");
    std::complex<double> s = 0;
    u64 am = mod(a, r);
    for (u64 x = 0; x < r; ++x) s += phase(i128(am) * (i128(x) * x % r), r);
    return {s, 8.0 * kEps * double(r)};
}

std::complex<double> cq_inner(i64 a, u64 r) {
    // r^-9 times four pair sums and one gauss sum
    double h = 1;
    for (const auto& pr : kPairs) h *= double(hyperbolic_sum(-pr.coef * a, r)) / (double(r) * double(r));
    return h * gauss_sum(-2 * a, r).value / double(r);
}

const char* to_string(CqMethod m) {
    switch (m) {
    case CqMethod::brute: return "brute";
    case CqMethod::factored: return "factored";
    case CqMethod::ramanujan: return "ramanujan";
    }
    return "?";
}

namespace {

CqValue cq_brute(u64 r) {
    if (r > 6) throw BudgetExceeded("Cq brute force limited to r <= 6", std::pow(double(r), 10.0));
    std::vector<u64> hist(r, 0);
    u64 total = 1;
    for (int i = 0; i < 9; ++i) total *= r;
    VSlice B;
    for (u64 idx = 0; idx < total; ++idx) {
        u64 t = idx;
        for (int k = 0; k < 9; ++k) {
            B.b[k] = i64(t % r);
            t /= r;
        }
        hist[mod(q_form(B), r)]++;
    }
    std::complex<double> s = 0;
    for (u64 a = 0; a < r; ++a) {
        if (gcd(a, r) != 1) continue;
        for (u64 v = 0; v < r; ++v) s += double(hist[v]) * phase(i128(a) * v, r);
    }
    double val = s.real() / double(total);
    return {val, 1e3 * kEps + std::fabs(s.imag()) / double(total)};
}

CqValue cq_factored(u64 r) {
    std::complex<double> s = 0;
    u64 units = 0;
    for (u64 a = 0; a < r; ++a) {
        if (gcd(a, r) != 1) continue;
        ++units;
        // product of the four pair sums and the square term, each over r^2 resp. r
        double h = 1;
        for (const auto& pr : kPairs) h *= double(hyperbolic_sum(-pr.coef * i64(a), r));
        ComplexSum g = gauss_sum(-2 * i64(a), r);
        s += (h / std::pow(double(r), 8.0)) * (g.value / double(r));
    }
    double err = double(units) * (16.0 * kEps * double(r)) * std::pow(double(r), -3.5) + std::fabs(s.imag());
    return {s.real(), err};
}

// c_r(n) = sum_{d | gcd(n, r)} mu(r/d) d, tabulated by gcd
CqValue cq_ramanujan(u64 r) {
    auto divs = divisors(r);
    std::vector<i64> by_div(divs.size(), 0);
    for (size_t k = 0; k < divs.size(); ++k) {
        u64 g = divs[k];
        i64 c = 0;
        for (u64 d : divs)
            if (g % d == 0) c += i64(mobius(r / d)) * i64(d);
        by_div[k] = c;
    }
    auto lookup = [&](u64 g) { return by_div[std::lower_bound(divs.begin(), divs.end(), g) - divs.begin()]; };
    i64 S = 0;
    for (u64 x = 0; x < r; ++x) {
        u64 n = u64(u128(2) * (u128(x) * x % r) % r);
        S += lookup(gcd(n, r));
    }
    double g2 = (r % 2 == 0) ? 4.0 : 1.0;
    double val = g2 * double(S) / std::pow(double(r), 5.0);
    return {val, 4.0 * kEps * std::fabs(val)};
}

} // namespace

CqValue Cq_value(u64 r, CqMethod method) {
    if (r == 0) throw std::invalid_argument("Cq: r must be positive");
    switch (method) {
    case CqMethod::brute: return cq_brute(r);
    case CqMethod::factored: return cq_factored(r);
    case CqMethod::ramanujan: return cq_ramanujan(r);
    }
    throw std::invalid_argument("Cq: unknown method");
}

double Cq(u64 r, CqMethod method) { return Cq_value(r, method).value; }

IntervalValue singular_series(double tolerance) {
    if (!(tolerance > 0)) throw std::invalid_argument("singular_series: tolerance must be positive");
    // tail sum_{r > R} 4 r^-7/2 <= (8/5) R^-5/2
    u64 R = u64(std::ceil(std::pow(1.6 / tolerance, 0.4)));
    R = std::clamp<u64>(R, 1, 20000);
    // C_q is multiplicative; prime power values are computed once
    std::map<u64, CqValue> pp;
    double sum = 0, err = 0;
    for (u64 r = 1; r <= R; ++r) {
        double v = 1, e = 0;
        if (r > 1)
            for (auto& f : factorize(r)) {
                u64 q = 1;
                for (int k = 0; k < f.e; ++k) q *= f.p;
                auto it = pp.find(q);
                if (it == pp.end()) it = pp.emplace(q, cq_ramanujan(q)).first;
                e = e * std::fabs(it->second.value) + std::fabs(v) * it->second.error + e * it->second.error;
                v *= it->second.value;
                if (v == 0 && e == 0) break;
            }
        sum += v;
        err += e + 2 * kEps * std::fabs(sum);
    }
    double tail = 1.6 * std::pow(double(R), -2.5);
    IntervalValue v = IntervalValue::around(sum, err + tail);
    v.description = "sum of C_q(r) for r <= " + std::to_string(R) + " plus tail bound";
    return v;
}

IntervalValue singular_series_p(u64 p, double tolerance) {
    if (!is_prime(p)) throw std::invalid_argument("singular_series_p: p must be prime");
    if (!(tolerance > 0)) throw std::invalid_argument("singular_series_p: tolerance must be positive");
    double sum = 0, err = 0;
    u64 pl = 1;
    int L = 0;
    auto tail_after = [&](int l) {
        double x = std::pow(double(p), -3.5);
        return 4.0 * std::pow(x, l + 1) / (1.0 - x);
    };
    while (true) {
        CqValue c = cq_ramanujan(pl);
        sum += c.value;
        err += c.error + 2 * kEps * std::fabs(sum);
        if (tail_after(L) <= tolerance || pl > 10000000 / p) break;
        pl *= p;
        ++L;
    }
    IntervalValue v = IntervalValue::around(sum, err + tail_after(L));
    v.description = "sum of C_q(p^l) for l <= " + std::to_string(L) + " plus tail bound";
    return v;
}

IntervalValue singular_series_product(double tolerance, u64 p_max) {
    IntervalValue prod{1.0, 1.0, {}};
    for (u64 p : primes_up_to(p_max)) prod = prod * singular_series_p(p, tolerance / 100);
    // |log S_p| <= 2 * 4/(p^3.5 - 1) for the remaining primes, summed over integers n > p_max
    double T = 2 * 4.01 * 0.4 * std::pow(double(p_max), -2.5);
    IntervalValue tail{round_down(std::exp(-T)), round_up(std::exp(T)), {}};
    IntervalValue v = prod * tail;
    v.description = "product of local factors for p <= " + std::to_string(p_max);
    return v;
}

static void check_arm_args(i64 a, u64 r, u64 m, const VSlice& B0) {
    if (r == 0) throw std::invalid_argument("cq_arm: r must be positive");
    if (gcd(mod(a, r), r) != 1) throw std::invalid_argument("cq_arm: a must be a unit mod r");
    if (m == 0 || m % 2 == 0 || !is_squarefree_int(m)) throw std::invalid_argument("cq_arm: m must be odd squarefree");
    if (mod(q_form(B0), m) != 0) throw std::invalid_argument("cq_arm: m must divide q(B0)");
    if (m > 1)
        for (auto& pe : factorize(m)) {
            bool nz = false;
            for (i64 x : B0.b) nz |= mod(x, pe.p) != 0;
            if (!nz) throw std::invalid_argument("cq_arm: B0 vanishes mod " + std::to_string(pe.p));
        }
}

ArmValue cq_arm(i64 a, u64 r, u64 m, const VSlice& B0) {
    check_arm_args(a, r, m, B0);
    // B = B0 + m Y, Y mod r: q(B)/m = q(B0)/m + <B0, Y> + m q(Y)
    const u64 R = r;
    const i128 A = a;
    const auto& b = B0.b;
    i128 k0 = q_form(B0) / i128(m);
    std::complex<double> total = phase(A * k0, R);
    bool zero = false;
    for (const auto& pr : kPairs) {
        // sum over y_i, y_j of e(-a c (m y_i y_j + b_i y_j + b_j y_i) / r)
        i128 c = A * pr.coef;
        u64 g = gcd(mod(c * i128(m), R), R);
        // solvable in y_i iff g | c b_i, character trivial on the solution coset iff g | c b_j
        bool nonzero = mod(c * b[pr.i], g) == 0 && mod(c * b[pr.j], g) == 0;
        std::complex<double> s = 0;
        for (u64 yi = 0; yi < R; ++yi) {
            if (mod(c * (i128(m) * yi + b[pr.i]), R) != 0) continue;
            s += double(R) * phase(-c * b[pr.j] * i128(yi), R);
        }
        if (!nonzero) zero = true;
        total *= s;
    }
    {
        std::complex<double> s = 0;
        for (u64 w = 0; w < R; ++w) s += phase(-A * (2 * i128(m) * w * w + 4 * i128(b[v14]) * w), R);
        total *= s;
        // w -> w + r/p fixes the quadratic part when p | gcd(r, m) and shifts the phase by e(-4 a b14 / p)
        if (R > 1)
            for (auto& pe : factorize(R))
                if (m % pe.p == 0 && mod(4 * A * b[v14], pe.p) != 0) zero = true;
    }
    double scale = std::pow(double(R) * double(m), -9.0);
    ArmValue out;
    std::complex<double> numeric = total * scale;
    out.structural_zero = zero;
    out.value = zero ? std::complex<double>(0, 0) : numeric;
    out.error = zero ? std::abs(numeric) : 64 * kEps * std::abs(numeric) + 1e-300;
    return out;
}

std::complex<double> cq_arm_direct(i64 a, u64 r, u64 m, const VSlice& B0) {
    check_arm_args(a, r, m, B0);
    double states = std::pow(double(r), 9.0);
    if (states > 5e7) throw BudgetExceeded("cq_arm_direct: r^9 too large", states);
    u64 total = u64(states + 0.5);
    u64 rm = r * m;
    std::complex<double> s = 0;
    VSlice B;
    for (u64 idx = 0; idx < total; ++idx) {
        u64 t = idx;
        for (int k = 0; k < 9; ++k) {
            B.b[k] = B0.b[k] + i64(m) * i64(t % r);
            t /= r;
        }
        s += phase(i128(a) * q_form(B), rm);
    }
    return s * std::pow(double(rm), -9.0);
}

} // namespace sqf
