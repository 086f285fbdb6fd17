#include "sqf/density.hpp"

#include <string>

namespace sqf {

void check_density_params(i64 alpha, i64 beta) {
    if (alpha == 0 || beta == 0) throw std::invalid_argument("alpha and beta must be nonzero");
    if (!is_squarefree_int(u64(gcd_signed(alpha, beta))))
        throw std::invalid_argument("gcd(alpha, beta) must be squarefree");
}

u64 rho_prime_power(u64 p, int e, i64 alpha, i64 beta) {
    u64 q = 1;
    for (int i = 0; i < e; ++i) {
        if (q > kMaxHistogramModulus / p)
            throw std::range_error("rho: prime power " + std::to_string(p) + "^" + std::to_string(e) +
                                   " exceeds the supported modulus width");
        q *= p;
    }
    u64 al = mod(alpha, q), be = mod(beta, q);
    // hist[v] = #{b : alpha b^3 = v}
    std::vector<u32> hist(q, 0);
    for (u64 b = 0; b < q; ++b) hist[al * (b * b % q * b % q) % q]++;
    u64 total = 0;
    for (u64 a = 0; a < q; ++a) {
        u64 a2 = a * a % q;
        u64 v = be * (a2 * a2 % q) % q;
        total += hist[(q - v) % q];
    }
    return total;
}

LocalDensity rho(u64 m, i64 alpha, i64 beta) {
    if (m == 0) throw std::invalid_argument("rho: modulus must be positive");
    if (alpha == 0 || beta == 0) throw std::invalid_argument("alpha and beta must be nonzero");
    LocalDensity r{m, 1, alpha, beta};
    for (auto& pe : factorize(m)) r.count *= rho_prime_power(pe.p, pe.e, alpha, beta);
    return r;
}

u64 rho_by_pairs(u64 m, i64 alpha, i64 beta) {
    if (m == 0 || m > 100000) throw std::invalid_argument("rho_by_pairs: modulus out of oracle range");
    u64 al = mod(alpha, m), be = mod(beta, m), n = 0;
    for (u64 a = 0; a < m; ++a) {
        u64 t = be * powmod(a, 4, m) % m;
        for (u64 b = 0; b < m; ++b)
            if ((t + al * powmod(b, 3, m)) % m == 0) ++n;
    }
    return n;
}

u64 rho_square_closed_form(u64 p) {
    return (p == 2 || p == 3) ? p * p * p : 2 * p * p - p;
}

bool rho_formula_check(u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("rho_formula_check: p must be prime");
    return rho_prime_power(p, 2, 256, -27) == rho_square_closed_form(p);
}

static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Fraction partial_product(i64 alpha, i64 beta, const std::vector<u64>& primes) {
    check_density_params(alpha, beta);
    Fraction f{1, 1};
    for (u64 p : primes) {
        if (!is_prime(p)) throw std::invalid_argument("partial_product: non-prime " + std::to_string(p));
        i128 p4 = i128(p) * p * p * p;
        i128 num = p4 - i128(rho_prime_power(p, 2, alpha, beta));
        f.num = checked_mul(f.num, num);
        f.den = checked_mul(f.den, p4);
        i128 g = gcd128(f.num, f.den);
        if (g > 1) {
            f.num /= g;
            f.den /= g;
        }
    }
    return f;
}

// enclosure of 1 - rho/p^4, computed as rho/p^2/p^2 with outward steps
static IntervalValue factor_interval(u64 rho_p2, u64 p) {
    double p2 = double(p) * double(p); // exact for p < 2^26
    double r = double(rho_p2);         // exact below 2^53
    double lo = round_down(round_down(r / p2) / p2);
    double hi = round_up(round_up(r / p2) / p2);
    return {round_down(1.0 - hi), round_up(1.0 - lo), {}};
}

EulerProduct euler_product(i64 alpha, i64 beta, u64 p_max, u64 table_pmax) {
    if (p_max < 5) throw std::invalid_argument("euler_product: p_max must be at least 5");
    check_density_params(alpha, beta);
    EulerProduct out;
    out.p_max = p_max;
    IntervalValue prod{1.0, 1.0, {}};
    std::vector<PrimePower> bad;
    {
        auto fa = factorize(uabs(alpha));
        auto fb = factorize(uabs(beta));
        for (auto* v : {&fa, &fb})
            for (auto& pe : *v) {
                bool seen = false;
                for (auto& q : bad) seen |= q.p == pe.p;
                if (!seen) bad.push_back(pe);
            }
    }
    auto divides_ab = [&](u64 p) {
        for (auto& q : bad)
            if (q.p == p) return true;
        return false;
    };
    for (u64 p : primes_up_to(p_max)) {
        bool special = divides_ab(p);
        u64 r = special ? rho_prime_power(p, 2, alpha, beta) : 2 * p * p - p;
        IntervalValue f = factor_interval(r, p);
        prod = prod * f;
        ++out.primes_used;
        if (p <= table_pmax) out.factors.push_back({p, r, f.mid(), !special});
    }
    // primes above p_max that divide alpha*beta are taken exactly
    for (auto& q : bad) {
        if (q.p <= p_max) continue;
        u64 r = rho_prime_power(q.p, 2, alpha, beta);
        prod = prod * factor_interval(r, q.p);
    }
    out.finite_part = prod;
    // remaining factors have rho = 2p^2 - p < 2p^2, and sum_{n > P} 2/n^2 < 2/P
    IntervalValue tail{round_down(1.0 - round_up(2.0 / double(p_max))), 1.0, {}};
    out.value = prod * tail;
    out.value.description = "product of (1 - rho(p^2)/p^4) over p <= " + std::to_string(p_max) +
                            " with tail enclosure [1 - 2/p_max, 1]";
    out.finite_part.description = "finite product over p <= " + std::to_string(p_max);
    return out;
}

} // namespace sqf
