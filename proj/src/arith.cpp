#include "sqf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqf {

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(u128(-(v + 1)) + 1);
    return to_string(u128(v));
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::range_error("128-bit overflow in addition");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("128-bit overflow in multiplication");
    return r;
}

i128 checked_pow(i128 a, unsigned e) {
    i128 r = 1;
    while (e--) r = checked_mul(r, a);
    return r;
}

u64 gcd(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 gcd_signed(i64 a, i64 b) {
    return i64(gcd(a < 0 ? u64(-(a + 1)) + 1 : u64(a), b < 0 ? u64(-(b + 1)) + 1 : u64(b)));
}

u64 mod(i128 a, u64 m) {
    i128 r = a % i128(m);
    if (r < 0) r += m;
    return u64(r);
}

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i128 g = m, x = 0, g1 = a % m, x1 = 1;
    while (g1) {
        i128 q = g / g1;
        i128 t = g - q * g1;
        g = g1;
        g1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::invalid_argument("invmod: not invertible");
    return mod(x, m);
}

u64 isqrt(u128 n) {
    if (n == 0) return 0;
    u64 r = u64(std::sqrt(double(n)));
    while (u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 icbrt(u128 n) {
    if (n == 0) return 0;
    u64 r = u64(std::cbrt(double(n)));
    auto cube = [](u64 x) { return u128(x) * x * x; };
    while (r > 0 && cube(r) > n) --r;
    while (cube(r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(u128 n) {
    u64 r = isqrt(n);
    return u128(r) * r == n;
}

std::vector<u32> primes_up_to(u64 n) {
    std::vector<u32> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(u32(i));
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic for 64-bit
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s && comp; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) comp = false;
        }
        if (comp) return false;
    }
    return true;
}

std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::vector<PrimePower> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool is_squarefree_int(u64 n) {
    if (n == 0) return false;
    for (auto& pe : factorize(n))
        if (pe.e > 1) return false;
    return true;
}

int mobius(u64 n) {
    int mu = 1;
    for (auto& pe : factorize(n)) {
        if (pe.e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::vector<signed char> mobius_table(u64 n) {
    std::vector<signed char> mu(n + 1, 1);
    std::vector<bool> comp(n + 1, false);
    mu[0] = 0;
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        for (u64 j = i; j <= n; j += i) {
            if (j > i) comp[j] = true;
            mu[j] = static_cast<signed char>(-mu[j]);
        }
        if (i <= n / i)
            for (u64 j = i * i; j <= n; j += i * i) mu[j] = 0;
    }
    return mu;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> d{1};
    for (auto& pe : factorize(n)) {
        size_t k = d.size();
        u64 pk = 1;
        for (int e = 1; e <= pe.e; ++e) {
            pk *= pe.p;
            for (size_t i = 0; i < k; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

OddDivisor::OddDivisor(u64 prime) : p(prime) {
    if ((p & 1) == 0) throw std::invalid_argument("OddDivisor needs an odd modulus");
    u64 x = p; // Newton iteration for the inverse mod 2^64
    for (int i = 0; i < 5; ++i) x *= 2 - p * x;
    inv = x;
    lim = std::numeric_limits<u64>::max() / p;
}

} // namespace sqf
