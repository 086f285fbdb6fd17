#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqf {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

// refused work, carries a rough size estimate of what was asked for
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }
private:
    double estimate_;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

std::string to_string(i128 v);
std::string to_string(u128 v);

i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 checked_pow(i128 a, unsigned e);

inline u64 uabs(i64 v) { return v < 0 ? u64(-(v + 1)) + 1 : u64(v); }

u64 gcd(u64 a, u64 b);
i64 gcd_signed(i64 a, i64 b);
// non-negative residue
u64 mod(i128 a, u64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
// throws invalid_argument when not invertible
u64 invmod(u64 a, u64 m);

u64 isqrt(u128 n);
u64 icbrt(u128 n);
bool is_perfect_square(u128 n);

std::vector<u32> primes_up_to(u64 n);
bool is_prime(u64 n);

struct PrimePower {
    u64 p;
    int e;
};
std::vector<PrimePower> factorize(u64 n);
bool is_squarefree_int(u64 n);
int mobius(u64 n);
std::vector<signed char> mobius_table(u64 n);
std::vector<u64> divisors(u64 n);

// fast exact division test by an odd prime: n*inv <= lim iff p | n
struct OddDivisor {
    u64 p, inv, lim;
    explicit OddDivisor(u64 prime);
    bool divides(u64 n) const { return n * inv <= lim; }
    u64 quotient(u64 n) const { return n * inv; } // only valid when divides(n)
};

} // namespace sqf
