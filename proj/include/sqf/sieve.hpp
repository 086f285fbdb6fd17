#pragma once

#include "sqf/arith.hpp"

#include <vector>

namespace sqf {

struct PairAB {
    i64 a = 0, b = 0;
    double height() const;
    bool operator==(const PairAB&) const = default;
    auto operator<=>(const PairAB&) const = default;
};

// strict: H(a,b) < X, i.e. |a| <= X^3-1, |b| <= X^4-1; closed: |a| <= X^3, |b| <= X^4
enum class BoxMode { strict, closed };

struct PairBox {
    i64 a_max = 0, b_max = 0;
    static PairBox make(u64 X, BoxMode mode);
    u64 pairs() const { return u64(2 * a_max + 1) * u64(2 * b_max + 1); }
};

i128 delta(i64 a, i64 b);
i128 poly_value(i64 alpha, i64 beta, i64 a, i64 b); // beta a^4 + alpha b^3
// max |beta a^4 + alpha b^3| over the box
u128 max_abs_value(const PairBox& box, i64 alpha, i64 beta);

bool is_squarefree(i128 n);

struct SieveOptions {
    BoxMode mode = BoxMode::strict;
    u64 sieve_bound = 0; // 0 means ceil(X)
    u64 budget_pairs = u64(1) << 26;
    int threads = 0;
};

struct CountResult {
    u64 count = 0;
    u64 pairs = 0;
    double density() const { return pairs ? double(count) / double(pairs) : 0.0; }
};

CountResult count_N(u64 X, i64 alpha, i64 beta, const SieveOptions& opt = {});
// plain per-pair scan, used as the oracle for count_N
CountResult count_N_naive(u64 X, i64 alpha, i64 beta, BoxMode mode = BoxMode::strict);

// #{(a,b) in box : m^2 | beta a^4 + alpha b^3}
u64 count_Nm(u64 X, i64 alpha, i64 beta, u64 m, BoxMode mode = BoxMode::closed,
             u64 budget_pairs = u64(1) << 30);
u64 count_Nm_scan(u64 X, i64 alpha, i64 beta, u64 m, BoxMode mode = BoxMode::closed);

enum class DivisibilityKind { none, weak, strong };
const char* to_string(DivisibilityKind k);

struct DivisibilityClass {
    PairAB pair;
    u64 prime = 0;
    DivisibilityKind kind = DivisibilityKind::none;
};

DivisibilityClass classify(i64 a, i64 b, u64 p);
// scan of every lift mod p^2, independent of the p | a, p | b shortcut
DivisibilityKind classify_by_lifts(i64 a, i64 b, u64 p);

std::vector<PairAB> enumerate_W(u64 X, u64 m, DivisibilityKind kind, u64 budget_pairs = u64(1) << 26);

u64 tail_sum(u64 X, u64 M, i64 alpha, i64 beta, BoxMode mode = BoxMode::closed,
             u64 budget_ops = u64(1) << 32);

struct MoebiusCheck {
    u64 count = 0;          // count_N in the chosen box
    i128 moebius_sum = 0;   // sum mu(m) N_m over m^2 <= max|value|
    u64 zero_pairs = 0;     // pairs where the value vanishes
    i64 mertens = 0;        // M(L), L = floor(sqrt(max|value|))
    u64 m_limit = 0;
    bool holds = false;     // count == moebius_sum - zero_pairs * mertens
};
MoebiusCheck moebius_identity(u64 X, i64 alpha, i64 beta, BoxMode mode = BoxMode::closed);

bool reduction_identity_check(i64 alpha, i64 beta, i64 a, i64 b);

struct ReducibleCounts {
    u64 linear = 0, quad_pair = 0, conj_quad = 0;
    u64 pairs = 0;
};
ReducibleCounts count_reducible(u64 X);
// resolvent-cubic classification of a single x^4 + a x + b, the oracle for count_reducible
enum class ReducibleKind { irreducible, linear, quad_pair, conj_quad };
ReducibleKind reducible_kind(i64 a, i64 b);

} // namespace sqf
