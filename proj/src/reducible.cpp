#include "sqf/sieve.hpp"

#include <algorithm>
#include <utility>

namespace sqf {

namespace {

bool is_square_i(i128 v) { return v >= 0 && is_perfect_square(u128(v)); }

using Key = std::pair<i64, i64>;

void sort_unique(std::vector<Key>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<Key>& v, const Key& k) { return std::binary_search(v.begin(), v.end(), k); }

} // namespace

ReducibleKind reducible_kind(i64 a, i64 b) {
    if (b == 0) return ReducibleKind::linear;
    // an integer root divides b
    for (u64 r : divisors(uabs(b)))
        for (i64 s : {i64(r), -i64(r)})
            if (checked_add(checked_add(checked_pow(s, 4), checked_mul(a, s)), b) == 0) return ReducibleKind::linear;

    // x^4+ax+b = (x^2+cx+d)(x^2-cx+e): theta = c^2 solves theta^3 - 4b theta - a^2 = 0
    std::vector<i128> roots;
    auto R = [&](i128 t) { return checked_add(checked_add(checked_pow(t, 3), checked_mul(-4 * i128(b), t)), -checked_mul(a, a)); };
    if (a == 0) {
        roots.push_back(0);
        if (b > 0 && is_perfect_square(u128(b))) {
            i128 k = isqrt(u128(b));
            roots.push_back(2 * k);
            roots.push_back(-2 * k);
        }
    } else {
        u64 a2 = uabs(a) * uabs(a);
        for (u64 d : divisors(a2))
            for (i128 t : {i128(d), -i128(d)})
                if (R(t) == 0) roots.push_back(t);
    }
    bool quad = false, conj = false;
    for (i128 t : roots) {
        if (t == 0) {
            // c = 0: x^4 + b = (x^2 + d)(x^2 - d) with d^2 = -b
            if (is_square_i(-i128(b))) quad = true;
            else conj = true;
        } else if (is_square_i(t)) {
            quad = true;
        } else {
            conj = true;
        }
    }
    if (quad) return ReducibleKind::quad_pair;
    if (conj) return ReducibleKind::conj_quad;
    return ReducibleKind::irreducible;
}

ReducibleCounts count_reducible(u64 X) {
    PairBox box = PairBox::make(X, BoxMode::strict);
    const i64 A = box.a_max, Bm = box.b_max;
    const i64 x = i64(X);
    ReducibleCounts out;
    out.pairs = box.pairs();
    auto in_box = [&](i128 a, i128 b) { return a >= -A && a <= A && b >= -Bm && b <= Bm; };

    // every complex root has modulus < 2X inside the box
    std::vector<Key> lin;
    for (i64 a = -A; a <= A; ++a) lin.push_back({a, 0});
    for (i64 r = -2 * x; r <= 2 * x; ++r) {
        if (r == 0) continue;
        for (i64 a = -A; a <= A; ++a) {
            i128 b = -(i128(r) * r * r * r) - i128(a) * r;
            if (b != 0 && in_box(a, b)) lin.push_back({a, i64(b)});
        }
    }
    sort_unique(lin);

    // (x^2 + c x + d)(x^2 - c x + e), d + e = c^2
    std::vector<Key> quad;
    for (i64 c = -4 * x; c <= 4 * x; ++c)
        for (i64 d = -4 * x * x; d <= 4 * x * x; ++d) {
            i128 e = i128(c) * c - d;
            i128 a = i128(c) * (e - d), b = i128(d) * e;
            if (b != 0 && in_box(a, b) && !contains(lin, {i64(a), i64(b)})) quad.push_back({i64(a), i64(b)});
        }
    sort_unique(quad);

    // conjugate pair over Q(sqrt d): a = -e1 e2 d, b = (e1^4 d^2 - e2^2 d)/4
    std::vector<Key> conj;
    for (i64 b = -Bm; b <= Bm; ++b)
        if (b != 0) conj.push_back({0, b});
    for (i64 d = -A; d <= A; ++d) {
        if (d == 0 || (d > 0 && is_perfect_square(u128(d)))) continue;
        i64 ad = d < 0 ? -d : d;
        for (i64 e1 = 1; e1 * ad <= A; ++e1)
            for (i64 e2 = 1; e1 * e2 * ad <= A; ++e2) {
                i128 num = i128(e1) * e1 * e1 * e1 * d * d - i128(e2) * e2 * d;
                if (num % 4 != 0) continue;
                i128 b = num / 4;
                i128 a = i128(e1) * e2 * d;
                for (i128 sa : {a, -a})
                    if (in_box(sa, b)) conj.push_back({i64(sa), i64(b)});
            }
    }
    sort_unique(conj);
    std::vector<Key> conj_only;
    for (auto& k : conj)
        if (!contains(lin, k) && !contains(quad, k)) conj_only.push_back(k);

    out.linear = lin.size();
    out.quad_pair = quad.size();
    out.conj_quad = conj_only.size();
    return out;
}

} // namespace sqf
