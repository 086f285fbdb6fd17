#include "sqf/sieve.hpp"
#include "sqf/density.hpp"
#include "sqf/parallel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>

namespace sqf {

double PairAB::height() const {
    return std::max(std::cbrt(double(uabs(a))), std::pow(double(uabs(b)), 0.25));
}

PairBox PairBox::make(u64 X, BoxMode mode) {
    if (X == 0) throw std::invalid_argument("X must be positive");
    if (X > 50000) throw std::range_error("X too large for the pair box");
    i64 x3 = i64(X * X * X), x4 = i64(X * X * X * X);
    if (mode == BoxMode::strict) return {x3 - 1, x4 - 1};
    return {x3, x4};
}

i128 delta(i64 a, i64 b) {
    i128 b3 = checked_mul(checked_mul(b, b), b);
    i128 a2 = checked_mul(a, a);
    i128 a4 = checked_mul(a2, a2);
    return checked_add(checked_mul(256, b3), checked_mul(-27, a4));
}

i128 poly_value(i64 alpha, i64 beta, i64 a, i64 b) {
    i128 a2 = checked_mul(a, a);
    i128 a4 = checked_mul(a2, a2);
    i128 b3 = checked_mul(checked_mul(b, b), b);
    return checked_add(checked_mul(beta, a4), checked_mul(alpha, b3));
}

u128 max_abs_value(const PairBox& box, i64 alpha, i64 beta) {
    // signs of b are free, so |beta| A^4 + |alpha| B^3 is attained at a corner
    i128 A = box.a_max, B = box.b_max;
    i128 v = checked_add(checked_mul(uabs(beta), checked_pow(A, 4)), checked_mul(uabs(alpha), checked_pow(B, 3)));
    return u128(v);
}

namespace {

// odd primes as fast divisors, grown on demand
class PrimeCache {
public:
    const std::vector<OddDivisor>& upto(u64 limit) {
        std::lock_guard<std::mutex> lk(mu_);
        if (limit > covered_) {
            u64 target = std::max(limit, covered_ * 2 + 1000);
            divs_.clear();
            for (u32 p : primes_up_to(target))
                if (p != 2) divs_.emplace_back(p);
            covered_ = target;
        }
        return divs_;
    }
private:
    std::mutex mu_;
    std::vector<OddDivisor> divs_;
    u64 covered_ = 0;
};

PrimeCache& prime_cache() {
    static PrimeCache c;
    return c;
}

// n > 0, all primes below divs[start].p have already been divided out
// and none of them divided twice; n stripped of the factor 2 as well
bool squarefree_tail(u64 n, const std::vector<OddDivisor>& divs, size_t start) {
    for (size_t i = start; i < divs.size(); ++i) {
        const OddDivisor& d = divs[i];
        if (u128(d.p) * d.p * d.p > n) break;
        if (d.divides(n)) {
            n = d.quotient(n);
            if (d.divides(n)) return false;
        }
    }
    return n == 1 || !is_perfect_square(n);
}

bool strip_two(u64& n) {
    int tz = __builtin_ctzll(n);
    if (tz >= 2) return false;
    n >>= tz;
    return true;
}

} // namespace

bool is_squarefree(i128 n) {
    if (n == 0) return false;
    u128 m = n < 0 ? u128(-(n + 1)) + 1 : u128(n);
    if (m >> 64) throw std::range_error("is_squarefree: value wider than 64 bits");
    u64 v = u64(m);
    if (!strip_two(v)) return false;
    const auto& divs = prime_cache().upto(icbrt(v) + 2);
    return squarefree_tail(v, divs, 0);
}

namespace {

// for q = p^2: lists of b mod q grouped by alpha b^3 mod q
struct CubeBuckets {
    u64 q = 1;
    std::vector<u32> offset, b;
    CubeBuckets(u64 q_, i64 alpha) : q(q_), offset(q_ + 1, 0), b(q_) {
        u64 al = mod(alpha, q);
        std::vector<u32> val(q);
        for (u64 x = 0; x < q; ++x) {
            val[x] = u32(u128(al) * (u128(x) * x % q * x % q) % q);
            offset[val[x] + 1]++;
        }
        for (u64 v = 0; v < q; ++v) offset[v + 1] += offset[v];
        std::vector<u32> pos(offset.begin(), offset.end() - 1);
        for (u64 x = 0; x < q; ++x) b[pos[val[x]]++] = u32(x);
    }
    // b residues solving beta a^4 + alpha b^3 = 0 mod q
    std::pair<const u32*, const u32*> solutions(i64 a, i64 beta) const {
        u64 a0 = mod(a, q);
        u64 a2 = u64(u128(a0) * a0 % q);
        u64 v = u64(u128(mod(beta, q)) * (u128(a2) * a2 % q) % q);
        u64 need = (q - v) % q;
        return {b.data() + offset[need], b.data() + offset[need + 1]};
    }
};

i64 floor_div(i64 x, i64 q) {
    i64 d = x / q;
    if ((x % q != 0) && ((x < 0) != (q < 0))) --d;
    return d;
}

// #{x in [lo, hi] : x = r mod q}
u64 count_progression(i64 lo, i64 hi, i64 r, i64 q) {
    if (hi < lo) return 0;
    return u64(floor_div(hi - r, q) - floor_div(lo - 1 - r, q));
}

} // namespace

CountResult count_N(u64 X, i64 alpha, i64 beta, const SieveOptions& opt) {
    check_density_params(alpha, beta);
    PairBox box = PairBox::make(X, opt.mode);
    CountResult res;
    res.pairs = box.pairs();
    if (res.pairs > opt.budget_pairs)
        throw BudgetExceeded("count_N: " + std::to_string(res.pairs) + " pairs exceeds budget", double(res.pairs));
    u128 vmax = max_abs_value(box, alpha, beta);
    if (vmax >> 64) throw std::range_error("count_N: values exceed 64 bits");

    u64 B = opt.sieve_bound ? opt.sieve_bound : X;
    std::vector<u32> small = primes_up_to(B);
    const i64 A = box.a_max, Bm = box.b_max;
    const u64 W = u64(2 * Bm + 1);
    std::vector<std::uint8_t> marked(res.pairs, 0);
    std::vector<CubeBuckets> buckets;
    for (u32 p : small) buckets.emplace_back(u64(p) * p, alpha);

    parallel_chunks(u64(2 * A + 1), opt.threads, [&](size_t r0, size_t r1, int) {
        for (size_t row = r0; row < r1; ++row) {
            i64 a = i64(row) - A;
            std::uint8_t* line = marked.data() + row * W;
            for (const auto& cb : buckets) {
                i64 q = i64(cb.q);
                auto [s, e] = cb.solutions(a, beta);
                for (const u32* it = s; it != e; ++it) {
                    i64 first = -Bm + i64(mod(i128(*it) + Bm, cb.q));
                    for (i64 b = first; b <= Bm; b += q) line[b + Bm] = 1;
                }
            }
        }
    });

    const auto& divs = prime_cache().upto(icbrt(vmax) + 2);
    size_t start = 0;
    while (start < divs.size() && divs[start].p <= B) ++start;
    std::vector<OddDivisor> strip(divs.begin(), divs.begin() + start);
    std::atomic<u64> total{0};
    parallel_chunks(u64(2 * A + 1), opt.threads, [&](size_t r0, size_t r1, int) {
        u64 local = 0;
        for (size_t row = r0; row < r1; ++row) {
            i64 a = i64(row) - A;
            const std::uint8_t* line = marked.data() + row * W;
            i128 ta = i128(beta) * a * a * a * a;
            for (i64 b = -Bm; b <= Bm; ++b) {
                if (line[b + Bm]) continue;
                i128 v = ta + i128(alpha) * b * b * b;
                if (v == 0) continue;
                u64 n = u64(v < 0 ? -v : v);
                if (!strip_two(n)) continue;
                for (const auto& d : strip)
                    if (d.divides(n)) n = d.quotient(n);
                if (squarefree_tail(n, divs, start)) ++local;
            }
        }
        total += local;
    });
    res.count = total;
    return res;
}

CountResult count_N_naive(u64 X, i64 alpha, i64 beta, BoxMode mode) {
    check_density_params(alpha, beta);
    PairBox box = PairBox::make(X, mode);
    CountResult res;
    res.pairs = box.pairs();
    for (i64 a = -box.a_max; a <= box.a_max; ++a)
        for (i64 b = -box.b_max; b <= box.b_max; ++b)
            if (is_squarefree(poly_value(alpha, beta, a, b))) ++res.count;
    return res;
}

static void require_squarefree_m(u64 m) {
    if (m == 0 || !is_squarefree_int(m)) throw std::invalid_argument("m must be a squarefree positive integer");
}

u64 count_Nm_scan(u64 X, i64 alpha, i64 beta, u64 m, BoxMode mode) {
    require_squarefree_m(m);
    PairBox box = PairBox::make(X, mode);
    u128 q = u128(m) * m;
    if (q >> 63) throw std::range_error("count_Nm: m^2 too large");
    i64 qq = i64(q);
    u64 n = 0;
    for (i64 a = -box.a_max; a <= box.a_max; ++a) {
        i128 ta = i128(mod(beta, qq)) * mod(i128(a) * a % qq * a % qq * a, qq) % qq;
        for (i64 b = -box.b_max; b <= box.b_max; ++b) {
            i128 bb = mod(b, qq);
            i128 tb = i128(mod(alpha, qq)) * (bb * bb % qq * bb % qq) % qq;
            if ((ta + tb) % qq == 0) ++n;
        }
    }
    return n;
}

u64 count_Nm(u64 X, i64 alpha, i64 beta, u64 m, BoxMode mode, u64 budget_pairs) {
    require_squarefree_m(m);
    if (alpha == 0 || beta == 0) throw std::invalid_argument("alpha and beta must be nonzero");
    PairBox box = PairBox::make(X, mode);
    if (box.pairs() > budget_pairs)
        throw BudgetExceeded("count_Nm: box exceeds budget", double(box.pairs()));
    if (m == 1) return box.pairs();
    auto fac = factorize(m);
    const i64 A = box.a_max, Bm = box.b_max;
    u64 q = m * m;
    bool classes = q <= u64(2 * Bm + 1);
    for (auto& pe : fac) classes = classes && pe.p * pe.p <= (u64(1) << 22);
    if (!classes) return count_Nm_scan(X, alpha, beta, m, mode);

    std::vector<CubeBuckets> cbs;
    for (auto& pe : fac) cbs.emplace_back(pe.p * pe.p, alpha);
    // a values grouped by residue mod q when that saves work
    bool group_a = q < u64(2 * A + 1);
    u64 a_iters = group_a ? q : u64(2 * A + 1);
    u64 total = 0;
    std::vector<u64> res, nxt;
    for (u64 i = 0; i < a_iters; ++i) {
        i64 a = group_a ? i64(i) : i64(i) - A;
        u64 a_mult = group_a ? count_progression(-A, A, a, i64(q)) : 1;
        if (a_mult == 0) continue;
        res.assign(1, 0);
        u64 M = 1;
        for (const auto& cb : cbs) {
            auto [s, e] = cb.solutions(a, beta);
            if (s == e) {
                res.clear();
                break;
            }
            u64 inv = invmod(M % cb.q, cb.q);
            nxt.clear();
            for (u64 r : res)
                for (const u32* it = s; it != e; ++it) {
                    u64 t = mulmod((*it + cb.q - r % cb.q) % cb.q, inv, cb.q);
                    nxt.push_back(r + M * t);
                }
            M *= cb.q;
            res.swap(nxt);
        }
        u64 sub = 0;
        for (u64 r : res) sub += count_progression(-Bm, Bm, i64(r), i64(q));
        total += sub * a_mult;
    }
    return total;
}

const char* to_string(DivisibilityKind k) {
    switch (k) {
    case DivisibilityKind::none: return "none";
    case DivisibilityKind::weak: return "weak";
    case DivisibilityKind::strong: return "strong";
    }
    return "?";
}

DivisibilityKind classify_by_lifts(i64 a, i64 b, u64 p) {
    i64 q = i64(p * p);
    if (mod(delta(a, b), q) != 0) return DivisibilityKind::none;
    for (u64 i = 0; i < p; ++i)
        for (u64 j = 0; j < p; ++j)
            if (mod(delta(a + i64(i * p), b + i64(j * p)), q) != 0) return DivisibilityKind::weak;
    return DivisibilityKind::strong;
}

DivisibilityClass classify(i64 a, i64 b, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("classify: p must be prime");
    DivisibilityClass c{{a, b}, p, DivisibilityKind::none};
    if (p <= 3) {
        c.kind = classify_by_lifts(a, b, p);
        return c;
    }
    if (mod(delta(a, b), p * p) != 0) return c;
    bool strong = mod(a, p) == 0 && mod(b, p) == 0;
    c.kind = strong ? DivisibilityKind::strong : DivisibilityKind::weak;
    return c;
}

std::vector<PairAB> enumerate_W(u64 X, u64 m, DivisibilityKind kind, u64 budget_pairs) {
    require_squarefree_m(m);
    if (kind == DivisibilityKind::none) throw std::invalid_argument("enumerate_W: kind must be strong or weak");
    PairBox box = PairBox::make(X, BoxMode::strict);
    if (box.pairs() > budget_pairs)
        throw BudgetExceeded("enumerate_W: box exceeds budget", double(box.pairs()));
    std::vector<u64> ps;
    for (auto& pe : factorize(m)) ps.push_back(pe.p);
    std::vector<PairAB> out;
    for (i64 a = -box.a_max; a <= box.a_max; ++a)
        for (i64 b = -box.b_max; b <= box.b_max; ++b) {
            bool ok = true;
            for (u64 p : ps) {
                if (classify(a, b, p).kind != kind) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back({a, b});
        }
    return out;
}

u64 tail_sum(u64 X, u64 M, i64 alpha, i64 beta, BoxMode mode, u64 budget_ops) {
    PairBox box = PairBox::make(X, mode);
    u64 L = isqrt(max_abs_value(box, alpha, beta));
    if (M >= L) return 0;
    double est = double(L - M) * double(box.pairs());
    if (est > double(budget_ops)) throw BudgetExceeded("tail_sum: work estimate exceeds budget", est);
    auto mu = mobius_table(L);
    u64 total = 0;
    for (u64 m = M + 1; m <= L; ++m)
        if (mu[m] != 0) total += count_Nm(X, alpha, beta, m, mode);
    return total;
}

MoebiusCheck moebius_identity(u64 X, i64 alpha, i64 beta, BoxMode mode) {
    check_density_params(alpha, beta);
    PairBox box = PairBox::make(X, mode);
    MoebiusCheck r;
    SieveOptions opt;
    opt.mode = mode;
    r.count = count_N(X, alpha, beta, opt).count;
    r.m_limit = isqrt(max_abs_value(box, alpha, beta));
    auto mu = mobius_table(r.m_limit);
    for (u64 m = 1; m <= r.m_limit; ++m) {
        r.mertens += mu[m];
        if (mu[m] != 0) r.moebius_sum += i128(mu[m]) * i128(count_Nm(X, alpha, beta, m, mode));
    }
    for (i64 a = -box.a_max; a <= box.a_max; ++a)
        for (i64 b = -box.b_max; b <= box.b_max; ++b)
            if (poly_value(alpha, beta, a, b) == 0) ++r.zero_pairs;
    r.holds = i128(r.count) == r.moebius_sum - i128(r.zero_pairs) * r.mertens;
    return r;
}

bool reduction_identity_check(i64 alpha, i64 beta, i64 a, i64 b) {
    using boost::multiprecision::cpp_int;
    cpp_int al = alpha, be = beta, A = a, B = b;
    cpp_int lhs = cpp_int(-256) * 27 * pow(al, 8) * pow(be, 3) * (be * pow(A, 4) + al * pow(B, 3));
    cpp_int u = cpp_int(-3) * pow(al, 3) * be * B;
    cpp_int v = cpp_int(4) * pow(al, 2) * be * A;
    cpp_int rhs = 256 * pow(u, 3) - 27 * pow(v, 4);
    return lhs == rhs;
}

} // namespace sqf
