#include "sqf/orbits.hpp"
#include "sqf/parallel.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace sqf {

namespace {

using Vec4 = std::array<u64, 4>;

void require_odd_prime(u64 p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("an odd prime is required, got " + std::to_string(p));
}

// projective points of P^3(F_p), first nonzero coordinate 1
const std::vector<Vec4>& projective_points(u64 p) {
    static std::mutex mu;
    static std::map<u64, std::vector<Vec4>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    std::vector<Vec4> pts;
    for (int lead = 0; lead < 4; ++lead) {
        u64 n = 1;
        for (int k = lead + 1; k < 4; ++k) n *= p;
        for (u64 idx = 0; idx < n; ++idx) {
            Vec4 v{};
            v[lead] = 1;
            u64 t = idx;
            for (int k = lead + 1; k < 4; ++k) {
                v[k] = t % p;
                t /= p;
            }
            pts.push_back(v);
        }
    }
    return cache.emplace(p, std::move(pts)).first->second;
}

u64 form(const FpMatrix& B, const Vec4& v, const Vec4& w) {
    u64 p = B.p, s = 0;
    for (int i = 0; i < 4; ++i) {
        if (v[i] == 0) continue;
        u64 row = 0;
        for (int j = 0; j < 4; ++j) row += B.at(i, j) * w[j];
        s = (s + v[i] * (row % p)) % p;
    }
    return s;
}

// A0(v, w) = v1 w4 + v2 w3 + v3 w2 + v4 w1
u64 formA0(u64 p, const Vec4& v, const Vec4& w) { return (v[0] * w[3] + v[1] * w[2] + v[2] * w[1] + v[3] * w[0]) % p; }

Vec4 apply(const FpMatrix& B, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i) {
        u64 s = 0;
        for (int j = 0; j < 4; ++j) s += B.at(i, j) * v[j];
        r[i] = s % B.p;
    }
    return r;
}

// row reduction; returns basis of {w : rows . w = 0}
std::vector<Vec4> kernel(std::vector<Vec4> rows, u64 p) {
    int pivcol[4];
    int r = 0;
    for (int col = 0; col < 4 && r < int(rows.size()); ++col) {
        int piv = -1;
        for (int i = r; i < int(rows.size()); ++i)
            if (rows[i][col]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        u64 inv = invmod(rows[r][col], p);
        for (auto& x : rows[r]) x = x * inv % p;
        for (int i = 0; i < int(rows.size()); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            u64 f = rows[i][col];
            for (int k = 0; k < 4; ++k) rows[i][k] = (rows[i][k] + p * p - f * rows[r][k]) % p;
        }
        pivcol[r++] = col;
    }
    std::vector<Vec4> basis;
    for (int free = 0; free < 4; ++free) {
        bool is_piv = false;
        for (int i = 0; i < r; ++i) is_piv |= pivcol[i] == free;
        if (is_piv) continue;
        Vec4 w{};
        w[free] = 1;
        for (int i = 0; i < r; ++i) w[pivcol[i]] = (p - rows[i][free]) % p;
        basis.push_back(w);
    }
    return basis;
}

bool proportional(const Vec4& a, const Vec4& b, u64 p) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if ((a[i] * b[j] + p * p - a[j] * b[i]) % p) return false;
    return true;
}

void require_nonzero_disc(const FpMatrix& B) {
    if (discriminant_fp(B) == 0) throw DomainError("discriminant of f_B vanishes mod " + std::to_string(B.p));
}

} // namespace

FpMatrix FpMatrix::from(const SymMatrix& B, u64 p) {
    require_odd_prime(p);
    FpMatrix M;
    M.p = p;
    u64 inv4 = invmod(4, p);
    for (int i = 0; i < 10; ++i) M.e[i] = mulmod(mod(B.e4[i], p), inv4, p);
    return M;
}

std::array<u64, 4> invariant_poly_fp(const FpMatrix& B) {
    static const int perms[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
        {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
        {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
        {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
    static const int sign[24] = {1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1};
    const i64 p = i64(B.p);
    i64 acc[5] = {0, 0, 0, 0, 0};
    for (int s = 0; s < 24; ++s) {
        i64 prod[5] = {sign[s], 0, 0, 0, 0};
        int deg = 0;
        for (int i = 0; i < 4; ++i) {
            int j = perms[s][i];
            i64 cst = -i64(B.at(i, j));
            if (i + j == 3) {
                for (int k = deg + 1; k > 0; --k) prod[k] = (prod[k - 1] + prod[k] * cst) % p;
                prod[0] = prod[0] * cst % p;
                ++deg;
            } else {
                for (int k = 0; k <= deg; ++k) prod[k] = prod[k] * cst % p;
            }
        }
        for (int k = 0; k < 5; ++k) acc[k] += prod[k];
    }
    std::array<u64, 4> c{};
    for (int k = 1; k <= 4; ++k) c[k - 1] = u64(((acc[4 - k] % p) + p) % p);
    return c;
}

u64 discriminant_fp(const FpMatrix& B) {
    auto c = invariant_poly_fp(B);
    return quartic_discriminant_fp(B.p, c[0], c[1], c[2], c[3]);
}

bool is_soluble_scan(const FpMatrix& B) {
    for (const auto& v : projective_points(B.p))
        if (formA0(B.p, v, v) == 0 && form(B, v, v) == 0) return true;
    return false;
}

bool is_soluble_fp(const FpMatrix& B) {
    require_odd_prime(B.p);
    require_nonzero_disc(B);
    if (B.at(0, 0) == 0) return true; // e1 is isotropic for both
    return is_soluble_scan(B);
}

bool is_distinguished_fp(const FpMatrix& B) {
    require_odd_prime(B.p);
    require_nonzero_disc(B);
    const u64 p = B.p;
    for (const auto& v : projective_points(p)) {
        if (formA0(p, v, v) != 0 || form(B, v, v) != 0) continue;
        Vec4 l1{v[3], v[2], v[1], v[0]};
        auto K = kernel({l1, apply(B, v)}, p);
        // complement of v inside K; isotropy of w only depends on w mod v
        std::vector<Vec4> rows{v};
        std::vector<Vec4> comp;
        for (const auto& k : K) {
            rows.push_back(k);
            // keep k when it is independent of what is already there
            std::vector<Vec4> test = rows;
            size_t rank = 4 - kernel(test, p).size();
            if (rank == rows.size()) comp.push_back(k);
            else rows.pop_back();
        }
        if (comp.size() == 1) {
            if (formA0(p, comp[0], comp[0]) == 0) return true;
        } else if (comp.size() == 2) {
            // the p + 1 points of the projective line
            for (u64 t = 0; t <= p; ++t) {
                Vec4 w{};
                for (int i = 0; i < 4; ++i)
                    w[i] = t == p ? comp[1][i] : (comp[0][i] + t * comp[1][i]) % p;
                if (formA0(p, w, w) == 0) return true;
            }
        }
    }
    return false;
}

bool is_distinguished_scan(const FpMatrix& B) {
    const u64 p = B.p;
    const auto& pts = projective_points(p);
    for (const auto& v : pts) {
        if (formA0(p, v, v) != 0 || form(B, v, v) != 0) continue;
        for (const auto& w : pts) {
            if (proportional(v, w, p)) continue;
            if (formA0(p, v, w) == 0 && form(B, v, w) == 0 && formA0(p, w, w) == 0) return true;
        }
    }
    return false;
}

namespace {

// F_p[s]/(s^2 - n)
struct Fp2 {
    u64 x = 0, y = 0;
};

struct Fp2Ctx {
    u64 p, n;
    Fp2 add(Fp2 a, Fp2 b) const { return {(a.x + b.x) % p, (a.y + b.y) % p}; }
    Fp2 sub(Fp2 a, Fp2 b) const { return {(a.x + p - b.x) % p, (a.y + p - b.y) % p}; }
    Fp2 mul(Fp2 a, Fp2 b) const {
        return {(a.x * b.x + a.y * b.y % p * n) % p, (a.x * b.y + a.y * b.x) % p};
    }
    bool eq(Fp2 a, Fp2 b) const { return a.x == b.x && a.y == b.y; }
};

} // namespace

EvenFactorization enumerate_even_factorizations(const FpPoly& f0) {
    if (f0.degree() != 4) throw std::invalid_argument("even factorizations need a quartic");
    u64 p = f0.p;
    require_odd_prime(p);
    FpPoly f = f0.monic();
    u64 disc = quartic_discriminant_fp(p, f.c[3], f.c[2], f.c[1], f.c[0]);
    if (disc == 0) throw DomainError("even factorizations: discriminant vanishes");
    u64 n = 2;
    while (powmod(n, (p - 1) / 2, p) != p - 1) ++n;
    Fp2Ctx F{p, n};
    Fp2 f3{f.c[3], 0}, f2{f.c[2], 0}, f1{f.c[1], 0}, f0c{f.c[0], 0};
    EvenFactorization out;
    for (u64 x = 0; x < p; ++x) out.has_root |= f.eval(x) == 0;
    int rat = 0, conj = 0;
    for (u64 ux = 0; ux < p; ++ux)
        for (u64 uy = 0; uy < p; ++uy)
            for (u64 vx = 0; vx < p; ++vx)
                for (u64 vy = 0; vy < p; ++vy) {
                    Fp2 u{ux, uy}, v{vx, vy};
                    Fp2 h1 = F.sub(f3, u);
                    Fp2 h0 = F.sub(F.sub(f2, v), F.mul(u, h1));
                    if (!F.eq(F.add(F.mul(u, h0), F.mul(v, h1)), f1)) continue;
                    if (!F.eq(F.mul(v, h0), f0c)) continue;
                    bool g_rational = uy == 0 && vy == 0;
                    bool h_rational = h1.y == 0 && h0.y == 0;
                    if (g_rational && h_rational) ++rat;
                    else if (h1.x == ux && h1.y == (p - uy) % p && h0.x == vx && h0.y == (p - vy) % p) ++conj;
                }
    out.rational_pairs = rat / 2;
    out.conjugate_pairs = conj / 2;
    return out;
}

const std::array<TypeData, 5>& factor_type_table() {
    // j2 from enumerate_even_factorizations, n_dist from the brute census, both at p = 3, 5, 7.
    // the census gives 2 distinguished orbits for types 22 and 4 even though conjugate pairs exist
    static const std::array<TypeData, 5> t = {{{FactorType::t1111, 1, 4},
                                              {FactorType::t112, 1, 2},
                                              {FactorType::t13, 1, 1},
                                              {FactorType::t22, 2, 4},
                                              {FactorType::t4, 2, 2}}};
    return t;
}

static const TypeData& lookup(const FpPoly& f) {
    FactorType t = factorization_type(f);
    for (const auto& row : factor_type_table())
        if (row.type == t) return row;
    throw std::logic_error("factor type missing from table");
}

int even_factorizations(const FpPoly& f) {
    u64 p = f.p;
    FpPoly g = f.monic();
    if (quartic_discriminant_fp(p, g.c[3], g.c[2], g.c[1], g.c[0]) == 0)
        throw DomainError("even_factorizations: discriminant vanishes");
    return lookup(g).j2;
}

int n_distinguished(const FpPoly& f) { return lookup(f.monic()).n_dist; }

u64 group_order_fp(u64 p) { return p * p * (p * p - 1) * (p * p - 1); }

DpCensus dp_census_brute(u64 p, u64 max_p, int threads) {
    require_odd_prime(p);
    if (p > max_p)
        throw BudgetExceeded("brute d_p limited to p <= " + std::to_string(max_p), std::pow(double(p), 10.0));
    u64 p9 = 1;
    for (int i = 0; i < 9; ++i) p9 *= p;
    DpCensus out;
    out.p = p;
    std::vector<u64> fiber(p * p, 0), fiber_nd(p * p, 0);
    std::mutex mu;
    parallel_chunks(p, threads, [&](size_t b0, size_t b1, int) {
        std::vector<u64> fib(p * p, 0), fib_nd(p * p, 0);
        u64 in_U = 0, dp = 0, insol = 0;
        FpMatrix B;
        B.p = p;
        for (size_t first = b0; first < b1; ++first) {
            B.e[0] = first;
            for (u64 idx = 0; idx < p9; ++idx) {
                u64 t = idx;
                for (int k = 1; k < 10; ++k) {
                    B.e[k] = t % p;
                    t /= p;
                }
                auto c = invariant_poly_fp(B);
                if (c[0] != 0 || c[1] != 0) continue;
                if (quartic_discriminant_fp(p, 0, 0, c[2], c[3]) == 0) continue;
                ++in_U;
                fib[c[2] * p + c[3]]++;
                if (!is_distinguished_fp(B)) {
                    ++dp;
                    fib_nd[c[2] * p + c[3]]++;
                    if (!is_soluble_scan(B)) ++insol;
                }
            }
        }
        std::lock_guard<std::mutex> lk(mu);
        out.in_U += in_U;
        out.dp += dp;
        out.insoluble += insol;
        for (u64 i = 0; i < p * p; ++i) {
            fiber[i] += fib[i];
            fiber_nd[i] += fib_nd[i];
        }
    });
    bool first = true;
    for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b) {
            if (quartic_discriminant_fp(p, 0, 0, a, b) == 0) continue;
            ++out.polys_in_U;
            u64 v = fiber[a * p + b];
            int t = int(factorization_type(quartic(p, 0, 0, a, b)));
            out.type_polys[t]++;
            out.type_nondist[t] += fiber_nd[a * p + b];
            out.fiber_min = first ? v : std::min(out.fiber_min, v);
            out.fiber_max = first ? v : std::max(out.fiber_max, v);
            first = false;
        }
    return out;
}

u64 count_dp(u64 p, DpMethod method, u64 max_brute_p) {
    require_odd_prime(p);
    if (method == DpMethod::brute) return dp_census_brute(p, max_brute_p).dp;
    u64 G = group_order_fp(p), total = 0;
    for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b) {
            if (quartic_discriminant_fp(p, 0, 0, a, b) == 0) continue;
            FpPoly f = quartic(p, 0, 0, a, b);
            const TypeData& t = lookup(f);
            total += G / u64(t.j2) * u64(t.j2 - t.n_dist);
        }
    return total;
}

} // namespace sqf
