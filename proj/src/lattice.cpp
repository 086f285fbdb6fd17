#include "sqf/circle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>

namespace sqf {

namespace {

struct PairIdx {
    int i, j;
};
// coefficient 1 pairs, then coefficient 2 pairs
constexpr PairIdx kPairs[4] = {{v11, v44}, {v22, v33}, {v12, v34}, {v13, v24}};

template <class T>
struct FftwBuf {
    T* p = nullptr;
    explicit FftwBuf(size_t n) : p(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuf() { fftw_free(p); }
    FftwBuf(const FftwBuf&) = delete;
    FftwBuf& operator=(const FftwBuf&) = delete;
};

// planning is not thread safe; plans are reused through the new-array interface
struct Plans {
    fftw_plan fwd, inv;
};
std::mutex plan_mu;

Plans plans_for(size_t n) {
    static std::map<size_t, Plans> cache;
    std::lock_guard<std::mutex> lk(plan_mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    FftwBuf<double> r(n);
    FftwBuf<fftw_complex> c(n / 2 + 1);
    Plans pl;
    pl.fwd = fftw_plan_dft_r2c_1d(int(n), r.p, c.p, FFTW_ESTIMATE);
    pl.inv = fftw_plan_dft_c2r_1d(int(n), c.p, r.p, FFTW_ESTIMATE);
    if (!pl.fwd || !pl.inv) throw std::runtime_error("lattice_count: FFT planning failed");
    cache[n] = pl;
    return pl;
}

size_t next_pow2(size_t n) {
    size_t s = 1;
    while (s < n) s <<= 1;
    return s;
}

// exact linear convolution of non-negative integer arrays
std::vector<i64> convolve(const std::vector<const std::vector<i64>*>& parts, u64 budget) {
    size_t L = 1;
    for (auto* v : parts) L += v->size() - 1;
    size_t n = std::max<size_t>(next_pow2(L), 16);
    if (n > budget) throw BudgetExceeded("lattice_count: FFT length " + std::to_string(n) + " exceeds budget", double(n));
    Plans pl = plans_for(n);
    size_t h = n / 2 + 1;
    FftwBuf<double> real(n);
    FftwBuf<fftw_complex> acc(h), tmp(h);
    for (size_t k = 0; k < parts.size(); ++k) {
        const auto& v = *parts[k];
        std::fill(real.p, real.p + n, 0.0);
        for (size_t i = 0; i < v.size(); ++i) real.p[i] = double(v[i]);
        fftw_execute_dft_r2c(pl.fwd, real.p, k == 0 ? acc.p : tmp.p);
        if (k == 0) continue;
        for (size_t i = 0; i < h; ++i) {
            std::complex<double> a(acc.p[i][0], acc.p[i][1]), b(tmp.p[i][0], tmp.p[i][1]);
            a *= b;
            acc.p[i][0] = a.real();
            acc.p[i][1] = a.imag();
        }
    }
    fftw_execute_dft_c2r(pl.inv, acc.p, real.p);
    std::vector<i64> out(L);
    double worst = 0;
    for (size_t i = 0; i < L; ++i) {
        double x = real.p[i] / double(n);
        double r = std::nearbyint(x);
        worst = std::max(worst, std::fabs(x - r));
        out[i] = i64(r);
    }
    if (worst > 0.25) throw std::runtime_error("lattice_count: FFT rounding error too large");
    return out;
}

void check_lattice_args(u64 m, const VSlice& B0) {
    if (m == 0 || m % 2 == 0 || !is_squarefree_int(m))
        throw std::invalid_argument("lattice_count: m must be odd and squarefree");
    if (m > 1 && mod(q_form(B0), m) != 0) throw std::invalid_argument("lattice_count: m does not divide q(B0)");
}

// values x in [-w, w] with x = c mod m
std::vector<i64> residue_values(i64 w, u64 m, i64 c) {
    std::vector<i64> xs;
    i64 start = -w + i64(mod(i128(c) + w, m));
    for (i64 x = start; x <= w; x += i64(m)) xs.push_back(x);
    return xs;
}

// reps[t + wi*wj] = #{(x, y) in class : x y = t}
std::vector<i64> pair_array(i64 wi, i64 wj, u64 m, i64 ci, i64 cj) {
    i64 P = wi * wj;
    std::vector<i64> r(size_t(2 * P + 1), 0);
    auto xs = residue_values(wi, m, ci), ys = residue_values(wj, m, cj);
    for (i64 x : xs)
        for (i64 y : ys) ++r[size_t(x * y + P)];
    return r;
}

} // namespace

std::array<i64, 9> integer_widths(const BoxSpec& box) {
    std::array<i64, 9> w{};
    for (int k = 0; k < 9; ++k) {
        if (!(box.half[k] >= 0) || box.half[k] > 1e9) throw std::invalid_argument("integer_widths: bad half-width");
        w[k] = i64(std::floor(box.half[k]));
    }
    return w;
}

u128 lattice_count(const std::array<i64, 9>& w, u64 m, const VSlice& B0, u64 budget_fft) {
    check_lattice_args(m, B0);
    for (i64 x : w)
        if (x < 0) throw std::invalid_argument("lattice_count: negative width");
    // q = 0 iff U + 2V = 0, U = b11 b44 + b22 b33, V = b12 b34 + b13 b24 + b14^2
    i64 P[4];
    for (int k = 0; k < 4; ++k) P[k] = i64(checked_mul(w[kPairs[k].i], w[kPairs[k].j]));
    i64 Z = w[v14];
    // estimate before allocating anything large
    double need_d = std::max(2.0 * double(P[2] + P[3]) + double(Z) * double(Z), 2.0 * double(P[0] + P[1])) + 1;
    if (need_d > double(budget_fft))
        throw BudgetExceeded("lattice_count: FFT length about " + std::to_string(u64(need_d)) + " exceeds budget", need_d);

    std::vector<i64> r[4];
    for (int k = 0; k < 4; ++k) {
        auto [i, j] = kPairs[k];
        r[k] = pair_array(w[i], w[j], m, B0.b[i], B0.b[j]);
    }
    std::vector<i64> sq(size_t(Z * Z + 1), 0);
    for (i64 x : residue_values(Z, m, B0.b[v14])) ++sq[size_t(x * x)];

    std::vector<i64> U = convolve({&r[0], &r[1]}, budget_fft);
    std::vector<i64> V = convolve({&r[2], &r[3], &sq}, budget_fft);
    i64 offU = P[0] + P[1], offV = P[2] + P[3];
    u128 total = 0;
    for (size_t s = 0; s < V.size(); ++s) {
        if (V[s] == 0) continue;
        i64 v = i64(s) - offV;
        i64 u = -2 * v;
        i64 idx = u + offU;
        if (idx < 0 || idx >= i64(U.size())) continue;
        total += u128(V[s]) * u128(U[size_t(idx)]);
    }
    return total;
}

u128 lattice_count(const BoxSpec& box, u64 m, const VSlice& B0, u64 budget_fft) {
    return lattice_count(integer_widths(box), m, B0, budget_fft);
}

u128 lattice_count_nested(const std::array<i64, 9>& w, u64 m, const VSlice& B0) {
    check_lattice_args(m, B0);
    double states = 1;
    for (i64 x : w) states *= double(2 * x / i64(m) + 1);
    if (states > 5e9) throw BudgetExceeded("lattice_count_nested: too many states", states);
    std::array<std::vector<i64>, 9> vals;
    for (int k = 0; k < 9; ++k) vals[k] = residue_values(w[k], m, B0.b[k]);
    u128 n = 0;
    VSlice B;
    for (i64 b11 : vals[v11])
        for (i64 b12 : vals[v12])
            for (i64 b13 : vals[v13])
                for (i64 b14 : vals[v14])
                    for (i64 b22 : vals[v22])
                        for (i64 b24 : vals[v24])
                            for (i64 b33 : vals[v33])
                                for (i64 b34 : vals[v34])
                                    for (i64 b44 : vals[v44]) {
                                        B.b = {b11, b12, b13, b14, b22, b24, b33, b34, b44};
                                        if (q_form(B) == 0) ++n;
                                    }
    return n;
}

MainTermComparison lattice_main_term(const BoxSpec& box, u64 m, const VSlice& B0, const IntervalValue& S_inf,
                                     const IntervalValue& S_q) {
    MainTermComparison out;
    out.m = m;
    out.B0 = B0;
    out.count = lattice_count(box, m, B0);
    double pred = S_inf.mid() * S_q.mid() / std::pow(double(m), 8);
    if (m > 1)
        for (auto& pe : factorize(m)) pred /= singular_series_p(pe.p, 1e-13).mid();
    out.predicted = pred;
    out.ratio = double(out.count) / pred;
    return out;
}

} // namespace sqf
