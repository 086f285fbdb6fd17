#include "sqf/circle.hpp"
#include "sqf/orbits.hpp"
#include "sqf/special.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace sqf {

SelbergTable selberg_quantities(u64 p_lo, u64 p_hi, double D, double z) {
    if (p_lo < 7) throw std::invalid_argument("selberg_quantities: primes must be >= 7");
    if (p_hi < p_lo) throw std::invalid_argument("selberg_quantities: empty prime range");
    if (!(D >= 1) || !(z > 0)) throw std::invalid_argument("selberg_quantities: need D >= 1, z > 0");
    SelbergTable t;
    t.D = D;
    t.z = z;
    u64 pass = 0;
    for (u64 p : primes_up_to(p_hi)) {
        if (p < p_lo) continue;
        SelbergRow row;
        row.p = p;
        row.dp = count_dp(p, DpMethod::orbit_formula);
        row.Sp = singular_series_p(p, 1e-14);
        row.g = double(row.dp) / (row.Sp.mid() * std::pow(double(p), 8));
        row.h = row.g / (1 - row.g);
        row.in_band = row.g >= 1.0 / 32 && row.g <= 7.0 / 8;
        pass += row.in_band;
        t.rows.push_back(row);
    }
    t.pass_fraction = t.rows.empty() ? 0 : double(pass) / double(t.rows.size());

    // H = sum of h(m) over squarefree m < sqrt D built from tabulated primes below z
    std::vector<double> hs, ps;
    for (auto& r : t.rows)
        if (double(r.p) < z) {
            ps.push_back(double(r.p));
            hs.push_back(r.h);
        }
    double lim = std::sqrt(D);
    std::function<void(size_t, double, double)> dfs = [&](size_t from, double m, double h) {
        t.H += h;
        ++t.terms;
        for (size_t k = from; k < ps.size(); ++k) {
            if (m * ps[k] >= lim) break;
            dfs(k + 1, m * ps[k], h * hs[k]);
        }
    };
    if (lim > 1) dfs(0, 1, 1);
    return t;
}

double exp_sum_vs_integral_check(const QuadraticPhase& f, double lo, double hi) {
    if (!(hi >= lo)) throw std::invalid_argument("exp_sum_vs_integral_check: empty interval");
    if (std::fabs(f.derivative(lo)) > 0.5 || std::fabs(f.derivative(hi)) > 0.5)
        throw std::invalid_argument("exp_sum_vs_integral_check: |f'| exceeds 1/2 on the interval");
    if (hi - lo > 1e8) throw BudgetExceeded("exp_sum_vs_integral_check: interval too long", hi - lo);
    std::complex<double> s = 0;
    for (double n = std::ceil(lo); n <= hi; n += 1) {
        // reduce the phase before exponentiating to keep it accurate for large n
        double ph = std::fmod(f.alpha * n * n, 1.0) + std::fmod(f.beta * n, 1.0) + f.gamma;
        s += expi(ph);
    }
    return std::abs(s - quadratic_phase_integral(f.alpha, f.beta, f.gamma, lo, hi));
}

std::vector<DistinguishedSample> distinguished_fraction(const std::array<i64, 9>& w, const std::vector<u64>& primes,
                                                        u64 samples, u64 seed) {
    if (w[v11] < 1) throw std::invalid_argument("distinguished_fraction: need X11 >= 1");
    for (u64 p : primes)
        if (p < 3 || !is_prime(p)) throw std::invalid_argument("distinguished_fraction: primes must be odd");
    std::vector<DistinguishedSample> out;
    for (u64 p : primes) out.push_back({p, 0, 0, 0});
    std::mt19937_64 rng(seed);
    auto draw = [&](i64 x) { return std::uniform_int_distribution<i64>(-x, x)(rng); };
    u64 found = 0, attempts = 0;
    while (found < samples) {
        if (++attempts > 10000 * samples + 100000)
            throw BudgetExceeded("distinguished_fraction: too few q = 0 points found", double(attempts));
        VSlice B;
        for (int k = 0; k < 8; ++k) B.b[k] = draw(w[k]);
        if (B.b[v11] == 0) continue;
        // solve q = 0 for b44
        i128 rest = i128(B.b[v22]) * B.b[v33] + 2 * (i128(B.b[v12]) * B.b[v34] + i128(B.b[v13]) * B.b[v24] +
                                                     i128(B.b[v14]) * B.b[v14]);
        if (rest % B.b[v11] != 0) continue;
        i128 b44 = -rest / B.b[v11];
        if (b44 > w[v44] || b44 < -w[v44]) continue;
        B.b[v44] = i64(b44);
        ++found;
        SymMatrix M = B.to_matrix();
        for (auto& s : out) {
            ++s.sampled;
            FpMatrix F = FpMatrix::from(M, s.p);
            if (discriminant_fp(F) == 0) continue;
            ++s.nondegenerate;
            s.distinguished += is_distinguished_fp(F);
        }
    }
    return out;
}

} // namespace sqf
