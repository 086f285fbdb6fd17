#include "sqf/circle.hpp"
#include "sqf/parallel.hpp"
#include "sqf/special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>

namespace sqf {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PairIdx {
    int i, j;
    double coef;
};
constexpr PairIdx kPairs[4] = {{v11, v44, 1}, {v22, v33, 1}, {v12, v34, 2}, {v13, v24, 2}};

// Fourier transform of the box measure pushed forward by q, at theta
std::complex<double> phi(const BoxSpec& box, double theta) {
    double v = 1;
    for (const auto& pr : kPairs) {
        double P = box.half[pr.i] * box.half[pr.j];
        v *= 4 * P * si_ratio(2 * kPi * pr.coef * theta * P);
    }
    double Z = box.half[v14];
    return v * 2 * Z * square_phase_integral(theta * Z * Z);
}

// |phi(theta)| <= K theta^-9/2 from |Si(w)/w| <= Si(pi)/w and |C + iS| <= 1
double phi_tail_constant() {
    const double si_pi = 1.8519370519824663;
    double K = 1;
    for (const auto& pr : kPairs) K *= 4 * si_pi / (2 * kPi * pr.coef);
    return K * 2 / std::sqrt(8.0);
}

struct GslWork {
    gsl_integration_workspace* w;
    explicit GslWork(size_t n) : w(gsl_integration_workspace_alloc(n)) {}
    ~GslWork() { gsl_integration_workspace_free(w); }
};

double gsl_thunk(double x, void* params) { return (*static_cast<std::function<double(double)>*>(params))(x); }

// 2 int_0^U Re phi(u/s) k(u/s) du / s with the unit-length pieces integrated separately
struct Quad {
    double value, error;
};

Quad integrate_slab(const BoxSpec& box, double eps, double scale, double U, double rel_tol) {
    std::function<double(double)> f = [&](double u) {
        double th = u / scale;
        double k = 1;
        if (eps > 0 && th > 0) {
            double x = 2 * kPi * eps * th;
            k = std::sin(x) / x;
        }
        return phi(box, th).real() * k;
    };
    gsl_function F{&gsl_thunk, &f};
    GslWork work(2000);
    double total = 0, err = 0;
    double step = 0.5;
    for (double a = 0; a < U; a += step) {
        double r = 0, e = 0;
        int st = gsl_integration_qag(&F, a, a + step, 0, rel_tol, 2000, GSL_INTEG_GAUSS61, work.w, &r, &e);
        if (st != GSL_SUCCESS && st != GSL_EROUND) throw std::runtime_error("singular_integral: quadrature failed");
        total += r;
        err += e;
    }
    return {2 * total / scale, 2 * err / scale};
}

} // namespace

BoxSpec BoxSpec::standard(double X, double c2) {
    if (!(X > 0) || !(c2 > 0)) throw std::invalid_argument("BoxSpec: X and c2 must be positive");
    BoxSpec b;
    b.X = X;
    b.c2 = c2;
    b.c1 = 1;
    b.half.fill(c2 * X);
    return b;
}

bool BoxSpec::satisfies_products(double rel_tol) const {
    double target = c2 * c2 * X * X;
    auto close = [&](double a, double b) { return std::fabs(a - b) <= rel_tol * std::fabs(b); };
    if (!close(half[v14], c2 * X)) return false;
    for (const auto& pr : kPairs)
        if (!close(half[pr.i] * half[pr.j], target)) return false;
    return true;
}

bool BoxSpec::satisfies_widths(double delta) const {
    double lo = std::pow(X, 1 - 2 * delta) / c1, hi = c1 * std::pow(X, 1 + 2 * delta);
    for (double h : half)
        if (h < lo * (1 - 1e-12) || h > hi * (1 + 1e-12)) return false;
    return true;
}

double BoxSpec::volume() const {
    double v = 1;
    for (double h : half) v *= 2 * h;
    return v;
}

BoxSpec BoxSpec::scaled(double k) const {
    BoxSpec b = *this;
    for (double& h : b.half) h *= k;
    b.X *= k;
    return b;
}

IntegralResult singular_integral(const BoxSpec& box, IntegralMethod method, const IntegralOptions& opt) {
    for (double h : box.half)
        if (!(h > 0)) throw std::invalid_argument("singular_integral: half-widths must be positive");
    IntegralResult out;
    double Pmax = box.half[v14] * box.half[v14];
    for (const auto& pr : kPairs) Pmax = std::max(Pmax, box.half[pr.i] * box.half[pr.j]);

    if (method == IntegralMethod::slab) {
        gsl_set_error_handler_off();
        const double U = 300; // in units of 1/Pmax
        double tail = 2 * phi_tail_constant() * std::pow(U / Pmax, -3.5) / 3.5;
        double scaleX2 = box.X * box.X * 1e-3;
        double qerr = 0;
        for (int k = 0; k < 3; ++k) {
            Quad r = integrate_slab(box, opt.eps_fractions[k] * scaleX2, Pmax, U, opt.rel_tol);
            out.slab_values[k] = r.value;
            qerr = std::max(qerr, r.error);
        }
        Quad z = integrate_slab(box, 0.0, Pmax, U, opt.rel_tol);
        out.zero_width_value = z.value;
        qerr = std::max(qerr, z.error);
        // Richardson in eps^2 with eps, eps/2, eps/4
        const auto& s = out.slab_values;
        double r1 = (4 * s[1] - s[0]) / 3, r2 = (4 * s[2] - s[1]) / 3;
        double rich = (16 * r2 - r1) / 15;
        double radius = std::fabs(rich - r2) + std::fabs(rich - z.value) + 3 * qerr + tail;
        out.tail_bound = tail;
        out.value = IntervalValue::around(rich, radius);
        out.value.description = "slab volume over 2 eps via the Fourier side, Richardson extrapolated in eps";
        return out;
    }

    // Monte Carlo: hits of |q| < eps, fixed batches so the result does not depend on thread count
    double eps = 0.01 * Pmax;
    const u64 batches = 64;
    u64 per = (opt.samples + batches - 1) / batches;
    std::vector<u64> hits(batches, 0);
    parallel_chunks(batches, opt.threads, [&](size_t b0, size_t b1, int) {
        for (size_t bt = b0; bt < b1; ++bt) {
            std::seed_seq seq{opt.seed, u64(bt), u64(0x9e3779b97f4a7c15ULL)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> U(-1.0, 1.0);
            u64 h = 0;
            for (u64 n = 0; n < per; ++n) {
                double x[9];
                for (int k = 0; k < 9; ++k) x[k] = U(rng) * box.half[k];
                double q = -(x[v11] * x[v44] + x[v22] * x[v33] + 2 * x[v12] * x[v34] + 2 * x[v13] * x[v24] +
                             2 * x[v14] * x[v14]);
                if (std::fabs(q) < eps) ++h;
            }
            hits[bt] = h;
        }
    });
    u64 H = 0;
    for (u64 h : hits) H += h;
    double N = double(per * batches);
    double frac = double(H) / N;
    double scale = box.volume() / (2 * eps);
    double sd = std::sqrt(frac * (1 - frac) / N) * scale;
    out.hits = H;
    out.value = IntervalValue::around(frac * scale, opt.z * sd);
    out.value.description = "Monte Carlo estimate of the slab density, " + std::to_string(u64(N)) + " samples";
    return out;
}

} // namespace sqf
