#include "sqf/special.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <limits>

namespace sqf {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

Fresnel fresnel(double x) {
    const double eps = 1e-16, fpmin = 1e-300, xmin = 1.5;
    const int maxit = 200;
    double ax = std::fabs(x);
    double c, s;
    if (ax < std::sqrt(fpmin)) {
        s = 0;
        c = ax;
    } else if (ax <= xmin) {
        // power series, alternating between the two sums
        double sum = 0, sums = 0, sumc = ax, sign = 1, fact = kPi / 2 * ax * ax, term = ax;
        bool odd = true;
        int n = 3;
        for (int k = 1; k <= maxit; ++k) {
            term *= fact / k;
            sum += sign * term / n;
            double test = std::fabs(sum) * eps;
            if (odd) {
                sign = -sign;
                sums = sum;
                sum = sumc;
            } else {
                sumc = sum;
                sum = sums;
            }
            if (term < test) break;
            odd = !odd;
            n += 2;
        }
        s = sums;
        c = sumc;
    } else {
        // continued fraction for the complementary error function, modified Lentz
        double pix2 = kPi * ax * ax;
        std::complex<double> b(1.0, -pix2), cc(1.0 / fpmin, 0.0), d = 1.0 / b, h = d;
        int n = -1;
        for (int k = 2; k <= maxit; ++k) {
            n += 2;
            double a = -double(n) * double(n + 1);
            b += 4.0;
            d = 1.0 / (a * d + b);
            cc = b + a / cc;
            std::complex<double> del = cc * d;
            h *= del;
            if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < eps) break;
        }
        h *= std::complex<double>(ax, -ax);
        std::complex<double> cs = std::complex<double>(0.5, 0.5) *
                                  (1.0 - std::complex<double>(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
        c = cs.real();
        s = cs.imag();
    }
    if (x < 0) {
        c = -c;
        s = -s;
    }
    return {c, s};
}

double si_ratio(double w) {
    if (std::fabs(w) < 1e-4) return 1.0 - w * w / 18.0;
    return gsl_sf_Si(w) / w;
}

std::complex<double> square_phase_integral(double s) {
    // with v = t / sqrt(8|s|): int_0^1 cos(4 pi s v^2) - i sin(...) dv
    if (s == 0) return 1.0;
    double x = std::sqrt(8.0 * std::fabs(s));
    Fresnel f = fresnel(x);
    double sg = s > 0 ? 1.0 : -1.0;
    return std::complex<double>(f.C, -sg * f.S) / x;
}

std::complex<double> quadratic_phase_integral(double alpha, double beta, double gamma, double lo, double hi) {
    if (alpha == 0) {
        if (beta == 0) return expi(gamma) * (hi - lo);
        return (expi(beta * hi + gamma) - expi(beta * lo + gamma)) / std::complex<double>(0, 2 * kPi * beta);
    }
    // alpha (x + beta/(2 alpha))^2 + gamma - beta^2/(4 alpha)
    double shift = beta / (2 * alpha);
    double g = gamma - beta * beta / (4 * alpha);
    double k = 2 * std::sqrt(std::fabs(alpha));
    Fresnel f1 = fresnel(k * (hi + shift)), f0 = fresnel(k * (lo + shift));
    double sg = alpha > 0 ? 1.0 : -1.0;
    std::complex<double> val(f1.C - f0.C, sg * (f1.S - f0.S));
    return expi(g) * val / k;
}

} // namespace sqf
