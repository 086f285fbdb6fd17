#pragma once

#include <complex>

namespace sqf {

// C(x) = int_0^x cos(pi t^2/2) dt, S(x) likewise with sin
struct Fresnel {
    double C, S;
};
Fresnel fresnel(double x);

// Si(w)/w, equal to 1 at w = 0
double si_ratio(double w);

// int_0^1 e(-2 s v^2) dv with e(t) = exp(2 pi i t)
std::complex<double> square_phase_integral(double s);

// int_lo^hi e(alpha x^2 + beta x + gamma) dx in closed form
std::complex<double> quadratic_phase_integral(double alpha, double beta, double gamma, double lo, double hi);

inline std::complex<double> expi(double turns) {
    constexpr double tau = 6.283185307179586476925286766559;
    return std::polar(1.0, tau * turns);
}

} // namespace sqf
