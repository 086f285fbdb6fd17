#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace sqf {

inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// [lower, upper] with the true value inside; ops widen by one ulp each side
struct IntervalValue {
    double lower = 0, upper = 0;
    std::string description;

    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
    bool contains(const IntervalValue& o) const { return lower <= o.lower && o.upper <= upper; }
    bool overlaps(const IntervalValue& o) const { return lower <= o.upper && o.lower <= upper; }

    static IntervalValue point(double x) { return {round_down(x), round_up(x), {}}; }
    static IntervalValue around(double x, double err) {
        return {round_down(x - err), round_up(x + err), {}};
    }
};

inline IntervalValue operator+(const IntervalValue& a, const IntervalValue& b) {
    return {round_down(a.lower + b.lower), round_up(a.upper + b.upper), {}};
}

inline IntervalValue operator-(const IntervalValue& a, const IntervalValue& b) {
    return {round_down(a.lower - b.upper), round_up(a.upper - b.lower), {}};
}

inline IntervalValue operator*(const IntervalValue& a, const IntervalValue& b) {
    double c[4] = {a.lower * b.lower, a.lower * b.upper, a.upper * b.lower, a.upper * b.upper};
    double lo = c[0], hi = c[0];
    for (double v : c) {
        lo = std::fmin(lo, v);
        hi = std::fmax(hi, v);
    }
    return {round_down(lo), round_up(hi), {}};
}

// b must not contain zero
inline IntervalValue operator/(const IntervalValue& a, const IntervalValue& b) {
    double c[4] = {a.lower / b.lower, a.lower / b.upper, a.upper / b.lower, a.upper / b.upper};
    double lo = c[0], hi = c[0];
    for (double v : c) {
        lo = std::fmin(lo, v);
        hi = std::fmax(hi, v);
    }
    return {round_down(lo), round_up(hi), {}};
}

} // namespace sqf
