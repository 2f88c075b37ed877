#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace picone {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

// a + t*b
inline Vec axpy(double t, std::span<const double> b, std::span<const double> a) {
    Vec r(a.begin(), a.end());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * b[i];
    return r;
}

inline Vec scaled(double t, std::span<const double> a) {
    Vec r(a.begin(), a.end());
    for (double& x : r) x *= t;
    return r;
}

// sign(x)*|x|^(e-1), the derivative direction of |x|^e up to the factor e.
// Continuous at 0 for e > 1, where the value is 0.
inline double signed_pow(double x, double em1) {
    if (x == 0.0) return 0.0;
    double a = std::pow(std::abs(x), em1);
    return x > 0.0 ? a : -a;
}

// |x|^e with the 0^0 = 1 convention used throughout the gap formulas.
inline double pow_abs(double x, double e) {
    if (x == 0.0) return e == 0.0 ? 1.0 : 0.0;
    return std::pow(std::abs(x), e);
}

}  // namespace picone
