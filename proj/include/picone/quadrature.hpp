#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace picone {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 10000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // accumulated embedded-rule estimate
    int subdivisions = 0;
    bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(const F& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kGK15Nodes[i]);
        fv[14 - i] = f(c + h * kGK15Nodes[i]);
    }
    fv[7] = f(c);
    double kron = kGK15WeightsK[7] * fv[7];
    double gauss = kGK15WeightsG[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kron += kGK15WeightsK[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kGK15WeightsG[i / 2] * (fv[i] + fv[14 - i]);
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = kron * h;
    s.error = std::abs((kron - gauss) * h);
    return s;
}

}  // namespace detail

// Globally adaptive quadrature of f over [a, b]: bisect the segment with the
// largest embedded Gauss/Kronrod error estimate until the accumulated error
// meets max(abs_tol, rel_tol * |value|) or the subdivision budget runs out.
// Integrable endpoint singularities are handled by the bisection cascade.
inline QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                           double b, const QuadratureConfig& cfg = {}) {
    if (!(b > a)) throw std::invalid_argument("integrate_adaptive: requires b > a");
    std::priority_queue<detail::Segment> heap;
    detail::Segment first = detail::gk15(f, a, b);
    double total_value = first.value;
    double total_error = first.error;
    heap.push(first);
    QuadratureResult out;
    out.subdivisions = 1;
    while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value))) {
        if (out.subdivisions >= cfg.max_subdivisions) {
            out.value = total_value;
            out.error = total_error;
            out.converged = false;
            return out;
        }
        detail::Segment worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Segment at rounding resolution: keep its estimate and move on.
            total_error -= worst.error;                      // stop re-selecting it
            heap.push({worst.a, worst.b, worst.value, 0.0});
            continue;
        }
        detail::Segment left = detail::gk15(f, worst.a, mid);
        detail::Segment right = detail::gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++out.subdivisions;
    }
    out.value = total_value;
    out.error = total_error;
    out.converged = true;
    return out;
}

}  // namespace picone
