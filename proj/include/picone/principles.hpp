#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "picone/forms.hpp"
#include "picone/vec.hpp"

// Convexity gap functionals. Every function here evaluates both sides of one
// inequality at concrete inputs and returns rhs - lhs; the theory says each
// gap is >= 0 on its stated domain, and the sharpness constructions below the
// gaps produce explicit violations just outside those domains. The functions
// are deliberately arranged so a nonnegative return IS the inequality: tests
// and the verify CLI only ever look at the sign (up to rounding slack).

namespace picone {

// Value and gradient of a positive function at one point.
struct PointSample {
    double u = 0.0;
    Vec grad;
};

// (mass, momentum) argument of the kinetic-energy functional.
struct KineticPoint {
    double m = 0.0;
    Vec phi;
};

// Values of two positive functions u, v at the two endpoints of a difference.
struct DiscretePair {
    double ux = 0.0, uy = 0.0;
    double vx = 0.0, vy = 0.0;
};

namespace detail {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Largest usable single homogeneity degree for convexity statements: the
// anisotropic family satisfies them whenever the parameter is admissible for
// the smallest exponent.
inline double convexity_degree(const HomogeneousForm& H) { return H.min_degree(); }

inline void require_homogeneous(const HomogeneousForm& H, const char* who) {
    if (!H.homogeneous())
        throw std::domain_error(std::string(who) +
                                ": requires a single homogeneity degree (no anisotropic forms)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kinetic-energy convexity: (m, phi) -> H(phi) / m^beta on m > 0.
// Convex for 0 <= beta <= p - 1 (p the relevant degree of H); fails beyond.
// ---------------------------------------------------------------------------

inline double kinetic_energy(const HomogeneousForm& H, const KineticPoint& pt, double beta) {
    detail::require(pt.m > 0.0, "kinetic_energy: mass must be positive");
    detail::require(beta >= 0.0, "kinetic_energy: beta must be >= 0");
    if (beta == 0.0) return H.eval(pt.phi);
    return H.eval(pt.phi) / std::pow(pt.m, beta);
}

// Midpoint-style convexity gap along the segment (1-t) pt0 + t pt1.
inline double kinetic_convexity_gap(const HomogeneousForm& H, const KineticPoint& pt0,
                                    const KineticPoint& pt1, double beta, double t) {
    detail::require(beta <= detail::convexity_degree(H) - 1.0,
                    "kinetic_convexity_gap: convexity requires beta <= p - 1");
    detail::require(t >= 0.0 && t <= 1.0, "kinetic_convexity_gap: t must lie in [0, 1]");
    detail::require(pt0.phi.size() == pt1.phi.size(), "kinetic_convexity_gap: dimension mismatch");
    KineticPoint mid;
    mid.m = (1.0 - t) * pt0.m + t * pt1.m;
    mid.phi.resize(pt0.phi.size());
    for (std::size_t i = 0; i < mid.phi.size(); ++i)
        mid.phi[i] = (1.0 - t) * pt0.phi[i] + t * pt1.phi[i];
    double e0 = kinetic_energy(H, pt0, beta);
    double e1 = kinetic_energy(H, pt1, beta);
    return (1.0 - t) * e0 + t * e1 - kinetic_energy(H, mid, beta);
}

// ---------------------------------------------------------------------------
// Hidden convexity: the curve sigma_t = ((1-t) u^q + t v^q)^{1/q} is the
// segment in the u^q variable, and t -> H(grad sigma_t) is convex for
// 1 < q <= p. sigma_interpolate and grad_sigma expose the curve itself.
// ---------------------------------------------------------------------------

inline double sigma_interpolate(double u0, double u1, double q, double t) {
    detail::require(q > 1.0, "sigma_interpolate: q must be > 1");
    detail::require(u0 >= 0.0 && u1 >= 0.0, "sigma_interpolate: values must be >= 0");
    detail::require(t >= 0.0 && t <= 1.0, "sigma_interpolate: t must lie in [0, 1]");
    return std::pow((1.0 - t) * std::pow(u0, q) + t * std::pow(u1, q), 1.0 / q);
}

// Gradient of sigma_t from endpoint samples:
//   grad sigma_t = sigma_t^{1-q} [ (1-t) u^{q-1} grad u + t v^{q-1} grad v ].
// If sigma_t = 0 (both values vanish) the curve point sits at the bottom of
// the cone; the gradient is defined only when both endpoint gradients vanish.
inline Vec grad_sigma(const PointSample& s0, const PointSample& s1, double q, double t) {
    detail::require(q > 1.0, "grad_sigma: q must be > 1");
    detail::require(t >= 0.0 && t <= 1.0, "grad_sigma: t must lie in [0, 1]");
    detail::require(s0.grad.size() == s1.grad.size(), "grad_sigma: dimension mismatch");
    double st = sigma_interpolate(s0.u, s1.u, q, t);
    Vec g(s0.grad.size(), 0.0);
    if (st == 0.0) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (s0.grad[i] != 0.0 || s1.grad[i] != 0.0)
                throw std::domain_error("grad_sigma: sigma_t = 0 with nonzero gradients");
        return g;
    }
    double a = (1.0 - t) * std::pow(s0.u, q - 1.0);
    double b = t * std::pow(s1.u, q - 1.0);
    double c = std::pow(st, 1.0 - q);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = c * (a * s0.grad[i] + b * s1.grad[i]);
    return g;
}

inline double hidden_convexity_gap(const HomogeneousForm& H, const PointSample& s0,
                                   const PointSample& s1, double q, double t) {
    detail::require(q > 1.0 && q <= detail::convexity_degree(H),
                    "hidden_convexity_gap: requires 1 < q <= p");
    Vec gs = grad_sigma(s0, s1, q, t);
    return (1.0 - t) * H.eval(s0.grad) + t * H.eval(s1.grad) - H.eval(gs);
}

// ---------------------------------------------------------------------------
// Picone inequalities. Strong form (single degree p, 1 < q <= p):
//   (1/p) < grad H(grad u), grad(v^q / u^{q-1}) >
//       <= H(grad v)^{q/p} H(grad u)^{(p-q)/p},
// with grad(v^q/u^{q-1}) = q (v/u)^{q-1} grad v - (q-1) (v/u)^q grad u.
// Weak form replaces the right side by the Young-split
//   (q/p) H(grad v) + ((p-q)/p) H(grad u),
// which is what integrates against eigenfunctions.
// ---------------------------------------------------------------------------

struct PiconeGap {
    double lhs = 0.0;
    double rhs = 0.0;       // strong right side
    double rhs_weak = 0.0;  // Young-split right side
    double gap = 0.0;       // rhs - lhs
    double gap_weak = 0.0;  // rhs_weak - lhs
};

inline PiconeGap picone_gap(const HomogeneousForm& H, const PointSample& su,
                            const PointSample& sv, double q) {
    detail::require_homogeneous(H, "picone_gap");
    double p = H.degree();
    detail::require(q > 1.0 && q <= p, "picone_gap: requires 1 < q <= p");
    detail::require(su.u > 0.0 && sv.u >= 0.0, "picone_gap: u must be positive, v nonnegative");
    detail::require(su.grad.size() == sv.grad.size(), "picone_gap: dimension mismatch");

    double ratio = sv.u / su.u;
    double rq1 = std::pow(ratio, q - 1.0);
    double rq = rq1 * ratio;
    Vec gH = H.grad(su.grad);
    double lhs = 0.0;
    for (std::size_t i = 0; i < gH.size(); ++i)
        lhs += gH[i] * (q * rq1 * sv.grad[i] - (q - 1.0) * rq * su.grad[i]);
    lhs /= p;

    double Hu = H.eval(su.grad);
    double Hv = H.eval(sv.grad);
    PiconeGap out;
    out.lhs = lhs;
    // 0^0 = 1 when q = p; H(grad u) = 0 with q < p annihilates the product,
    // matching lhs = 0 (the gradient of H vanishes on {H = 0}).
    out.rhs = std::pow(Hv, q / p) * pow_abs(Hu, (p - q) / p);
    out.rhs_weak = (q / p) * Hv + ((p - q) / p) * Hu;
    out.gap = out.rhs - lhs;
    out.gap_weak = out.rhs_weak - lhs;
    return out;
}

// One-sided derivative at t = 0 of t -> H(grad sigma_t) along the hidden
// convexity curve from u to v, in closed form:
//   < grad H(grad u), grad v > (v/u)^{q-1}
//     - (p(q-1)/q) H(grad u) (v/u)^q - (p/q) H(grad u).
// Convexity of the curve bounds it by the secant slope H(grad v) - H(grad u).
inline double derivative_at_zero(const HomogeneousForm& H, const PointSample& su,
                                 const PointSample& sv, double q) {
    detail::require_homogeneous(H, "derivative_at_zero");
    double p = H.degree();
    detail::require(q > 1.0 && q <= p, "derivative_at_zero: requires 1 < q <= p");
    detail::require(su.u > 0.0 && sv.u > 0.0, "derivative_at_zero: values must be positive");
    double ratio = sv.u / su.u;
    double rq1 = std::pow(ratio, q - 1.0);
    double rq = rq1 * ratio;
    double Hu = H.eval(su.grad);
    Vec gH = H.grad(su.grad);
    return dot(gH, sv.grad) * rq1 - (p * (q - 1.0) / q) * Hu * rq - (p / q) * Hu;
}

// ---------------------------------------------------------------------------
// Discrete (two-point) versions. Differences play the role of gradients; the
// same exponent windows apply.
// ---------------------------------------------------------------------------

// |u(x)-u(y)|^{p-2} (u(x)-u(y)) [ v(x)^q/u(x)^{q-1} - v(y)^q/u(y)^{q-1} ]
//   <= |v(x)-v(y)|^q |u(x)-u(y)|^{p-q}
inline double discrete_picone_gap(const DiscretePair& d, double p, double q) {
    detail::require(p > 1.0, "discrete_picone_gap: p must be > 1");
    detail::require(q > 1.0 && q <= p, "discrete_picone_gap: requires 1 < q <= p");
    detail::require(d.ux > 0.0 && d.uy > 0.0,
                    "discrete_picone_gap: u must be positive at both points");
    detail::require(d.vx >= 0.0 && d.vy >= 0.0, "discrete_picone_gap: v must be >= 0");
    double du = d.ux - d.uy;
    double dv = d.vx - d.vy;
    double lhs = signed_pow(du, p - 1.0) * (std::pow(d.vx, q) / std::pow(d.ux, q - 1.0) -
                                            std::pow(d.vy, q) / std::pow(d.uy, q - 1.0));
    double rhs = pow_abs(dv, q) * pow_abs(du, p - q);
    return rhs - lhs;
}

// |sigma_t(x) - sigma_t(y)|^p <= (1-t) |u0(x)-u0(y)|^p + t |u1(x)-u1(y)|^p
// where sigma_t is the pointwise q-interpolation, 1 < q <= p.
inline double discrete_hidden_gap(const DiscretePair& d, double p, double q, double t) {
    detail::require(p > 1.0, "discrete_hidden_gap: p must be > 1");
    detail::require(q > 1.0 && q <= p, "discrete_hidden_gap: requires 1 < q <= p");
    // Here (ux, uy) are the endpoint values of u0 and (vx, vy) those of u1.
    double sx = sigma_interpolate(d.ux, d.vx, q, t);
    double sy = sigma_interpolate(d.uy, d.vy, q, t);
    return (1.0 - t) * pow_abs(d.ux - d.uy, p) + t * pow_abs(d.vx - d.vy, p) -
           pow_abs(sx - sy, p);
}

// Scalar inequality the discrete Picone reduces to:
//   (1-t)^{q-1} (A^q - t) <= |A - t|^q   for A >= 0, 0 <= t <= 1, q > 1.
inline double elementary_gap(double A, double t, double q) {
    detail::require(A >= 0.0, "elementary_gap: A must be >= 0");
    detail::require(t >= 0.0 && t <= 1.0, "elementary_gap: t must lie in [0, 1]");
    detail::require(q > 1.0, "elementary_gap: q must be > 1");
    return pow_abs(A - t, q) - std::pow(1.0 - t, q - 1.0) * (std::pow(A, q) - t);
}

// ---------------------------------------------------------------------------
// Sharpness constructions: explicit violations just outside the admissible
// parameter windows. Both use the ray (m1, phi1) = c (m0, phi0) resp.
// u1 = c u0 on which the interpolated energy has a closed form.
// ---------------------------------------------------------------------------

// Convexity of H(phi)/m^beta fails for p-1 < beta < p; the returned value is
//   [ ((1-t) + t c)^{p-beta} - ((1-t) + t c^{p-beta}) ] * H(phi0) / m0^beta,
// strictly positive by strict concavity of tau^{p-beta} when 0 < p-beta < 1.
inline double kinetic_sharpness_violation(const HomogeneousForm& H, double beta, double c,
                                          double t, double m0, std::span<const double> phi0) {
    detail::require_homogeneous(H, "kinetic_sharpness_violation");
    double p = H.degree();
    detail::require(beta > p - 1.0 && beta < p,
                    "kinetic_sharpness_violation: this construction needs p-1 < beta < p");
    detail::require(c > 1.0, "kinetic_sharpness_violation: c must be > 1");
    detail::require(t > 0.0 && t < 1.0, "kinetic_sharpness_violation: t must lie in (0, 1)");
    detail::require(m0 > 0.0, "kinetic_sharpness_violation: m0 must be positive");
    double e = p - beta;
    double base = H.eval(phi0) / std::pow(m0, beta);
    detail::require(base > 0.0, "kinetic_sharpness_violation: phi0 must not be in {H = 0}");
    double mid = std::pow((1.0 - t) + t * c, e);
    double chord = (1.0 - t) + t * std::pow(c, e);
    return (mid - chord) * base;
}

// Hidden convexity fails for q > p; along u1 = c u0 the violation is
//   [ ((1-t) + t c^q)^{p/q} - ((1-t) + t c^p) ] * H(grad u0),
// strictly positive by strict concavity of tau^{p/q}.
inline double hidden_sharpness_violation(const HomogeneousForm& H, double q, double c,
                                         double t, std::span<const double> grad_u0) {
    detail::require_homogeneous(H, "hidden_sharpness_violation");
    double p = H.degree();
    detail::require(q > p, "hidden_sharpness_violation: this construction needs q > p");
    detail::require(c > 1.0, "hidden_sharpness_violation: c must be > 1");
    detail::require(t > 0.0 && t < 1.0, "hidden_sharpness_violation: t must lie in (0, 1)");
    double H0 = H.eval(grad_u0);
    detail::require(H0 > 0.0, "hidden_sharpness_violation: grad_u0 must not be in {H = 0}");
    double mid = std::pow((1.0 - t) + t * std::pow(c, q), p / q);
    double chord = (1.0 - t) + t * std::pow(c, p);
    return (mid - chord) * H0;
}

// ---------------------------------------------------------------------------
// Discrete Fisher information, two routes:
//   A: sum_i H(grad rho_i / rho_i) rho_i^{p-beta} nu_i
//   B: (p/(p-beta))^p sum_i H(grad(rho^{(p-beta)/p})_i) nu_i
// Route B pushes the density power through the gradient by homogeneity; the
// two must agree identically, which makes the pair a built-in self-check.
// ---------------------------------------------------------------------------

struct DiscreteDensity {
    Vec values;             // rho_i >= 0
    Vec weights;            // nu_i > 0, summing to 1
    std::vector<Vec> grads; // grad rho_i, one vector per node
};

struct FisherInfo {
    double value = 0.0;      // route A
    double alt_value = 0.0;  // route B
};

inline FisherInfo fisher_information(const HomogeneousForm& H, const DiscreteDensity& rho,
                                     double beta) {
    detail::require_homogeneous(H, "fisher_information");
    double p = H.degree();
    detail::require(beta >= 0.0 && beta <= p - 1.0,
                    "fisher_information: requires 0 <= beta <= p - 1");
    std::size_t n = rho.values.size();
    detail::require(rho.weights.size() == n && rho.grads.size() == n,
                    "fisher_information: inconsistent density arrays");
    double a = (p - beta) / p;
    FisherInfo out;
    for (std::size_t i = 0; i < n; ++i) {
        detail::require(rho.weights[i] > 0.0, "fisher_information: weights must be positive");
        double r = rho.values[i];
        detail::require(r >= 0.0, "fisher_information: density values must be >= 0");
        if (r == 0.0) {
            for (double g : rho.grads[i])
                if (g != 0.0)
                    throw std::domain_error(
                        "fisher_information: zero density with nonzero gradient");
            continue;
        }
        Vec scaled_a(rho.grads[i].size());
        for (std::size_t k = 0; k < scaled_a.size(); ++k) scaled_a[k] = rho.grads[i][k] / r;
        out.value += H.eval(scaled_a) * std::pow(r, p - beta) * rho.weights[i];

        // grad(rho^a) = a rho^{a-1} grad rho
        Vec scaled_b(rho.grads[i].size());
        double cb = a * std::pow(r, a - 1.0);
        for (std::size_t k = 0; k < scaled_b.size(); ++k) scaled_b[k] = cb * rho.grads[i][k];
        out.alt_value += H.eval(scaled_b) * rho.weights[i];
    }
    out.alt_value *= std::pow(1.0 / a, p);
    return out;
}

}  // namespace picone
