#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "picone/gagliardo.hpp"
#include "picone/grid.hpp"
#include "picone/parallel.hpp"
#include "picone/quadrature.hpp"
#include "picone/rng.hpp"
#include "picone/vec.hpp"

namespace picone {

// Fractional Hardy machinery. The sharp constant of
//
//   C int |u|^p |x|^{-sp} dx  <=  iint |u(x)-u(y)|^p / |x-y|^{N+sp} dx dy
//
// is C(beta*) at beta* = (N-sp)/p, where C(beta) is the radial profile of the
// fractional p-Laplacian of |x|^{-beta} on the unit sphere:
//
//   C(beta) = 2 int_0^1 rho^{sp-1} [1 - rho^{N-sp-beta(p-1)}]
//                         (1 - rho^beta)^{p-1} Phi(rho) d rho,
//   Phi(rho) = |S^{N-2}| int_0^pi sin^{N-2}(t) (1 - 2 rho cos t + rho^2)^{-(N+sp)/2} dt.
//
// Everything here requires N >= 2: the angular reduction behind Phi has no
// one-dimensional analogue, and callers asking for N = 1 get an error rather
// than a silently wrong constant.

struct FractionalParams {
    int N = 2;
    double s = 0.5;
    double p = 2.0;

    void validate() const {
        if (N == 1)
            throw std::invalid_argument(
                "FractionalParams: N = 1 is not covered by this construction");
        if (N < 2) throw std::invalid_argument("FractionalParams: N must be >= 2");
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FractionalParams: need 0 < s < 1");
        if (!(p > 1.0)) throw std::invalid_argument("FractionalParams: need p > 1");
        if (!(s * p < static_cast<double>(N)))
            throw std::invalid_argument("FractionalParams: need s p < N");
    }

    double beta_star() const { return (N - s * p) / p; }
    double beta_upper() const { return (N - s * p) / (p - 1.0); }
};

// surface measure of the unit sphere S^{n-1} in R^n
inline double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
    double nd = static_cast<double>(n);
    return 2.0 * std::pow(std::numbers::pi, 0.5 * nd) / std::tgamma(0.5 * nd);
}

// Phi at any rho >= 0 except the singular point rho = 1. Values above 1 exist
// only to exercise the inversion identity Phi(1/r) = r^{N+sp} Phi(r).
inline double phi_kernel_any(double rho, const FractionalParams& par,
                             const QuadratureConfig& cfg = {}) {
    par.validate();
    if (!(rho >= 0.0) || rho == 1.0)
        throw std::invalid_argument("phi_kernel: rho must be >= 0 and != 1");
    double expo = -0.5 * (par.N + par.s * par.p);
    double npow = static_cast<double>(par.N - 2);
    auto f = [rho, expo, npow](double t) {
        double c = std::cos(t);
        double base = 1.0 - 2.0 * rho * c + rho * rho;
        double sn = npow == 0.0 ? 1.0 : std::pow(std::sin(t), npow);
        return sn * std::pow(base, expo);
    };
    auto r = integrate_adaptive(f, 0.0, std::numbers::pi, cfg);
    if (!r.converged)
        throw std::runtime_error("phi_kernel: quadrature failed to reach tolerance");
    return sphere_area(par.N - 1) * r.value;
}

// Phi on the domain the radial integral actually uses.
inline double phi_kernel(double rho, const FractionalParams& par,
                         const QuadratureConfig& cfg = {}) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("phi_kernel: requires 0 <= rho < 1");
    return phi_kernel_any(rho, par, cfg);
}

// Phi at rho = 1 - em for small em, written so the near-singular distance
// (1 - 2 rho cos t + rho^2) = em^2 + 4 (1-em) sin^2(t/2) never cancels.
// Stays accurate down to em values far below machine epsilon relative to 1.
inline double phi_kernel_near_one(double em, const FractionalParams& par,
                                  const QuadratureConfig& cfg = {}) {
    par.validate();
    if (!(em > 0.0 && em <= 1.0))
        throw std::invalid_argument("phi_kernel_near_one: requires 0 < em <= 1");
    double expo = -0.5 * (par.N + par.s * par.p);
    double npow = static_cast<double>(par.N - 2);
    auto f = [em, expo, npow](double t) {
        double sh = std::sin(0.5 * t);
        double base = em * em + 4.0 * (1.0 - em) * sh * sh;
        double sn = npow == 0.0 ? 1.0 : std::pow(std::sin(t), npow);
        return sn * std::pow(base, expo);
    };
    auto r = integrate_adaptive(f, 0.0, std::numbers::pi, cfg);
    if (!r.converged)
        throw std::runtime_error("phi_kernel_near_one: quadrature failed to reach tolerance");
    return sphere_area(par.N - 1) * r.value;
}

// The beta-dependent window [1 - rho^{N-sp-beta(p-1)}] (1 - rho^beta)^{p-1},
// maximal in beta at beta* for every fixed rho in (0, 1).
inline double c_beta_window(double rho, double beta, const FractionalParams& par) {
    par.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("c_beta_window: beta must be > 0");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("c_beta_window: requires 0 < rho < 1");
    double A = par.N - par.s * par.p - beta * (par.p - 1.0);
    return (1.0 - std::pow(rho, A)) * std::pow(1.0 - std::pow(rho, beta), par.p - 1.0);
}

// C(beta) by adaptive quadrature. The radial integral is split at 1/2:
// below, w = rho^{sp} absorbs the rho^{sp-1} endpoint weight exactly; above,
// rho = 1 - e^{-tau} spreads the (1-rho)^{p(1-s)-1} behaviour over an
// exponential scale. The tau cutoff is stretched when p(1-s) < 1 so the
// dropped tail stays below the quadrature tolerance.
inline double c_of_beta(double beta, const FractionalParams& par,
                        const QuadratureConfig& cfg = {}) {
    par.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("c_of_beta: beta must be > 0");
    if (beta * (par.p - 1.0) >= static_cast<double>(par.N))
        throw std::invalid_argument("c_of_beta: integral diverges for beta (p-1) >= N");
    double sp = par.s * par.p;
    double A = par.N - sp - beta * (par.p - 1.0);
    QuadratureConfig inner = cfg;
    inner.abs_tol = cfg.abs_tol * 1e-2;
    inner.rel_tol = cfg.rel_tol * 1e-2;

    // below rho = 1/2: substitute w = rho^{sp}, absorbing the endpoint weight
    double wcut = std::pow(0.5, sp);
    auto f_low = [&](double w) {
        double rho = std::pow(w, 1.0 / sp);
        return c_beta_window(rho, beta, par) * phi_kernel(rho, par, inner) / sp;
    };
    auto low = integrate_adaptive(f_low, 0.0, wcut, cfg);

    // above rho = 1/2: substitute rho = 1 - e^{-tau} and keep everything in
    // terms of em = e^{-tau}; the integrand decays like em^{p(1-s)}, so the
    // cutoff scales with 1/min(1, p(1-s)) to keep the dropped tail below
    // the quadrature tolerance
    double tail_rate = std::min(1.0, par.p * (1.0 - par.s));
    double tau_max = 40.0 / tail_rate;
    auto f_high = [&](double tau) {
        double em = std::exp(-tau);
        double lrho = std::log1p(-em);  // log rho, exact for small em
        double win_a = -std::expm1(A * lrho);
        double win_b = -std::expm1(beta * lrho);
        double rho_pow = std::exp((sp - 1.0) * lrho);
        return em * rho_pow * win_a * std::pow(win_b, par.p - 1.0) *
               phi_kernel_near_one(em, par, inner);
    };
    auto high = integrate_adaptive(f_high, std::numbers::ln2, tau_max, cfg);

    if (!low.converged || !high.converged)
        throw std::runtime_error("c_of_beta: quadrature failed to reach tolerance");
    return 2.0 * (low.value + high.value);
}

inline double sharp_fractional_constant(const FractionalParams& par,
                                        const QuadratureConfig& cfg = {}) {
    par.validate();
    return c_of_beta(par.beta_star(), par, cfg);
}

struct BetaSweep {
    Vec betas;
    Vec values;
    std::size_t argmax_index = 0;
};

// C(beta) on an even grid over the positivity interval (0, beta_upper).
inline BetaSweep sweep_c_of_beta(const FractionalParams& par, int n_points,
                                 const QuadratureConfig& cfg = {}) {
    par.validate();
    if (n_points < 3) throw std::invalid_argument("sweep_c_of_beta: need at least 3 points");
    BetaSweep sw;
    double upper = par.beta_upper();
    sw.betas.resize(n_points);
    sw.values.resize(n_points);
    std::function<int(std::size_t)> run = [&](std::size_t i) {
        double beta = upper * static_cast<double>(i + 1) / (n_points + 1);
        sw.betas[i] = beta;
        sw.values[i] = c_of_beta(beta, par, cfg);
        return 0;
    };
    parallel_chunks<int>(static_cast<std::size_t>(n_points), run);
    for (std::size_t i = 1; i < sw.values.size(); ++i)
        if (sw.values[i] > sw.values[sw.argmax_index]) sw.argmax_index = i;
    return sw;
}

// ---------------------------------------------------------------------------
// Monte-Carlo oracle for C(beta): importance-sampled evaluation of
//   2 int_{R^N} |u(x)-u(y)|^{p-2} (u(x)-u(y)) |x-y|^{-N-sp} dy,
//   u(y) = |y|^{-beta},
// at a fixed x, times |x|^{sp+beta(p-1)} to undo the homogeneity. The kernel
// is evaluated raw, with no angular reduction, so this path shares nothing
// with the quadrature above except the definition of the integrand.
//
// Two measures make the estimator viable:
//   * every draw z inside the sphere |z| = |x| is paired with its inversion
//     z |x|^2 / |z|^2 outside, with the exact Jacobian weight, so the odd
//     principal-value part of the kernel across the sphere cancels pointwise
//     in the pair instead of in expectation. The pair sum admits the exact
//     merged form
//       phi_p(|x|^{-b} - |z|^{-b}) |x-z|^{-N-sp} [1 - (|z|/|x|)^{-A}],
//     A = N - sp - b (p-1), which is what the code evaluates: the raw
//     two-point difference loses all its digits to cancellation when z lands
//     within machine epsilon of x, while the bracket is stable everywhere;
//   * the proposal is a three-part mixture on the ball: a boundary-tilted
//     radial shell, a power-law ball centred at the singular point x (folded
//     through the sphere where it spills outside), and a uniform floor.
// ---------------------------------------------------------------------------

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

namespace detail {

struct McGeometry {
    FractionalParams par;
    double beta;
    Vec x;
    double R;           // |x|
    double A;           // N - sp - beta (p-1)
    double kappa;       // shell boundary tilt
    double a_sing;      // power of the singularity ball
    double w_shell, w_sing, w_unif;
    double area;        // |S^{N-1}|
};

// Merged contribution of a draw z inside the sphere and its inversion image
// z R^2 / |z|^2 outside (Jacobian weight included):
//   phi_p(R^{-b} - r^{-b}) |x - z|^{-(N + sp)} [1 - (r/R)^{-A}],  r = |z|.
// Both difference factors go through expm1 so the value keeps full relative
// accuracy when z lands next to x or next to the sphere; summing the two
// kernel evaluations directly loses every digit to cancellation there.
inline double mc_paired_integrand(const McGeometry& g, const Vec& z) {
    double r = norm2(z);
    double d2 = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double t = g.x[i] - z[i];
        d2 += t * t;
    }
    if (d2 == 0.0) return 0.0;  // exact hit on the singular point
    double lr = std::log(r / g.R);
    double du = -std::pow(g.R, -g.beta) * std::expm1(-g.beta * lr);
    double bracket = -std::expm1(-g.A * lr);
    double expo = -0.5 * (g.par.N + g.par.s * g.par.p);
    return signed_pow(du, g.par.p - 1.0) * std::pow(d2, expo) * bracket;
}

// mixture density at z strictly inside the ball |z| < R
inline double mc_density(const McGeometry& g, const Vec& z) {
    double r = norm2(z);
    double N = static_cast<double>(g.par.N);
    // shell component
    double shell = (1.0 - g.kappa) * std::pow(1.0 - r / g.R, -g.kappa) /
                   (g.R * g.area * std::pow(r, N - 1.0));
    // uniform component on the ball
    double unif = N / (g.area * std::pow(g.R, N));
    // singularity ball at x with radius R, direct part
    double sing = 0.0;
    double rho1 = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double t = z[i] - g.x[i];
        rho1 += t * t;
    }
    rho1 = std::sqrt(rho1);
    double cball = g.a_sing / (std::pow(g.R, g.a_sing) * g.area);
    if (rho1 < g.R && rho1 > 0.0) sing += cball * std::pow(rho1, g.a_sing - N);
    // folded part: preimage outside the sphere
    double inv = g.R * g.R / (r * r);
    double rho2 = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double t = inv * z[i] - g.x[i];
        rho2 += t * t;
    }
    rho2 = std::sqrt(rho2);
    if (rho2 < g.R && rho2 > 0.0)
        sing += cball * std::pow(rho2, g.a_sing - N) * std::pow(g.R / r, 2.0 * N);
    return g.w_shell * shell + g.w_sing * sing + g.w_unif * unif;
}

inline void mc_unit_vector(Rng& rng, int n, Vec& out) {
    out.resize(n);
    double nr = 0.0;
    do {
        for (auto& v : out) v = rng.normal();
        nr = norm2(out);
    } while (nr == 0.0);
    for (auto& v : out) v /= nr;
}

}  // namespace detail

inline McEstimate montecarlo_c_beta(double beta, const FractionalParams& par,
                                    std::uint64_t samples, std::uint64_t seed,
                                    const Vec* x_at = nullptr) {
    par.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("montecarlo_c_beta: beta must be > 0");
    if (beta * (par.p - 1.0) >= static_cast<double>(par.N))
        throw std::invalid_argument("montecarlo_c_beta: integral diverges for beta (p-1) >= N");
    if (samples == 0) throw std::invalid_argument("montecarlo_c_beta: need samples > 0");

    detail::McGeometry g;
    g.par = par;
    g.beta = beta;
    if (x_at) {
        g.x = *x_at;
        if (g.x.size() != static_cast<std::size_t>(par.N))
            throw std::invalid_argument("montecarlo_c_beta: x dimension mismatch");
    } else {
        g.x.assign(par.N, 0.0);
        g.x[0] = 1.0;
    }
    g.R = norm2(g.x);
    if (!(g.R > 0.0)) throw std::invalid_argument("montecarlo_c_beta: x must be nonzero");
    g.A = static_cast<double>(par.N) - par.s * par.p - beta * (par.p - 1.0);
    g.kappa = 0.5;
    g.a_sing = std::min(0.5, par.p * (1.0 - par.s));
    g.w_shell = 0.4;
    g.w_sing = 0.4;
    g.w_unif = 0.2;
    g.area = sphere_area(par.N);

    const std::uint64_t chunk_size = 1 << 16;
    std::size_t n_chunks = static_cast<std::size_t>((samples + chunk_size - 1) / chunk_size);

    struct ChunkSums {
        double sum = 0.0, sum2 = 0.0;
        std::uint64_t count = 0;
    };
    std::function<ChunkSums(std::size_t)> run = [&](std::size_t c) {
        Rng rng(seed, c);
        std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_size;
        std::uint64_t hi = std::min(samples, lo + chunk_size);
        ChunkSums cs;
        Vec dir, z(par.N);
        for (std::uint64_t i = lo; i < hi; ++i) {
            // draw from the mixture
            double pick = rng.uniform01();
            double r = 0.0;
            if (pick < g.w_shell) {
                detail::mc_unit_vector(rng, par.N, dir);
                double t = 1.0 - std::pow(rng.uniform01(), 1.0 / (1.0 - g.kappa));
                r = g.R * t;
                for (int k = 0; k < par.N; ++k) z[k] = r * dir[k];
            } else if (pick < g.w_shell + g.w_sing) {
                detail::mc_unit_vector(rng, par.N, dir);
                double rho = g.R * std::pow(rng.uniform01(), 1.0 / g.a_sing);
                for (int k = 0; k < par.N; ++k) z[k] = g.x[k] + rho * dir[k];
                r = norm2(z);
                if (r > g.R) {  // fold through the sphere
                    double f = g.R * g.R / (r * r);
                    for (auto& v : z) v *= f;
                    r = norm2(z);
                }
            } else {
                detail::mc_unit_vector(rng, par.N, dir);
                double t = std::pow(rng.uniform01(), 1.0 / par.N);
                r = g.R * t;
                for (int k = 0; k < par.N; ++k) z[k] = r * dir[k];
            }
            double contrib = 0.0;
            if (r > 0.0 && r < g.R)  // measure-zero edges contribute nothing
                contrib = detail::mc_paired_integrand(g, z) / detail::mc_density(g, z);
            cs.sum += contrib;
            cs.sum2 += contrib * contrib;
            ++cs.count;
        }
        return cs;
    };

    auto chunks = parallel_chunks<ChunkSums>(n_chunks, run);
    double sum = 0.0, sum2 = 0.0;
    std::uint64_t count = 0;
    for (const auto& cs : chunks) {  // fixed order: reproducible at any thread count
        sum += cs.sum;
        sum2 += cs.sum2;
        count += cs.count;
    }
    double mean = sum / static_cast<double>(count);
    double var = (sum2 - static_cast<double>(count) * mean * mean) /
                 static_cast<double>(count - 1);
    var = std::max(var, 0.0);

    double scale = 2.0 * std::pow(g.R, par.s * par.p + beta * (par.p - 1.0));
    McEstimate est;
    est.value = scale * mean;
    est.std_error = scale * std::sqrt(var / static_cast<double>(count));
    est.samples = count;
    return est;
}

// Discrete Hardy quotient on a grid centred at the origin: truncated
// Gagliardo energy over the weighted mass sum_i |v_i|^p |x_i|^{-sp} h^N.
// The origin node (if any) must carry a zero value.
inline double fractional_hardy_ratio(const GagliardoEnergy& energy, const GridFunction& v) {
    const Grid& grid = energy.grid();
    check_field(grid, v, "fractional_hardy_ratio");
    double sp = energy.s() * energy.degree();
    double p = energy.degree();
    double den = 0.0;
    for (int j = 0; j < (grid.dim == 2 ? grid.n[1] : 1); ++j) {
        for (int i = 0; i < grid.n[0]; ++i) {
            double val = v[grid.index(i, j)];
            if (val == 0.0) continue;
            double x0 = grid.coord(0, i);
            double x1 = grid.dim == 2 ? grid.coord(1, j) : 0.0;
            double r = std::sqrt(x0 * x0 + x1 * x1);
            if (r == 0.0)
                throw std::invalid_argument(
                    "fractional_hardy_ratio: nonzero value at the origin node");
            den += std::pow(std::abs(val), p) * std::pow(r, -sp) * grid.cell();
        }
    }
    if (den == 0.0)
        throw std::invalid_argument("fractional_hardy_ratio: profile is identically zero");
    return energy.value(v) / den;
}

}  // namespace picone
