#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "picone/forms.hpp"
#include "picone/gagliardo.hpp"
#include "picone/grid.hpp"
#include "picone/local_energy.hpp"
#include "picone/simplex.hpp"
#include "picone/vec.hpp"

namespace picone {

// Either the local H-energy or the truncated Gagliardo seminorm; both expose
// value_and_subgrad, a grid, and a homogeneity degree.
using DiscreteEnergy = std::variant<LocalEnergy, GagliardoEnergy>;

inline const Grid& energy_grid(const DiscreteEnergy& e) {
    return std::visit([](const auto& x) -> const Grid& { return x.grid(); }, e);
}

inline double energy_degree(const DiscreteEnergy& e) {
    return std::visit([](const auto& x) { return x.degree(); }, e);
}

inline double energy_value_and_subgrad(const DiscreteEnergy& e, const GridFunction& u, Vec& g) {
    return std::visit([&](const auto& x) { return x.value_and_subgrad(u, g); }, e);
}

inline double energy_value(const DiscreteEnergy& e, const GridFunction& u) {
    return std::visit([&](const auto& x) { return x.value(u); }, e);
}

enum class EigenSolver { ConvexDescent, PowerIteration };

struct EigenOptions {
    EigenSolver solver = EigenSolver::ConvexDescent;
    int max_iterations = 100000;  // per refinement level
    double rel_tol = 1e-12;       // relative energy change that counts as a stall
    int stall_window = 40;        // iterations the stall must persist
    double residual_tol = 1e-7;   // Euler-Lagrange defect that stops the descent early
    int residual_stride = 25;     // cadence of the residual stopping check
    bool nested = true;           // warm-start from coarsened copies of the problem
    int min_coarse = 10;          // smallest interior node count in the nest
};

struct EigenResult {
    double lambda = 0.0;
    GridFunction u;  // normalized: lq_norm(u, q) = 1
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> energy_trace;
    std::vector<double> residual_trace;
};

// Pointwise Euler-Lagrange defect of a claimed eigenpair, normalized by the
// eigenvalue: max_i | (1/p) E'(u)_i / h^d - lambda u_i^{q-1} | / lambda.
inline double residual_euler_lagrange(const DiscreteEnergy& e, const GridFunction& u,
                                      double lambda, double q) {
    const Grid& g = energy_grid(e);
    check_field(g, u, "residual_euler_lagrange");
    if (!(lambda > 0.0))
        throw std::invalid_argument("residual_euler_lagrange: lambda must be positive");
    Vec grad;
    energy_value_and_subgrad(e, u, grad);
    double p = energy_degree(e);
    double cell = g.cell();
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double lhs = grad[i] / (p * cell);
        double rhs = lambda * signed_pow(u[i], q - 1.0);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst / lambda;
}

// lambda scales as c^{p-q} when the eigenfunction is scaled by c, so
// lambda * ||u||_q^{q-p} recovers the normalized eigenvalue from any
// representative of the ray. Returns the relative defect against lambda_ref.
inline double scaling_identity_check(const DiscreteEnergy& e, const GridFunction& u,
                                     double lambda, double q, double lambda_ref) {
    const Grid& g = energy_grid(e);
    double p = energy_degree(e);
    double nq = lq_norm(g, u, q);
    if (!(nq > 0.0)) throw std::invalid_argument("scaling_identity_check: zero function");
    double recovered = lambda * std::pow(nq, q - p);
    return std::abs(recovered - lambda_ref) / lambda_ref;
}

struct PositivityReport {
    double min_interior = 0.0;
    bool strictly_positive = false;
};

inline PositivityReport positivity_check(const EigenResult& r) {
    PositivityReport rep;
    if (r.u.empty()) return rep;
    rep.min_interior = r.u[0];
    for (double v : r.u) rep.min_interior = std::min(rep.min_interior, v);
    rep.strictly_positive = rep.min_interior > 0.0;
    return rep;
}

namespace detail {

// coarsened copy of the problem on the same box with n_coarse interior nodes
inline DiscreteEnergy coarsen_energy(const DiscreteEnergy& e, int n_coarse) {
    const Grid& g = energy_grid(e);
    Grid gc = g.dim == 1 ? Grid::interval(g.lo[0], g.hi[0], n_coarse)
                         : Grid::square(g.lo[0], g.hi[0], n_coarse);
    if (const auto* le = std::get_if<LocalEnergy>(&e)) return LocalEnergy(gc, le->form());
    const auto& ge = std::get<GagliardoEnergy>(e);
    return GagliardoEnergy(gc, ge.s(), ge.degree());
}

// piecewise-linear interpolation between interval or square grids on the same
// box, with the homogeneous boundary supplying the missing ring of zeros
inline GridFunction prolong(const Grid& gc, const GridFunction& uc, const Grid& gf) {
    GridFunction uf(gf.size());
    if (gf.dim == 1) {
        auto at = [&](int i) { return (i >= 0 && i < gc.n[0]) ? uc[i] : 0.0; };
        for (int i = 0; i < gf.n[0]; ++i) {
            double t = (gf.coord(0, i) - gc.lo[0]) / gc.h();
            int k = static_cast<int>(std::floor(t)) - 1;
            double fr = t - std::floor(t);
            uf[i] = (1.0 - fr) * at(k) + fr * at(k + 1);
        }
    } else {
        auto at = [&](int i, int j) {
            return (i >= 0 && i < gc.n[0] && j >= 0 && j < gc.n[1]) ? uc[gc.index(i, j)] : 0.0;
        };
        for (int j = 0; j < gf.n[1]; ++j)
            for (int i = 0; i < gf.n[0]; ++i) {
                double tx = (gf.coord(0, i) - gc.lo[0]) / gc.h();
                double ty = (gf.coord(1, j) - gc.lo[1]) / gc.h();
                int kx = static_cast<int>(std::floor(tx)) - 1;
                int ky = static_cast<int>(std::floor(ty)) - 1;
                double fx = tx - std::floor(tx), fy = ty - std::floor(ty);
                uf[gf.index(i, j)] = (1.0 - fx) * (1.0 - fy) * at(kx, ky) +
                                     fx * (1.0 - fy) * at(kx + 1, ky) +
                                     (1.0 - fx) * fy * at(kx, ky + 1) +
                                     fx * fy * at(kx + 1, ky + 1);
            }
    }
    return uf;
}

// Projected descent on the energy as a function of rho = u^q, which is convex
// on the mass simplex { rho >= 0, sum rho h^d = 1 } by hidden convexity.
// Steps use the Barzilai-Borwein secant length, backtracked (halved) until the
// energy does not increase, so the recorded trace is monotone by construction.
// Stops when the Euler-Lagrange defect drops below residual_tol, when the
// energy stalls for stall_window iterations, or at the iteration cap.
inline EigenResult descent_level(const DiscreteEnergy& e, double q, const EigenOptions& opt,
                                 Vec rho) {
    const Grid& grid = energy_grid(e);
    std::size_t n = grid.size();
    double cell = grid.cell();
    double target = 1.0 / cell;  // mass constraint: sum rho = target

    GridFunction u(n);
    auto to_u = [&](const Vec& r, GridFunction& out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::max(r[i], 0.0), 1.0 / q);
    };
    to_u(rho, u);

    Vec gu;
    double energy = energy_value_and_subgrad(e, u, gu);

    EigenResult res;
    res.energy_trace.reserve(256);
    res.energy_trace.push_back(energy);

    // floor for the chain factor u^{1-q}: nodes projected to zero keep a
    // finite (large) pull so they can re-enter the support
    double u_floor = 1e-9 * std::pow(target / static_cast<double>(n), 1.0 / q);

    Vec grho(n), rho_prev, grho_prev, step(n), trial;
    GridFunction u_trial(n);
    auto chain = [&](const GridFunction& uu, const Vec& eg, Vec& out) {
        for (std::size_t i = 0; i < n; ++i) {
            double ui = std::max(uu[i], u_floor);
            out[i] = eg[i] * std::pow(ui, 1.0 - q) / q;
        }
    };
    chain(u, gu, grho);

    double g2 = dot(grho, grho);
    double alpha = g2 > 0.0 ? 0.1 * energy / g2 : 1.0;

    int stall = 0;
    int k = 0;
    bool stopped = false;
    for (k = 1; k <= opt.max_iterations; ++k) {
        if (k > 1) {
            // BB secant step from the last accepted move
            double sy = 0.0, ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double si = rho[i] - rho_prev[i];
                ss += si * si;
                sy += si * (grho[i] - grho_prev[i]);
            }
            if (sy > 1e-300)
                alpha = ss / sy;
            else
                alpha *= 2.0;
        }
        rho_prev = rho;
        grho_prev = grho;
        double e_prev = energy;

        double a = alpha;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < n; ++i) step[i] = rho[i] - a * grho[i];
            trial = project_to_simplex(step, target);
            to_u(trial, u_trial);
            double e_trial = energy_value(e, u_trial);
            if (e_trial <= e_prev) {
                rho.swap(trial);
                u.swap(u_trial);
                energy = energy_value_and_subgrad(e, u, gu);
                chain(u, gu, grho);
                accepted = true;
                break;
            }
            a *= 0.5;
        }
        res.energy_trace.push_back(energy);
        if (!accepted) {  // no descent direction left at this resolution
            stopped = true;
            break;
        }
        stall = (e_prev - energy <= opt.rel_tol * std::abs(energy)) ? stall + 1 : 0;
        if (stall >= opt.stall_window) {
            stopped = true;
            break;
        }
        if (opt.residual_stride > 0 && k % opt.residual_stride == 0) {
            double r = residual_euler_lagrange(e, u, energy, q);
            res.residual_trace.push_back(r);
            if (r <= opt.residual_tol) {
                stopped = true;
                break;
            }
        }
    }
    res.iterations = std::min(k, opt.max_iterations);

    double nq = lq_norm(grid, u, q);
    for (auto& v : u) v /= nq;
    res.u = u;
    res.lambda = energy_value(e, u);
    res.residual = residual_euler_lagrange(e, res.u, res.lambda, q);
    res.residual_trace.push_back(res.residual);
    res.converged = stopped;
    return res;
}

// Full solve: descend on a nest of coarsened problems, carrying each level's
// eigenfunction to the next as a warm start. The reported traces are those of
// the finest level; iterations accumulate across levels.
inline EigenResult solve_convex_descent(const DiscreteEnergy& e, double q,
                                        const EigenOptions& opt) {
    const Grid& grid = energy_grid(e);
    std::vector<int> levels{grid.n[0]};
    if (opt.nested)
        while ((levels.back() - 1) / 2 >= opt.min_coarse) levels.push_back((levels.back() - 1) / 2);

    GridFunction u_prev;
    Grid g_prev;
    EigenResult res;
    int total_iterations = 0;
    for (std::size_t li = levels.size(); li-- > 0;) {
        bool finest = li == 0;
        DiscreteEnergy level_e = finest ? e : coarsen_energy(e, levels[li]);
        const Grid& g = energy_grid(level_e);
        double target = 1.0 / g.cell();
        Vec rho0(g.size());
        if (u_prev.empty()) {
            std::fill(rho0.begin(), rho0.end(), target / static_cast<double>(g.size()));
        } else {
            GridFunction uf = prolong(g_prev, u_prev, g);
            double sum = 0.0;
            for (std::size_t i = 0; i < rho0.size(); ++i) {
                rho0[i] = std::pow(std::abs(uf[i]), q);
                sum += rho0[i];
            }
            if (sum > 0.0)
                for (auto& v : rho0) v *= target / sum;
            else
                std::fill(rho0.begin(), rho0.end(), target / static_cast<double>(g.size()));
        }
        EigenResult level_res = descent_level(level_e, q, opt, std::move(rho0));
        total_iterations += level_res.iterations;
        u_prev = level_res.u;
        g_prev = g;
        if (finest) res = std::move(level_res);
    }
    res.iterations = total_iterations;
    return res;
}

// Conjugate gradient on the linear operator u -> E'(u)/2, which is the
// stiffness matrix when the energy is quadratic.
inline Vec cg_solve(const DiscreteEnergy& e, const Vec& rhs, const Vec& x0, double tol,
                    int max_iter) {
    std::size_t n = rhs.size();
    Vec x = x0, g, r(n), p(n), ap;
    double dummy = energy_value_and_subgrad(e, x, g);
    (void)dummy;
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - 0.5 * g[i];
    p = r;
    double rr = dot(r, r);
    double rhs_norm = std::max(norm2(rhs), 1e-300);
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= tol * rhs_norm) break;
        energy_value_and_subgrad(e, p, ap);
        for (auto& v : ap) v *= 0.5;
        double alpha = rr / dot(p, ap);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rr_new = dot(r, r);
        double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    return x;
}

// Inverse power iteration for the quadratic case p = q = 2: repeatedly solve
// A w = M u and renormalize in the weighted l2 norm. Machine-precision check
// target for the descent solver.
inline EigenResult solve_power_iteration(const DiscreteEnergy& e, const EigenOptions& opt) {
    const Grid& grid = energy_grid(e);
    std::size_t n = grid.size();
    double cell = grid.cell();
    GridFunction u(n, 1.0);
    double nrm = lq_norm(grid, u, 2.0);
    for (auto& v : u) v /= nrm;

    EigenResult res;
    double lambda = energy_value(e, u);
    res.energy_trace.push_back(lambda);
    Vec rhs(n), w = u;
    int outer_max = std::min(opt.max_iterations, 500);
    int k = 0;
    for (k = 1; k <= outer_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] = cell * u[i];
        w = cg_solve(e, rhs, w, 1e-13, static_cast<int>(n) + 200);
        double wn = lq_norm(grid, w, 2.0);
        for (std::size_t i = 0; i < n; ++i) u[i] = w[i] / wn;
        double lam_new = energy_value(e, u);
        res.energy_trace.push_back(lam_new);
        bool done = std::abs(lam_new - lambda) <= 1e-14 * std::abs(lam_new);
        lambda = lam_new;
        if (done) {
            res.converged = true;
            break;
        }
    }
    res.iterations = std::min(k, outer_max);
    // the sign convention: the ground state is one-signed, keep it positive
    double mass = 0.0;
    for (double v : u) mass += v;
    if (mass < 0.0)
        for (auto& v : u) v = -v;
    res.u = u;
    res.lambda = lambda;
    res.residual = residual_euler_lagrange(e, res.u, res.lambda, 2.0);
    res.residual_trace.push_back(res.residual);
    return res;
}

}  // namespace detail

// Smallest eigenvalue of the (p, q) quotient E(u) / ||u||_q^p over the grid,
// with the energy passed explicitly. ConvexDescent works for every admissible
// (p, q) with 1 < q <= p; PowerIteration only for the quadratic case and only
// with the Euclidean power form (it solves linear systems).
inline EigenResult solve_eigen(const DiscreteEnergy& e, double q, const EigenOptions& opt = {}) {
    double p = energy_degree(e);
    if (!(q > 1.0 && q <= p))
        throw std::invalid_argument("solve_eigen: requires 1 < q <= p");
    if (const auto* le = std::get_if<LocalEnergy>(&e))
        if (!le->form().homogeneous() && q > le->form().min_degree())
            throw std::invalid_argument(
                "solve_eigen: mixed-exponent energies need q <= the smallest exponent");
    if (opt.solver == EigenSolver::PowerIteration) {
        if (q != 2.0 || p != 2.0)
            throw std::invalid_argument("solve_eigen: PowerIteration needs p = q = 2");
        if (const auto* le = std::get_if<LocalEnergy>(&e))
            if (le->form().kind() != HomogeneousForm::Kind::PowerEuclid)
                throw std::invalid_argument(
                    "solve_eigen: PowerIteration needs the Euclidean quadratic form");
        return detail::solve_power_iteration(e, opt);
    }
    return detail::solve_convex_descent(e, q, opt);
}

}  // namespace picone
