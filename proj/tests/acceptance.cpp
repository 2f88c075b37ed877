// Acceptance gate: nine independently timed checks covering the inequality
// sweeps, the sharpness constructions, the eigenvalue solvers, and both Hardy
// pipelines, plus byte-level reproducibility of the command-line reports.
// Prints one [PASS]/[FAIL] line per check and exits 0 only if all pass.
//
// Usage: picone_acceptance --cli /path/to/picone

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "picone/eigensolver.hpp"
#include "picone/forms.hpp"
#include "picone/gagliardo.hpp"
#include "picone/grid.hpp"
#include "picone/hardy_fractional.hpp"
#include "picone/hardy_local.hpp"
#include "picone/local_energy.hpp"
#include "picone/principles.hpp"
#include "picone/rng.hpp"

using namespace picone;

namespace {

constexpr double kPi = std::numbers::pi;

std::string g_cli_path;

Vec random_vec(Rng& rng, int dim, double amp) {
    Vec z(dim);
    for (auto& x : z) x = rng.uniform(-amp, amp);
    return z;
}

std::string format_fail(const char* what, double got, double bound) {
    std::ostringstream ss;
    ss << what << " (got " << got << ", bound " << bound << ")";
    return ss.str();
}

struct PQ {
    double p, q;
};
const std::vector<PQ> kPairs = {{2.0, 2.0}, {3.0, 2.0}, {3.0, 3.0}, {1.5, 1.2}};

// --------------------------------------------------------------------------
// 1. gap sweeps: every inequality evaluates to rhs - lhs >= -1e-12
// --------------------------------------------------------------------------
std::string check_gap_sweeps() {
    const std::uint64_t trials = 100000;
    const double slack = -1e-12;
    double worst = 1e300;
    std::uint64_t stream = 0;
    for (const auto& pq : kPairs) {
        auto H = HomogeneousForm::power_euclid(pq.p, 3);
        Rng rng(101, stream++);
        for (std::uint64_t i = 0; i < trials; ++i) {
            PointSample a{rng.uniform(0.1, 5.0), random_vec(rng, 3, 3.0)};
            PointSample b{rng.uniform(0.1, 5.0), random_vec(rng, 3, 3.0)};
            worst = std::min(worst, hidden_convexity_gap(H, a, b, pq.q, rng.uniform01()));

            auto pg = picone_gap(H, a, b, pq.q);
            worst = std::min({worst, pg.gap, pg.gap_weak});

            DiscretePair d{rng.uniform(1e-2, 10.0), rng.uniform(1e-2, 10.0),
                           rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
            worst = std::min(worst, discrete_picone_gap(d, pq.p, pq.q));
            worst = std::min(worst, discrete_hidden_gap(d, pq.p, pq.q, rng.uniform01()));

            worst = std::min(worst,
                             elementary_gap(rng.uniform(0.0, 10.0), rng.uniform01(), pq.q));

            KineticPoint k0{rng.uniform(1e-3, 10.0), random_vec(rng, 3, 3.0)};
            KineticPoint k1{rng.uniform(1e-3, 10.0), random_vec(rng, 3, 3.0)};
            worst = std::min(worst,
                             kinetic_convexity_gap(H, k0, k1, pq.p - 1.0, rng.uniform01()));
        }
    }
    if (worst < slack) return format_fail("minimum gap below slack", worst, slack);
    return "";
}

// --------------------------------------------------------------------------
// 2. sharpness: explicit violations outside the admissible windows
// --------------------------------------------------------------------------
std::string check_sharpness() {
    for (double p : {2.0, 3.0}) {
        auto H = HomogeneousForm::power_euclid(p, 3);
        Vec ones(3, 1.0);
        for (double beta : {p - 1.0 + 0.1, p - 0.1}) {
            double v = kinetic_sharpness_violation(H, beta, 2.0, 0.5, 1.0, ones);
            if (!(v > 1e-8)) return format_fail("kinetic violation too small", v, 1e-8);
        }
        for (double q : {p + 0.5, p + 1.0}) {
            double v = hidden_sharpness_violation(H, q, 2.0, 0.5, ones);
            if (!(v > 1e-8)) return format_fail("hidden violation too small", v, 1e-8);
        }
    }
    return "";
}

// --------------------------------------------------------------------------
// 3. closed-form derivative vs one-sided finite differences + secant bound
// --------------------------------------------------------------------------
std::string check_derivative() {
    std::uint64_t stream = 0;
    for (const auto& pq : kPairs) {
        auto H = HomogeneousForm::power_euclid(pq.p, 3);
        Rng rng(103, stream++);
        for (int i = 0; i < 2500; ++i) {
            PointSample u{rng.uniform(0.7, 2.0), random_vec(rng, 3, 3.0)};
            PointSample v{rng.uniform(0.7, 2.0), random_vec(rng, 3, 3.0)};
            double d0 = derivative_at_zero(H, u, v, pq.q);
            // step balances one-sided truncation (h/2)|f''| against rounding
            // eps |f|/h for the curvatures these draw ranges produce
            double h = 1e-7;
            PointSample sh;
            sh.u = sigma_interpolate(u.u, v.u, pq.q, h);
            sh.grad = grad_sigma(u, v, pq.q, h);
            double fd = (H.eval(sh.grad) - H.eval(u.grad)) / h;
            double err = std::abs(fd - d0) / std::max(1.0, std::abs(d0));
            if (err > 1e-4) return format_fail("finite-difference mismatch", err, 1e-4);
        }
    }
    auto H = HomogeneousForm::power_euclid(3.0, 3);
    Rng rng(104, 0);
    for (int i = 0; i < 100000; ++i) {
        PointSample u{rng.uniform(0.25, 2.0), random_vec(rng, 3, 2.0)};
        PointSample v{rng.uniform(0.25, 2.0), random_vec(rng, 3, 2.0)};
        double d0 = derivative_at_zero(H, u, v, 2.0);
        double secant = H.eval(v.grad) - H.eval(u.grad);
        if (d0 > secant + 1e-10) return format_fail("secant bound broken", d0 - secant, 1e-10);
    }
    return "";
}

// shared eigenpairs: criteria 4-6 reuse these solves
EigenResult g_cd_1d, g_cd_2d, g_cd_q15;

// --------------------------------------------------------------------------
// 4. eigenvalues vs pi^2 / 2 pi^2 and solver cross-agreement
// --------------------------------------------------------------------------
std::string check_eigenvalues() {
    EigenOptions cd;
    EigenOptions pi;
    pi.solver = EigenSolver::PowerIteration;

    DiscreteEnergy e1 = LocalEnergy(Grid::interval(0.0, 1.0, 200),
                                    HomogeneousForm::power_euclid(2.0, 1));
    g_cd_1d = solve_eigen(e1, 2.0, cd);
    EigenResult pi1 = solve_eigen(e1, 2.0, pi);
    double err1 = std::abs(g_cd_1d.lambda - kPi * kPi) / (kPi * kPi);
    if (err1 > 0.01) return format_fail("1d eigenvalue off", err1, 0.01);
    double agree1 = std::abs(g_cd_1d.lambda - pi1.lambda) / pi1.lambda;
    if (agree1 > 1e-4) return format_fail("1d solver disagreement", agree1, 1e-4);

    DiscreteEnergy e2 = LocalEnergy(Grid::square(0.0, 1.0, 50),
                                    HomogeneousForm::power_euclid(2.0, 2));
    g_cd_2d = solve_eigen(e2, 2.0, cd);
    EigenResult pi2 = solve_eigen(e2, 2.0, pi);
    double ref2 = 2.0 * kPi * kPi;
    double err2 = std::abs(g_cd_2d.lambda - ref2) / ref2;
    if (err2 > 0.02) return format_fail("2d eigenvalue off", err2, 0.02);
    double agree2 = std::abs(g_cd_2d.lambda - pi2.lambda) / pi2.lambda;
    if (agree2 > 1e-4) return format_fail("2d solver disagreement", agree2, 1e-4);
    return "";
}

// --------------------------------------------------------------------------
// 5. eigenvalue scaling identity for (p, q) = (2, 1.5)
// --------------------------------------------------------------------------
std::string check_scaling_identity() {
    Grid g = Grid::interval(0.0, 1.0, 100);
    DiscreteEnergy e = LocalEnergy(g, HomogeneousForm::power_euclid(2.0, 1));
    g_cd_q15 = solve_eigen(e, 1.5);
    GridFunction v = g_cd_q15.u;
    for (auto& x : v) x *= 3.0;
    double nq = lq_norm(g, v, 1.5);
    double lambda_v = energy_value(e, v) / std::pow(nq, 1.5);
    double defect = scaling_identity_check(e, v, lambda_v, 1.5, g_cd_q15.lambda);
    if (defect > 1e-6) return format_fail("scaling identity defect", defect, 1e-6);
    return "";
}

// --------------------------------------------------------------------------
// 6. interior positivity of all computed eigenfunctions
// --------------------------------------------------------------------------
std::string check_positivity() {
    DiscreteEnergy ef = GagliardoEnergy(Grid::interval(0.0, 1.0, 100), 0.5, 2.0);
    EigenResult frac = solve_eigen(ef, 2.0);
    const EigenResult* results[] = {&g_cd_1d, &g_cd_2d, &g_cd_q15, &frac};
    const char* names[] = {"1d local p=q=2", "2d local p=q=2", "1d local q=1.5",
                           "1d nonlocal s=0.5"};
    for (int i = 0; i < 4; ++i) {
        if (results[i]->u.empty()) return std::string(names[i]) + ": missing solve";
        auto rep = positivity_check(*results[i]);
        if (!rep.strictly_positive)
            return std::string(names[i]) + ": " +
                   format_fail("interior minimum not positive", rep.min_interior, 0.0);
    }
    return "";
}

// --------------------------------------------------------------------------
// 7. local Hardy: exact constant, certificate argmax, lattice quotient
// --------------------------------------------------------------------------
std::string check_local_hardy() {
    LocalHardyParams base;  // N=3, p=2, gamma=0
    if (local_sharp_constant(base) != 0.25)
        return format_fail("constant not exact", local_sharp_constant(base), 0.25);

    Rng rng(107, 0);
    for (int i = 0; i < 20; ++i) {
        LocalHardyParams par;
        par.N = rng.uniform01() < 0.5 ? 2 : 3;
        par.p = rng.uniform(1.05, par.N - 0.05);
        par.gamma = rng.uniform(par.p - par.N + 0.05, par.p - par.N + 3.0);
        double bstar = (par.N + par.gamma - par.p) / par.p;
        double err = std::abs(hardy_beta_argmax(par) - bstar);
        if (err > 1e-8 * std::max(1.0, bstar))
            return format_fail("certificate argmax off", err, 1e-8);
    }

    PuncturedBox box{3, 1.0, 63};
    auto v = tabulate(box, annular_bump(base.norm, 0.15, 0.85, 0.2));
    double ratio = local_hardy_ratio(base, box, v);
    if (ratio < 0.95 * 0.25) return format_fail("lattice quotient too small", ratio, 0.2375);
    return "";
}

// --------------------------------------------------------------------------
// 8. fractional Hardy quadratures: kernel identities, sweeps, Monte-Carlo,
//    self-convergence
// --------------------------------------------------------------------------
std::string check_fractional_hardy() {
    for (int N : {2, 3}) {
        FractionalParams par{N, 0.5, 2.0};
        double err = std::abs(phi_kernel(0.0, par) - sphere_area(N)) / sphere_area(N);
        if (err > 1e-10) return format_fail("Phi(0) off the sphere area", err, 1e-10);
    }
    {
        FractionalParams par{3, 0.5, 2.0};
        for (double r : {1.5, 2.0}) {
            double lhs = phi_kernel_any(1.0 / r, par);
            double rhs = std::pow(r, par.N + par.s * par.p) * phi_kernel_any(r, par);
            double err = std::abs(lhs - rhs) / rhs;
            if (err > 1e-8) return format_fail("inversion identity off", err, 1e-8);
        }
    }

    const FractionalParams sets[] = {FractionalParams{2, 0.5, 2.0}, FractionalParams{3, 0.5, 2.0},
                                     FractionalParams{2, 0.25, 3.0},
                                     FractionalParams{3, 0.75, 1.5}};
    for (const auto& par : sets) {
        double sharp = sharp_fractional_constant(par);

        auto sw = sweep_c_of_beta(par, 25);
        double step = par.beta_upper() / 26.0;
        for (double v : sw.values)
            if (v > sharp * (1.0 + 1e-9))
                return format_fail("sweep exceeds the sharp value", v, sharp);
        double argmax_err = std::abs(sw.betas[sw.argmax_index] - par.beta_star());
        if (argmax_err > step + 1e-12)
            return format_fail("sweep argmax away from beta*", argmax_err, step);

        auto mc = montecarlo_c_beta(par.beta_star(), par, 1000000, 20240817);
        double pull = std::abs(mc.value - sharp) / mc.std_error;
        if (pull > 3.0) return format_fail("Monte-Carlo pull too large", pull, 3.0);

        QuadratureConfig tight;
        tight.abs_tol *= 0.5;
        tight.rel_tol *= 0.5;
        double again = c_of_beta(par.beta_star(), par, tight);
        double drift = std::abs(again - sharp) / sharp;
        if (drift > 1e-6) return format_fail("self-convergence drift", drift, 1e-6);
    }
    return "";
}

// --------------------------------------------------------------------------
// 9. CLI reports are byte-identical for identical configuration and seed
// --------------------------------------------------------------------------
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string check_reproducibility() {
    if (g_cli_path.empty()) return "missing --cli path to the command-line binary";
    const std::vector<std::string> commands = {
        "verify --principle discrete-picone --p 3 --q 2 --trials 50000 --seed 7",
        "verify --principle counterexample-q --p 2 --q 3 --c 2",
        "eigen --energy local --H power_euclid:p=2 --q 2 --dim 1 --nodes 100",
        "eigen --energy nonlocal --s 0.5 --p 2 --q 2 --dim 1 --nodes 60",
        "hardy --mode local --N 3 --p 2 --gamma 0 --box-nodes 31",
        "hardy --mode fractional --N 2 --s 0.5 --p 2 --sweep 10 --mc 100000 --seed 3",
    };
    for (const auto& cmd : commands) {
        std::string fa = "acceptance_report_a.json", fb = "acceptance_report_b.json";
        for (const auto& f : {fa, fb}) {
            std::string full = "\"" + g_cli_path + "\" " + cmd + " --output " + f +
                               " > /dev/null 2> /dev/null";
            int rc = std::system(full.c_str());
            if (rc != 0) return "command failed: " + cmd;
        }
        std::string a = read_file(fa), b = read_file(fb);
        std::remove(fa.c_str());
        std::remove(fb.c_str());
        if (a.empty()) return "empty report from: " + cmd;
        if (a != b) return "reports differ for: " + cmd;
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

    struct Criterion {
        const char* name;
        double budget_s;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria = {
        {"inequality gap sweeps", 60.0, check_gap_sweeps},
        {"sharpness violations", 1.0, check_sharpness},
        {"derivative at zero", 10.0, check_derivative},
        {"eigenvalues vs analytic references", 120.0, check_eigenvalues},
        {"eigenvalue scaling identity", 60.0, check_scaling_identity},
        {"eigenfunction interior positivity", 120.0, check_positivity},
        {"local Hardy constants", 30.0, check_local_hardy},
        {"fractional Hardy quadratures", 300.0, check_fractional_hardy},
        {"byte-identical CLI reports", 300.0, check_reproducibility},
    };

    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string fail = criteria[i].run();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (fail.empty() && secs > criteria[i].budget_s) {
            std::ostringstream ss;
            ss << "runtime " << secs << " s over budget " << criteria[i].budget_s << " s";
            fail = ss.str();
        }
        std::printf("[%s] %zu. %s (%.1f s)%s%s\n", fail.empty() ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, secs, fail.empty() ? "" : ": ", fail.c_str());
        std::fflush(stdout);
        if (!fail.empty()) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
