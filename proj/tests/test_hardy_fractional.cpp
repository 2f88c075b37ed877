#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "picone/forms.hpp"
#include "picone/gagliardo.hpp"
#include "picone/grid.hpp"
#include "picone/hardy_fractional.hpp"
#include "picone/hardy_local.hpp"
#include "picone/vec.hpp"

using namespace picone;

namespace {

constexpr double kPi = std::numbers::pi;

// unnormalized kernel evaluation at a single point pair, used to cross-check
// the merged pair integrand against the literal two-term sum
double raw_kernel(const Vec& x, const Vec& y, double beta, const FractionalParams& par) {
    double r = norm2(y);
    double du = std::pow(norm2(x), -beta) - std::pow(r, -beta);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return signed_pow(du, par.p - 1.0) * std::pow(d2, -0.5 * (par.N + par.s * par.p));
}

const std::array<FractionalParams, 4> kSets{
    FractionalParams{2, 0.5, 2.0},
    FractionalParams{3, 0.5, 2.0},
    FractionalParams{2, 0.25, 3.0},
    FractionalParams{3, 0.75, 1.5},
};

}  // namespace

TEST_CASE("angular kernel at zero equals the sphere area", "[hardy-fractional]") {
    CHECK_THAT(phi_kernel(0.0, FractionalParams{2, 0.5, 2.0}),
               Catch::Matchers::WithinRel(2.0 * kPi, 1e-10));
    CHECK_THAT(phi_kernel(0.0, FractionalParams{3, 0.5, 2.0}),
               Catch::Matchers::WithinRel(4.0 * kPi, 1e-10));
    // at rho = 0 the kernel is independent of s and p
    CHECK_THAT(phi_kernel(0.0, FractionalParams{3, 0.9, 1.2}),
               Catch::Matchers::WithinRel(4.0 * kPi, 1e-10));
    CHECK_THAT(sphere_area(2), Catch::Matchers::WithinRel(2.0 * kPi, 1e-14));
    CHECK_THAT(sphere_area(3), Catch::Matchers::WithinRel(4.0 * kPi, 1e-14));
}

TEST_CASE("angular kernel inversion identity", "[hardy-fractional]") {
    FractionalParams par{3, 0.5, 2.0};
    for (double r : {1.5, 2.0}) {
        double lhs = phi_kernel_any(1.0 / r, par);
        double rhs = std::pow(r, par.N + par.s * par.p) * phi_kernel_any(r, par);
        CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-12));
    }
}

TEST_CASE("angular kernel near-singular form matches the direct one", "[hardy-fractional]") {
    FractionalParams par{2, 0.25, 3.0};
    for (double em : {0.5, 0.25, 0.1}) {
        CHECK_THAT(phi_kernel_near_one(em, par),
                   Catch::Matchers::WithinRel(phi_kernel(1.0 - em, par), 1e-10));
    }
    // em = 1 is rho = 0
    CHECK_THAT(phi_kernel_near_one(1.0, par),
               Catch::Matchers::WithinRel(phi_kernel(0.0, par), 1e-12));
    // grows monotonically toward the singularity
    CHECK(phi_kernel_near_one(1e-3, par) > phi_kernel_near_one(1e-2, par));
    CHECK(phi_kernel_near_one(1e-2, par) > phi_kernel_near_one(1e-1, par));
    // stays finite and positive far below machine epsilon of 1
    double tiny = phi_kernel_near_one(1e-30, par);
    CHECK(std::isfinite(tiny));
    CHECK(tiny > 0.0);
}

TEST_CASE("sharp constants match closed forms", "[hardy-fractional]") {
    // N=3, s=1/2, p=2: the constant is 4 pi in this kernel normalization
    CHECK_THAT(sharp_fractional_constant(FractionalParams{3, 0.5, 2.0}),
               Catch::Matchers::WithinRel(4.0 * kPi, 1e-9));

    // N=2, s=1/2, p=2: 8 pi Gamma(3/4)^2 / Gamma(1/4)^2
    double g34 = std::tgamma(0.75), g14 = std::tgamma(0.25);
    double expect = 8.0 * kPi * g34 * g34 / (g14 * g14);
    CHECK_THAT(sharp_fractional_constant(FractionalParams{2, 0.5, 2.0}),
               Catch::Matchers::WithinRel(expect, 1e-9));
}

TEST_CASE("radial window is maximal at the sharp exponent", "[hardy-fractional]") {
    for (const auto& par : kSets) {
        double bstar = par.beta_star();
        double rho = 0.3;
        double peak = c_beta_window(rho, bstar, par);
        for (int k = 1; k <= 40; ++k) {
            double beta = par.beta_upper() * k / 41.0;
            CHECK(c_beta_window(rho, beta, par) <= peak * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("profile sweep peaks at the sharp exponent", "[hardy-fractional]") {
    for (const auto& par : kSets) {
        CAPTURE(par.N, par.s, par.p);
        double sharp = sharp_fractional_constant(par);
        auto sw = sweep_c_of_beta(par, 25);
        REQUIRE(sw.values.size() == 25);
        double spacing = par.beta_upper() / 26.0;
        double worst = -1e300;
        for (std::size_t i = 0; i < sw.values.size(); ++i) {
            CHECK(sw.values[i] > 0.0);
            worst = std::max(worst, sw.values[i]);
        }
        CHECK(worst <= sharp * (1.0 + 1e-9));
        CHECK(std::abs(sw.betas[sw.argmax_index] - par.beta_star()) <= spacing + 1e-12);
    }
}

TEST_CASE("sharp constant value pins", "[hardy-fractional]") {
    CHECK_THAT(sharp_fractional_constant(FractionalParams{2, 0.25, 3.0}),
               Catch::Matchers::WithinRel(2.0825330440, 1e-8));
    CHECK_THAT(sharp_fractional_constant(FractionalParams{3, 0.75, 1.5}),
               Catch::Matchers::WithinRel(27.8404975775, 1e-8));
}

TEST_CASE("quadrature self-convergence under tighter tolerances", "[hardy-fractional]") {
    for (const auto& par : kSets) {
        CAPTURE(par.N, par.s, par.p);
        QuadratureConfig loose;
        QuadratureConfig tight;
        tight.abs_tol = loose.abs_tol * 0.5;
        tight.rel_tol = loose.rel_tol * 0.5;
        double a = c_of_beta(par.beta_star(), par, loose);
        double b = c_of_beta(par.beta_star(), par, tight);
        CHECK_THAT(a, Catch::Matchers::WithinRel(b, 1e-6));
    }
}

TEST_CASE("merged pair integrand equals the literal two-term sum", "[hardy-fractional]") {
    FractionalParams par{2, 0.25, 3.0};
    double beta = 0.37;
    detail::McGeometry g;
    g.par = par;
    g.beta = beta;
    g.x = {1.0, 0.0};
    g.R = 1.0;
    g.A = par.N - par.s * par.p - beta * (par.p - 1.0);

    for (auto zv : {Vec{0.3, 0.4}, Vec{-0.5, 0.1}, Vec{0.9, 0.05}, Vec{0.0, -0.62}}) {
        double r = norm2(zv);
        REQUIRE(r < g.R);
        Vec zpair = zv;
        for (auto& t : zpair) t *= g.R * g.R / (r * r);
        double w = std::pow(g.R / r, 2.0 * par.N);
        double raw = raw_kernel(g.x, zv, beta, par) + w * raw_kernel(g.x, zpair, beta, par);
        CHECK_THAT(detail::mc_paired_integrand(g, zv), Catch::Matchers::WithinRel(raw, 1e-11));
    }
}

TEST_CASE("importance-sampled estimate agrees with quadrature", "[hardy-fractional]") {
    for (const auto& par : kSets) {
        CAPTURE(par.N, par.s, par.p);
        double quad = sharp_fractional_constant(par);
        auto mc = montecarlo_c_beta(par.beta_star(), par, 1000000, 20240817);
        CHECK(mc.samples == 1000000);
        CHECK(mc.std_error > 0.0);
        CHECK(mc.std_error < 0.01 * quad);
        CHECK(std::abs(mc.value - quad) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("estimate is rotation invariant and homogeneous in x", "[hardy-fractional]") {
    FractionalParams par{2, 0.5, 2.0};
    double beta = par.beta_star();
    auto base = montecarlo_c_beta(beta, par, 400000, 7);

    Vec rot = {0.6, 0.8};
    auto m_rot = montecarlo_c_beta(beta, par, 400000, 7, &rot);
    double pull = (base.value - m_rot.value) / std::hypot(base.std_error, m_rot.std_error);
    CHECK(std::abs(pull) <= 3.0);

    // scaling x rescales every draw exactly, so the estimate is unchanged to
    // rounding rather than to Monte-Carlo accuracy
    Vec far = {2.0, 0.0};
    auto m_far = montecarlo_c_beta(beta, par, 400000, 7, &far);
    CHECK_THAT(m_far.value, Catch::Matchers::WithinRel(base.value, 1e-12));
}

TEST_CASE("estimate is deterministic for a fixed seed", "[hardy-fractional]") {
    FractionalParams par{2, 0.5, 2.0};
    auto a = montecarlo_c_beta(par.beta_star(), par, 200000, 99);
    auto b = montecarlo_c_beta(par.beta_star(), par, 200000, 99);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    auto c = montecarlo_c_beta(par.beta_star(), par, 200000, 100);
    CHECK(a.value != c.value);
}

TEST_CASE("lattice quotient dominates the sharp constant", "[hardy-fractional]") {
    FractionalParams par{2, 0.5, 2.0};
    double sharp = sharp_fractional_constant(par);
    auto bump = annular_bump(NormPair::euclid(), 0.15, 0.85, 0.2);

    double prev = 0.0;
    for (int n : {31, 63}) {
        Grid g = Grid::square(-1.0, 1.0, n);
        GagliardoEnergy ge(g, par.s, par.p);
        GridFunction v(g.size());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                std::array<double, 2> x{g.coord(0, i), g.coord(1, j)};
                v[g.index(i, j)] = bump(std::span<const double>(x.data(), 2));
            }
        double ratio = fractional_hardy_ratio(ge, v);
        CHECK(ratio >= 0.8 * sharp);
        CHECK(ratio > prev);
        prev = ratio;
    }
    CHECK_THAT(prev, Catch::Matchers::WithinRel(20.611693, 1e-5));
}

TEST_CASE("fractional parameter validation", "[hardy-fractional]") {
    CHECK_THROWS_WITH(FractionalParams({1, 0.5, 2.0}).validate(),
                      Catch::Matchers::ContainsSubstring("N = 1"));
    CHECK_THROWS_AS(FractionalParams({2, 1.0, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParams({2, -0.1, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParams({2, 0.5, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParams({2, 0.9, 3.0}).validate(), std::invalid_argument);

    FractionalParams par{2, 0.5, 2.0};
    CHECK_THROWS_AS(phi_kernel_any(1.0, par), std::invalid_argument);
    CHECK_THROWS_AS(phi_kernel(1.2, par), std::invalid_argument);
    CHECK_THROWS_AS(phi_kernel_near_one(0.0, par), std::invalid_argument);
    CHECK_THROWS_AS(c_beta_window(0.0, 0.5, par), std::invalid_argument);
    CHECK_THROWS_AS(c_beta_window(1.0, 0.5, par), std::invalid_argument);
    CHECK_THROWS_AS(c_of_beta(0.0, par), std::invalid_argument);
    CHECK_THROWS_AS(c_of_beta(2.0, par), std::invalid_argument);  // beta (p-1) >= N
    CHECK_THROWS_AS(montecarlo_c_beta(0.5, par, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(montecarlo_c_beta(-1.0, par, 100, 1), std::invalid_argument);
    Vec zero = {0.0, 0.0};
    CHECK_THROWS_AS(montecarlo_c_beta(0.5, par, 100, 1, &zero), std::invalid_argument);
    Vec wrong = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(montecarlo_c_beta(0.5, par, 100, 1, &wrong), std::invalid_argument);
}

TEST_CASE("lattice quotient rejects singular or empty profiles", "[hardy-fractional]") {
    Grid g = Grid::square(-1.0, 1.0, 31);
    GagliardoEnergy ge(g, 0.5, 2.0);
    GridFunction v(g.size(), 0.0);
    CHECK_THROWS_AS(fractional_hardy_ratio(ge, v), std::invalid_argument);
    v[g.index(15, 15)] = 1.0;  // the origin node
    CHECK_THROWS_AS(fractional_hardy_ratio(ge, v), std::invalid_argument);
}
