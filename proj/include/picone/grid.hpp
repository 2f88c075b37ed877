#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "picone/vec.hpp"

namespace picone {

// Uniform tensor grid on a box in dimension 1 or 2 with homogeneous Dirichlet
// boundary. Only interior nodes carry unknowns; the boundary ring (and, for
// nonlocal energies, everything beyond it) is identically zero. Spacing h is
// (hi - lo) / (n_interior + 1), equal on both axes.
struct Grid {
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::array<int, 2> n{0, 0};  // interior nodes per axis

    static Grid interval(double a, double b, int n_interior) {
        Grid g;
        g.dim = 1;
        g.lo = {a, 0.0};
        g.hi = {b, 0.0};
        g.n = {n_interior, 0};
        g.validate();
        return g;
    }

    static Grid square(double a, double b, int n_interior) {
        Grid g;
        g.dim = 2;
        g.lo = {a, a};
        g.hi = {b, b};
        g.n = {n_interior, n_interior};
        g.validate();
        return g;
    }

    void validate() const {
        if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
        for (int a = 0; a < dim; ++a) {
            if (n[a] < 1) throw std::invalid_argument("Grid: need at least one interior node");
            if (!(hi[a] > lo[a])) throw std::invalid_argument("Grid: empty axis extent");
        }
        if (dim == 2) {
            double h0 = (hi[0] - lo[0]) / (n[0] + 1);
            double h1 = (hi[1] - lo[1]) / (n[1] + 1);
            if (std::abs(h0 - h1) > 1e-12 * h0)
                throw std::invalid_argument("Grid: spacing must match across axes");
        }
    }

    double h() const { return (hi[0] - lo[0]) / (n[0] + 1); }

    // cell volume weight h^dim
    double cell() const {
        double hh = h();
        return dim == 1 ? hh : hh * hh;
    }

    std::size_t size() const {
        return dim == 1 ? static_cast<std::size_t>(n[0])
                        : static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
    }

    // interior node index (i runs fastest along axis 0, 0-based)
    std::size_t index(int i, int j = 0) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n[0]) +
               static_cast<std::size_t>(i);
    }

    double coord(int axis, int k_interior) const {
        return lo[axis] + (k_interior + 1) * h();
    }
};

// Nodal values on the interior of a grid.
using GridFunction = Vec;

inline void check_field(const Grid& g, const GridFunction& u, const char* who) {
    if (u.size() != g.size()) throw std::invalid_argument(std::string(who) + ": field size mismatch");
}

// (sum |u_i|^q h^dim)^{1/q}
inline double lq_norm(const Grid& g, const GridFunction& u, double q) {
    check_field(g, u, "lq_norm");
    if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
    double s = 0.0;
    for (double v : u) s += std::pow(std::abs(v), q);
    return std::pow(s * g.cell(), 1.0 / q);
}

}  // namespace picone
