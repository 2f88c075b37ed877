#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "picone/grid.hpp"
#include "picone/vec.hpp"

namespace picone {

// Truncated Gagliardo energy
//
//   E(u) = sum_{i != j} |u_i - u_j|^p / |x_i - x_j|^{dim + s p} * h^{2 dim}
//
// over ordered node pairs, where j ranges over the full lattice extended one
// box extent beyond the domain in every direction and u is zero outside the
// interior. Pairs of two exterior nodes contribute nothing and are skipped.
//
// On a uniform lattice the kernel depends only on the index offset, so the
// exterior contribution to node i collapses to a precomputed weight
//   W_i = sum_{j exterior} k(i - j),
// evaluated once at construction via 2-D prefix sums of the offset kernel
// table (the exterior is a difference of two boxes). After that, one energy
// or subgradient evaluation costs one pass over interior pairs.
class GagliardoEnergy {
  public:
    GagliardoEnergy(Grid grid, double s, double p) : grid_(grid), s_(s), p_(p) {
        grid_.validate();
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("GagliardoEnergy: need 0 < s < 1");
        if (!(p > 1.0)) throw std::invalid_argument("GagliardoEnergy: need p > 1");
        if (grid_.dim == 2 && grid_.n[0] != grid_.n[1])
            throw std::invalid_argument("GagliardoEnergy: 2-D grids must be square");
        build_tables();
    }

    const Grid& grid() const { return grid_; }
    double s() const { return s_; }
    double degree() const { return p_; }

    double value(const GridFunction& u) const {
        double v;
        eval(u, v, nullptr);
        return v;
    }

    double value_and_subgrad(const GridFunction& u, Vec& grad_out) const {
        grad_out.assign(u.size(), 0.0);
        double v;
        eval(u, v, &grad_out);
        return v;
    }

  private:
    // kernel at offset (di, dj), zero at the origin so box sums may include it
    double kern(int di, int dj) const {
        return ktab_[static_cast<std::size_t>(std::abs(dj)) * kw_ +
                     static_cast<std::size_t>(std::abs(di))];
    }

    void build_tables() {
        double h = grid_.h();
        double expo = grid_.dim + s_ * p_;
        int nx = grid_.n[0];
        int ny = grid_.dim == 2 ? grid_.n[1] : 0;
        // lattice positions per axis: exterior spans one extent (n+1 cells) on
        // each side, so offsets reach 3(n+1) in magnitude
        mx_ = 3 * (nx + 1);
        my_ = grid_.dim == 2 ? 3 * (ny + 1) : 0;
        kw_ = static_cast<std::size_t>(mx_) + 1;
        std::size_t kh = static_cast<std::size_t>(my_) + 1;
        ktab_.assign(kw_ * kh, 0.0);
        for (std::size_t j = 0; j < kh; ++j) {
            for (std::size_t i = 0; i < kw_; ++i) {
                if (i == 0 && j == 0) continue;
                double r2 = (static_cast<double>(i) * i + static_cast<double>(j) * j) * h * h;
                ktab_[j * kw_ + i] = std::pow(r2, -0.5 * expo);
            }
        }

        // prefix sums P(a, b) = sum_{0<=di<=a, 0<=dj<=b} kern, for box queries
        // over arbitrary signed-offset rectangles via reflection symmetry
        psum_.assign(kw_ * kh, 0.0);
        for (std::size_t j = 0; j < kh; ++j) {
            double row = 0.0;
            for (std::size_t i = 0; i < kw_; ++i) {
                row += ktab_[j * kw_ + i];
                psum_[j * kw_ + i] = row + (j > 0 ? psum_[(j - 1) * kw_ + i] : 0.0);
            }
        }

        // W_i = (box sum over the extended lattice) - (box sum over interior)
        // in offset coordinates around node i
        wext_.resize(grid_.size());
        if (grid_.dim == 1) {
            for (int i = 0; i < nx; ++i) {
                // lattice index of node i is i+1 in [.. -(nx+1) .. 2(nx+1) ..]
                int q = i + 1;
                double big = axis_sum(q - (-(nx + 1)), 0) + axis_sum((2 * (nx + 1)) - q, 0) -
                             kern(0, 0);
                double topo = big;  // total over all other lattice nodes
                double inner = axis_sum(q - 1, 0) + axis_sum(nx - q, 0) - kern(0, 0);
                wext_[grid_.index(i)] = topo - inner;
            }
        } else {
            int lo = -(nx + 1), hi2 = 2 * (nx + 1);
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    int qx = i + 1, qy = j + 1;
                    double big = box_sum(qx - lo, hi2 - qx, qy - lo, hi2 - qy);
                    double inner = box_sum(qx - 1, nx - qx, qy - 1, ny - qy);
                    wext_[grid_.index(i, j)] = big - inner;
                }
            }
        }
    }

    // 1-D: sum of kern(d, 0) for d = 1..a (a >= 0)
    double axis_sum(int a, int) const {
        if (a <= 0) return 0.0;
        return psum_[static_cast<std::size_t>(a)];
    }

    // sum of kern(di, dj) over di in [-ax, bx], dj in [-ay, by], with the
    // origin term equal to zero by construction
    double box_sum(int ax, int bx, int ay, int by) const {
        auto quad = [&](int a, int b) {
            // sum over 0..a x 0..b of the symmetric table
            if (a < 0 || b < 0) return 0.0;
            return psum_[static_cast<std::size_t>(b) * kw_ + static_cast<std::size_t>(a)];
        };
        // four quadrants share the axes; inclusion-exclusion over reflections
        return quad(ax, ay) + quad(bx, ay) + quad(ax, by) + quad(bx, by) - quad(ax, 0) -
               quad(bx, 0) - quad(0, ay) - quad(0, by) + quad(0, 0);
    }

    void eval(const GridFunction& u, double& value, Vec* grad) const {
        check_field(grid_, u, "GagliardoEnergy");
        double w2 = grid_.cell() * grid_.cell();  // h^{2 dim}
        double acc = 0.0;
        bool p2 = p_ == 2.0;
        int nx = grid_.n[0];
        std::size_t n = u.size();

        // interior-interior, unordered pairs counted twice
        for (std::size_t a = 0; a < n; ++a) {
            int ai = static_cast<int>(a) % nx;
            int aj = static_cast<int>(a) / nx;
            double ua = u[a];
            double gacc = 0.0;
            for (std::size_t b = a + 1; b < n; ++b) {
                int bi = static_cast<int>(b) % nx;
                int bj = static_cast<int>(b) / nx;
                double k = kern(ai - bi, aj - bj);
                double d = ua - u[b];
                if (p2) {
                    acc += 2.0 * k * d * d;
                    if (grad) {
                        double t = 4.0 * k * d;
                        gacc += t;
                        (*grad)[b] -= t;
                    }
                } else {
                    acc += 2.0 * k * pow_abs(d, p_);
                    if (grad) {
                        double t = 2.0 * p_ * k * signed_pow(d, p_ - 1.0);
                        gacc += t;
                        (*grad)[b] -= t;
                    }
                }
            }
            // interior-exterior: exterior values are zero
            if (p2) {
                acc += 2.0 * wext_[a] * ua * ua;
                if (grad) gacc += 4.0 * wext_[a] * ua;
            } else {
                acc += 2.0 * wext_[a] * pow_abs(ua, p_);
                if (grad) gacc += 2.0 * p_ * wext_[a] * signed_pow(ua, p_ - 1.0);
            }
            if (grad) (*grad)[a] += gacc;
        }
        value = acc * w2;
        if (grad)
            for (auto& g : *grad) g *= w2;
    }

    Grid grid_;
    double s_, p_;
    int mx_ = 0, my_ = 0;
    std::size_t kw_ = 0;
    std::vector<double> ktab_;
    std::vector<double> psum_;
    Vec wext_;
};

}  // namespace picone
