#pragma once

#include <vector>

#include "picone/forms.hpp"
#include "picone/grid.hpp"

namespace picone {

// Dirichlet energy sum_cells H(D_h u) h^dim with forward-difference gradients
// anchored at the lower cell corner. Cells range over the full box, so the
// boundary differences (interior value against the zero ring) are included.
class LocalEnergy {
  public:
    LocalEnergy(Grid grid, HomogeneousForm H) : grid_(grid), H_(std::move(H)) {
        grid_.validate();
        if (H_.dim() != static_cast<std::size_t>(grid_.dim))
            throw std::invalid_argument("LocalEnergy: form dimension must match grid dim");
    }

    const Grid& grid() const { return grid_; }
    const HomogeneousForm& form() const { return H_; }
    double degree() const { return H_.degree(); }

    double value(const GridFunction& u) const {
        double v;
        eval(u, v, nullptr);
        return v;
    }

    // value and d(value)/du_k in one pass
    double value_and_subgrad(const GridFunction& u, Vec& grad_out) const {
        grad_out.assign(u.size(), 0.0);
        double v;
        eval(u, v, &grad_out);
        return v;
    }

  private:
    // Shared cell loop. at(i) with out-of-range interior index yields the
    // boundary value 0; gradient contributions land only on interior nodes.
    void eval(const GridFunction& u, double& value, Vec* grad) const {
        check_field(grid_, u, "LocalEnergy");
        double h = grid_.h();
        double w = grid_.cell();
        value = 0.0;
        if (grid_.dim == 1) {
            int n = grid_.n[0];
            auto at = [&](int i) { return (i >= 0 && i < n) ? u[grid_.index(i)] : 0.0; };
            Vec d(1);
            for (int c = -1; c < n; ++c) {  // cell c spans nodes c .. c+1
                d[0] = (at(c + 1) - at(c)) / h;
                value += H_.eval(d) * w;
                if (grad) {
                    Vec gH = H_.grad(d);
                    double f = w / h;
                    if (c >= 0) (*grad)[grid_.index(c)] -= f * gH[0];
                    if (c + 1 < n) (*grad)[grid_.index(c + 1)] += f * gH[0];
                }
            }
        } else {
            int nx = grid_.n[0], ny = grid_.n[1];
            auto at = [&](int i, int j) {
                return (i >= 0 && i < nx && j >= 0 && j < ny) ? u[grid_.index(i, j)] : 0.0;
            };
            Vec d(2);
            for (int cj = -1; cj < ny; ++cj) {
                for (int ci = -1; ci < nx; ++ci) {
                    double u00 = at(ci, cj);
                    d[0] = (at(ci + 1, cj) - u00) / h;
                    d[1] = (at(ci, cj + 1) - u00) / h;
                    value += H_.eval(d) * w;
                    if (grad) {
                        Vec gH = H_.grad(d);
                        double f = w / h;
                        if (ci >= 0 && cj >= 0)
                            (*grad)[grid_.index(ci, cj)] -= f * (gH[0] + gH[1]);
                        if (ci + 1 < nx && cj >= 0) (*grad)[grid_.index(ci + 1, cj)] += f * gH[0];
                        if (ci >= 0 && cj + 1 < ny) (*grad)[grid_.index(ci, cj + 1)] += f * gH[1];
                    }
                }
            }
        }
    }

    Grid grid_;
    HomogeneousForm H_;
};

}  // namespace picone
