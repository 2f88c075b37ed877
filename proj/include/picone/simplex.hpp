#pragma once

#include <algorithm>
#include <stdexcept>

#include "picone/vec.hpp"

namespace picone {

// Euclidean projection of y onto { x >= 0, sum x = target }: sort the entries
// descending, find the largest prefix whose shifted values stay positive, and
// subtract that shift everywhere, clamping at zero.
inline Vec project_to_simplex(const Vec& y, double target) {
    if (!(target > 0.0)) throw std::invalid_argument("project_to_simplex: target must be > 0");
    if (y.empty()) throw std::invalid_argument("project_to_simplex: empty input");
    Vec sorted = y;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double running = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        running += sorted[j];
        double t = (running - target) / static_cast<double>(j + 1);
        if (sorted[j] - t > 0.0) theta = t;
    }
    Vec x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::max(y[i] - theta, 0.0);
    return x;
}

}  // namespace picone
