#include "schauder/finite_difference.hpp"

#include <cmath>

namespace schauder {

GridFn fd_derivative(const GridFn& fn, int axis) {
    const SpaceGrid& g = fn.grid;
    GridFn out(g);
    const std::size_t st = g.stride(axis);
    const double inv2h = 1.0 / (2.0 * g.h());
    const int n = g.n;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int k = g.multi(i)[axis];
        double v;
        if (k == 0) {
            v = (-3.0 * fn[i] + 4.0 * fn[i + st] - fn[i + 2 * st]) * inv2h;
        } else if (k == n - 1) {
            v = (3.0 * fn[i] - 4.0 * fn[i - st] + fn[i - 2 * st]) * inv2h;
        } else {
            v = (fn[i + st] - fn[i - st]) * inv2h;
        }
        out[i] = v;
    }
    return out;
}

GridFn fd_second_derivative(const GridFn& fn, int axis) {
    const SpaceGrid& g = fn.grid;
    GridFn out(g);
    const std::size_t st = g.stride(axis);
    const double h = g.h();
    const double inv_h2 = 1.0 / (h * h);
    const int n = g.n;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int k = g.multi(i)[axis];
        double v;
        if (k == 0) {
            v = (2.0 * fn[i] - 5.0 * fn[i + st] + 4.0 * fn[i + 2 * st] - fn[i + 3 * st]) * inv_h2;
        } else if (k == n - 1) {
            v = (2.0 * fn[i] - 5.0 * fn[i - st] + 4.0 * fn[i - 2 * st] - fn[i - 3 * st]) * inv_h2;
        } else {
            v = (fn[i + st] - 2.0 * fn[i] + fn[i - st]) * inv_h2;
        }
        out[i] = v;
    }
    return out;
}

std::vector<GridFn> fd_gradient(const GridFn& fn) {
    std::vector<GridFn> out;
    for (int k = 0; k < fn.grid.d; ++k) out.push_back(fd_derivative(fn, k));
    return out;
}

std::vector<GridFn> fd_hessian(const GridFn& fn) {
    const int d = fn.grid.d;
    std::vector<GridFn> out(static_cast<std::size_t>(d * d));
    const auto grad = fd_gradient(fn);
    for (int i = 0; i < d; ++i) {
        out[static_cast<std::size_t>(i * d + i)] = fd_second_derivative(fn, i);
        for (int j = i + 1; j < d; ++j) {
            GridFn dij = fd_derivative(grad[static_cast<std::size_t>(i)], j);
            GridFn dji = fd_derivative(grad[static_cast<std::size_t>(j)], i);
            GridFn avg(fn.grid, 0.5 * (dij.values + dji.values));
            out[static_cast<std::size_t>(i * d + j)] = avg;
            out[static_cast<std::size_t>(j * d + i)] = avg;
        }
    }
    return out;
}

GridFn fd_laplacian(const GridFn& fn) {
    GridFn out(fn.grid);
    for (int k = 0; k < fn.grid.d; ++k) out.values += fd_second_derivative(fn, k).values;
    return out;
}

GridFn pointwise_norm(const std::vector<GridFn>& components) {
    GridFn out(components.front().grid);
    for (const auto& c : components) out.values.array() += c.values.array().square();
    out.values = out.values.cwiseSqrt();
    return out;
}

GridFn pointwise_trace(const std::vector<GridFn>& hessian) {
    const int d = hessian.front().grid.d;
    GridFn out(hessian.front().grid);
    for (int i = 0; i < d; ++i) out.values += hessian[static_cast<std::size_t>(i * d + i)].values;
    return out;
}

}  // namespace schauder
