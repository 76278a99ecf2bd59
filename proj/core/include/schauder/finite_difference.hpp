#pragma once

#include <vector>

#include "schauder/grid.hpp"

namespace schauder {

/// First derivative along one axis: central in the interior, one-sided
/// second-order at the two boundary layers.
GridFn fd_derivative(const GridFn& fn, int axis);

/// Second derivative along one axis, with (2u0 - 5u1 + 4u2 - u3)/h^2 at the
/// boundary.
GridFn fd_second_derivative(const GridFn& fn, int axis);

/// d components of Du.
std::vector<GridFn> fd_gradient(const GridFn& fn);

/// d*d entries of D^2u in row-major order; mixed entries are nested first
/// derivatives averaged over both orders, so the result is symmetric.
std::vector<GridFn> fd_hessian(const GridFn& fn);

GridFn fd_laplacian(const GridFn& fn);

/// Pointwise Euclidean norm of a vector field.
GridFn pointwise_norm(const std::vector<GridFn>& components);

/// Pointwise trace of a row-major d*d field.
GridFn pointwise_trace(const std::vector<GridFn>& hessian);

}  // namespace schauder
