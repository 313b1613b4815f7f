#pragma once

#include "remstab/linalg.hpp"

#include <functional>

// Central-difference kernels with one Richardson step (ratios h and 2h).
// Truncation error is O(h^4) for smooth inputs.
namespace remstab::fd {

using ScalarFn = std::function<double(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;
using MatrixFn = std::function<Mat(const Vec&)>;
using CurveFn = std::function<Vec(double)>;

/// d/dt f(t) at t0.
Vec derivative(const CurveFn& f, double t0, double h);

/// d/dt F(x + t v) at t = 0 for matrix-valued F.
Mat directional(const MatrixFn& f, const Vec& x, const Vec& v, double h);

/// Gradient of a scalar function.
Vec gradient(const ScalarFn& f, const Vec& x, double h);

/// Jacobian, rows = outputs, cols = inputs.
Mat jacobian(const VectorFn& f, const Vec& x, double h);

/// Hessian from nested central differences, symmetrized.
Mat hessian(const ScalarFn& f, const Vec& x, double h);

/// d^2/(ds dt) g(s, t) at (0, 0) via the four-point stencil.
Vec mixed_partial(const std::function<Vec(double, double)>& g, double hs, double ht);

}  // namespace remstab::fd
