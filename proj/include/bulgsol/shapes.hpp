#pragma once

#include <cstdint>
#include <vector>

#include "bulgsol/partition.hpp"
#include "bulgsol/rational.hpp"

namespace bulgsol {

enum class ShapeKind { Triangle, Exponential, Interpolating };

/// Analytic limit shape: the unit triangle, e^{-x}, or the piecewise-linear
/// family interpolating between them (widths A_0..A_{Z-1}, slopes
/// s_i = C(Z-i)/z^2, height 1, area 1).
struct LimitShape {
    ShapeKind kind = ShapeKind::Triangle;
    double C = 0.0;
    double z = 0.0;
    std::int64_t sections = 0;  // Z = ceil(z)
    std::vector<double> widths;
    std::vector<double> slopes;

    static LimitShape triangle();
    static LimitShape exponential();

    /// Support width: where the shape reaches zero (infinity for e^{-x}).
    double total_width() const;
};

/// Right-hand side of the z-equation: (z^2 + Z^2)/Z - H_Z with Z = ceil(z).
/// Continuous and strictly increasing on (0, inf).
double g_of_z(double z);

/// The unique z > 0 with g(z) = 2C. Closed form sqrt(2C) when 2C <= g(1) = 1;
/// otherwise the integer interval is located by scanning and bisected to
/// |g(z) - 2C| <= 1e-12 (cap 200 iterations).
double solve_z(double C);

LimitShape interpolating_shape(double C);

double shape_eval(const LimitShape& shape, double x);

/// Right derivative; zero beyond the support.
double shape_right_derivative(const LimitShape& shape, double x);

/// Finite-n regime classification by C_n = n q^2: triangle below c_lo,
/// exponential above c_hi, interpolating in between. A diagnostic
/// convention, not an asymptotic claim.
LimitShape regime_shape(const Rational& q, std::int64_t n, double c_lo = 0.05, double c_hi = 50.0);

struct ShapeDistance {
    std::vector<double> grid;
    std::vector<double> errors;
    double sup_error = 0.0;
};

/// Sup and per-point distance between the downscaled boundary of p (deck
/// size n) and the shape, over an ascending grid of positive abscissae.
ShapeDistance empirical_distance(const Partition& p, std::int64_t n, const LimitShape& shape,
                                 const std::vector<double>& grid);

/// Default measurement grid: uniform points on [0.1, x_end], x_end chosen per
/// shape kind, nudged off the partition's step abscissae by half a column.
std::vector<double> default_distance_grid(const LimitShape& shape, const Partition& p, std::int64_t n,
                                          std::size_t points = 256);

/// Builds a convex partition of exactly n cards whose diagram follows the
/// shape. For c > 0 every slope must be an integer multiple of c and the
/// slab counts are exact; for c = 0 slabs are floor-rounded under the scaling
/// a_n = sqrt(n/2m), m = round(n^{1/5}). The first part absorbs the slack so
/// the total is exactly n.
Partition shape_to_stable(const LimitShape& shape, double c, std::int64_t n);

/// The scaling factor a_n used by shape_to_stable (for diagnostics).
double shape_to_stable_scaling(double c, std::int64_t n);

} // namespace bulgsol
