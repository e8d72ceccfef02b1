#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "interp/spaces.hpp"

namespace interp {

/// A decomposition x = x0 + x1 attaining (up to solver tolerance) the infimum
///   K(t,x) = inf { ||x0||_0 + t ||x1||_1 : x = x0 + x1 }.
struct KDecomposition {
    CVector x0;
    CVector x1;
    double value = 0.0; ///< ||x0||_0 + t ||x1||_1, recomputed from x0 and x1
    double t = 0.0;
};

/// Solves the K-functional of a diagonal couple.
///
/// The optimal split has the form x1 = s (.) x with real s_k in [0,1]:
///  - p = 1 decouples coordinatewise, s_k = [t w1_k < w0_k];
///  - p = 2 reduces to a scalar monotone equation in lambda = ||x1||_1/||x0||_0,
///    solved by bisection on log(lambda), with projected gradient as fallback
///    when the bracket degenerates numerically;
///  - p = inf is solved by bisection on the optimal value.
KDecomposition k_functional(const CoupleSpec& couple, std::span<const Complex> x, double t);

/// Brute-force reference: minimizes ||(1-s) x||_0 + t ||s x||_1 over the
/// grid s in {0, 1/R, ..., 1}^N, N <= 4. The first N-1 coordinates are
/// enumerated exhaustively; along the last one the objective is convex, so the
/// grid samples form a convex sequence and a point without a strictly smaller
/// neighbour is its exact minimum. The walk to such a point starts from the
/// minimizer found for the previous outer grid point.
double k_oracle_grid(const CoupleSpec& couple, std::span<const Complex> x, double t, std::size_t resolution);

/// Gap between k_oracle_grid and the true infimum is at most
/// (||x||_0 + t ||x||_1) / (2R) (rounding the optimal s to the grid).
double k_grid_error_bound(const CoupleSpec& couple, std::span<const Complex> x, double t, std::size_t resolution);

/// (t, K(t,x)) for each t of the grid, in grid order.
std::vector<std::pair<double, double>> k_profile(const CoupleSpec& couple, std::span<const Complex> x,
                                                 std::span<const double> t_grid, unsigned threads = 1);

namespace detail {

/// Projected-gradient minimization over s in [0,1]^N for the p = 2 problem.
/// Exposed for testing; k_functional only calls it if bisection cannot bracket.
KDecomposition k_projected_gradient(const CoupleSpec& couple, std::span<const Complex> x, double t);

} // namespace detail

} // namespace interp
