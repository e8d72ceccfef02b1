#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "interp/spaces.hpp"

namespace interp {

/// ||x||_{X_theta} for the diagonal couple, via the closed form
/// [l^p(w0), l^p(w1)]_theta = l^p(w0^(1-theta) w1^theta).
double theta_norm(const CoupleSpec& couple, std::span<const Complex> x, double theta);

/// A function on the closed strip 0 <= Re z <= 1 with values in C^N.
using StripFunction = std::function<CVector(Complex)>;

struct StripSample {
    Complex z;
    CVector value;
};

/// Samples of a strip function on f(it), f(1+it) and optionally the interior.
/// Grids are symmetric around t = 0 with |t| <= t_max.
struct StripFunctionSamples {
    std::vector<StripSample> boundary0; ///< z = i t
    std::vector<StripSample> boundary1; ///< z = 1 + i t
    std::vector<StripSample> interior;  ///< 0 < Re z < 1
};

struct StripGrid {
    double t_max = 10.0;
    std::size_t t_points = 201;   ///< uniform points in [-t_max, t_max]
    std::size_t re_points = 21;   ///< uniform points in [0,1] incl. both boundary lines
};

/// Evaluates f on the boundary lines and on the (re_points - 2) interior lines.
StripFunctionSamples sample_strip(const StripFunction& f, const StripGrid& grid);

/// max( sup_t ||f(it)||_0, sup_t ||f(1+it)||_1 ) over the sampled boundary.
double strip_norm(const StripFunctionSamples& samples, const CoupleSpec& couple);

/// Diagonal extremal function through x at theta:
///   f(z)_k = x_k (m0_k / m1_k)^(z - theta),   m = w^(1/p)  (m = w for p = inf).
/// |f(it)_k| and |f(1+it)_k| do not depend on t, and ||f||_H = ||x||_{X_theta}.
StripFunction extremal_certificate(const CoupleSpec& couple, CVector x, double theta);

/// Upper bound ||x||_{X_theta} <= ||f||_H from the extremal certificate, evaluated
/// on the boundary grid. Equal to theta_norm up to roundoff.
double certificate_norm(const CoupleSpec& couple, std::span<const Complex> x, double theta,
                        double t_max = 10.0, std::size_t grid_n = 201);

struct ThreeLineReport {
    double boundary_sup = 0.0;
    double interior_sup = 0.0;
    double worst_margin = 0.0; ///< (boundary_sup - interior_sup) / boundary_sup
    std::size_t worst_index = 0; ///< interior sample attaining interior_sup
    bool passed = false;
    /// The strip is only sampled on a compact window, so for general functions
    /// the check cannot cover all of the closed strip.
    bool window_only = true;
};

/// Maximum-principle check: every interior sample norm is bounded by the
/// largest boundary sample norm (relative tolerance tol). All norms in `space`.
ThreeLineReport three_line_check(const StripFunctionSamples& samples, const SpaceSpec& space, double tol = 1e-9);

struct Lemma1Report {
    double norm0 = 0.0;
    double norm_theta = 0.0;
    double norm1 = 0.0;
    double c = 0.0;
    double theta = 0.0;
    double margin_lower = 0.0; ///< (i)  ||x||_0 <= c^theta ||x||_theta
    double margin_upper = 0.0; ///< (ii) ||x||_theta <= c^(1-theta) ||x||_1
    bool lower_holds = false;
    bool upper_holds = false;
    /// Ball inclusions B(c^-1 r, X1) in B(c^-theta r, X_theta) in B(r, X0) on
    /// membership predicates; present when a radius was supplied.
    std::optional<bool> inner_inclusion_holds;
    std::optional<bool> outer_inclusion_holds;
    bool passed() const;
};

Lemma1Report lemma1_check(const CoupleSpec& couple, std::span<const Complex> x, double theta,
                          std::optional<double> r = std::nullopt, double tol = 1e-12);

} // namespace interp
