#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "interp/complex_interp.hpp"
#include "interp/maps.hpp"
#include "interp/report.hpp"

namespace interp {

struct ExperimentConfig {
    CoupleSpec couple_X;
    CoupleSpec couple_Y;
    MapSpec map;
    double r = 1.0;
    std::vector<double> thetas;
    double q = 2.0;
    std::size_t n_samples = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    unsigned threads = 1;
    /// Replaces the certified M0 (used to exercise the violation path).
    std::optional<double> force_M0{};

    /// Throws DomainError / DimensionError naming the offending field.
    void validate() const;
};

/// M0^(1-theta) M1^theta, with the continuous extension 0 when either is 0.
double interpolated_bound(double M0, double M1, double theta);

struct BallBounds {
    double M0 = 0.0; ///< sup ||Phi||_Y0 over B(r, X0)
    double M1 = 0.0; ///< sup ||Phi||_Y1 over B(r/c, X1)
};

/// Certified M0, M1 (force_M0 applied).
BallBounds certified_ball_bounds(const ExperimentConfig& config);

/// ||T x||_Ytheta <= M0^(1-theta) M1^theta ||x||_Xtheta for a diagonal linear map,
/// with M0, M1 the exact diagonal operator norms X0->Y0 and X1->Y1.
BoundReport linear_check(const ExperimentConfig& config);

/// ||Phi(x)||_Ytheta <= M0^(1-theta) M1^theta on the open ball B(c^-theta r, X_theta).
BoundReport theorem1_check(const ExperimentConfig& config);

/// ||Phi(x)||_Ytheta <= M0^(1-theta) M1^theta ||x||_Xtheta^n for a map homogeneous
/// of degree n, M0 and M1 the certified constants of ||Phi(x)|| <= M ||x||^n.
BoundReport corollary_check(const ExperimentConfig& config, int n);

/// Replays the construction behind the ball bound at one point x and theta:
///   f        extremal strip function through x, ||f||_H = ||x||_Xtheta < c^-theta r
///   g(z)     = c^(theta - z) f(z), kept inside B(r, X0) on the strip and in
///              B(r/c, X1) on Re z = 1
///   F(z)     = M0^(z-1) M1^(-z) Phi(g(z)), with ||F||_H <= 1
/// and checks each inequality on the strip grid. Throws DomainError if x is not
/// in B(c^-theta r, X_theta).
BoundReport proof_walkthrough(const ExperimentConfig& config, std::span<const Complex> x, double theta,
                              const StripGrid& grid = {});

/// B(r/c, X1) in B(c^-theta r, X_theta) in B(r, X0) on sampled points whose
/// X1 norms straddle r/c.
BoundReport ball_inclusion_check(const CoupleSpec& couple, double r, double theta, std::size_t n_samples,
                                 std::uint64_t seed, unsigned threads = 1);

/// Largest ||Phi(x)||_Ytheta / (M0^(1-theta) M1^theta) over scaled basis vectors
/// with ||x||_Xtheta = fraction * c^-theta r.
double sharpness_probe(const ExperimentConfig& config, double theta, double fraction = 0.9995);

} // namespace interp
