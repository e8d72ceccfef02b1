#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "interp/maps.hpp"
#include "interp/report.hpp"

namespace interp {

/// The requested node count would fold a nonzero homogeneous part onto the
/// requested order.
class AliasingError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Smallest power of two m with m > max(degree, n); exact for every order <= n.
std::size_t default_nodes(int degree, int n);

/// Homogeneous part of order n of a polynomial map at h, from the contour
/// integral over |z| = rho sampled at the m-th roots of unity:
///   Phi_n(h) = 1/(m rho^n) sum_j Phi(rho w^j h) w^(-jn),   w = exp(2 pi i / m).
/// The average picks up every part of order k = n (mod m), so m must exceed the
/// degree and n mod m must not land on a lower order. m = 0 selects default_nodes.
CVector taylor_coefficient(const MapExpr& map, std::span<const Complex> h, int n, double rho = 1.0,
                           std::size_t m = 0);

/// Phi_0(h), ..., Phi_{n_max}(h) from one shared set of contour evaluations.
std::vector<CVector> taylor_coefficients(const MapExpr& map, std::span<const Complex> h, int n_max,
                                         double rho = 1.0, std::size_t m = 0);

/// sum_{n <= n_max} Phi_n(h); n_max must be at least the degree.
CVector taylor_reassemble(const MapExpr& map, std::span<const Complex> h, int n_max);

struct CoefficientCheckOptions {
    int n_max = 4;
    std::vector<double> thetas{0.5};
    std::size_t n_samples = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    unsigned threads = 1;
    std::optional<double> force_M0;
};

/// Bounds on the homogeneous parts of a map bounded by M0 on B(r, X0) (into Y0)
/// and by M1 on B(r/c, X1) (into Y1), for sampled h and every n <= n_max:
///   coef_0:      ||Phi_n(h)||_Y0     <= M0 / r^n ||h||_X0^n
///   coef_1:      ||Phi_n(h)||_Y1     <= M1 / (r/c)^n ||h||_X1^n
///   coef_theta:  ||Phi_n(h)||_Ytheta <= M0^(1-theta) M1^theta (||h||_Xtheta / (c^-theta r))^n
///   tail_theta:  ||sum_{k>n} Phi_k(h)||_Ytheta <= M0^(1-theta) M1^theta z^(n+1) / (1 - z)
/// where z = ||h||_Xtheta / (c^-theta r) is drawn in (0.1, 0.9) and the left side
/// is the deficit of the partial sum against eval_map. M0, M1 are certified bounds.
BoundReport coefficient_bound_check(const MapExpr& map, const CoupleSpec& couple_x, const CoupleSpec& couple_y,
                                    double r, const CoefficientCheckOptions& options);

} // namespace interp
