#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>

#include "interp/kfunc.hpp"

namespace interp {

/// Memoized t -> K(t,x) for one (couple, x) pair, keyed by u = log t.
/// Sweeps over theta and q reuse the K solves at shared quadrature nodes.
/// Not thread-safe; use one cache per thread.
class KCache {
public:
    KCache(CoupleSpec couple, CVector x);

    /// K(e^u, x)
    double at_log_t(double u);

    const CoupleSpec& couple() const { return couple_; }
    const CVector& x() const { return x_; }
    double norm0() const { return norm0_; }
    double norm1() const { return norm1_; }
    bool zero() const { return norm0_ == 0.0; }

    /// Range [log t_lo, log t_hi] outside of which K(t,x) equals t||x||_1
    /// (below) or ||x||_0 (above): the extreme ratios m0_k/m1_k over the
    /// support of x.
    std::pair<double, double> transition_window() const;

    std::size_t solves() const { return cache_.size(); }

private:
    CoupleSpec couple_;
    CVector x_;
    double norm0_;
    double norm1_;
    std::map<double, double> cache_;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; ///< in units of value (after the q-th root)
};

/// ||x||_{theta,q} = ( int_0^inf (t^-theta K(t,x))^q dt/t )^(1/q)
///
/// Integrated in u = log t by adaptive Simpson (relative tolerance rel_tol).
/// The integrand is bounded by (e^{-theta u} ||x||_0)^q and (e^{(1-theta)u} ||x||_1)^q,
/// which gives closed-form tail bounds; the window is widened until both tails
/// fall under 1e-12 of the accumulated integral.
QuadratureResult real_norm_detailed(KCache& k, double theta, double q, double rel_tol = 1e-8);

double real_norm(const CoupleSpec& couple, std::span<const Complex> x, double theta, double q);

/// ||x||_{theta,inf} = sup_t t^-theta K(t,x).
double real_norm_inf(KCache& k, double theta);
double real_norm_inf(const CoupleSpec& couple, std::span<const Complex> x, double theta);

} // namespace interp
