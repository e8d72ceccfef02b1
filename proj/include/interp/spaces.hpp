#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "interp/types.hpp"

namespace interp {

/// Exponent of a weighted sequence space. Only the Banach cases used by the
/// diagonal model family are representable.
enum class Exponent { One, Two, Infinity };

Exponent exponent_from_value(double p);
double exponent_value(Exponent p);
std::string to_string(Exponent p);

/// Weighted l^p space truncated to N coordinates:
///   ||x|| = (sum_k w_k |x_k|^p)^(1/p),   or max_k w_k |x_k| for p = inf.
///
/// Internally every norm is evaluated through the per-coordinate multipliers
/// m_k = w_k^(1/p) (m_k = w_k for p = inf), so that ||x|| is the plain l^p norm
/// of (m_k |x_k|). Complex interpolation acts on multipliers and weights alike
/// by geometric averaging.
class SpaceSpec {
public:
    SpaceSpec(Exponent p, std::vector<double> weights);

    Exponent exponent() const { return p_; }
    std::size_t dim() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& multipliers() const { return multipliers_; }

    /// max_k w_k / min_k w_k
    double weight_spread() const;

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

private:
    Exponent p_;
    std::vector<double> weights_;
    std::vector<double> multipliers_;
};

/// w_k = (1+k)^(p*s); for p = inf the multiplier convention gives w_k = (1+k)^s.
std::vector<double> poly_weights(Exponent p, double s, std::size_t n);
/// w_k = exp(p*a*k); for p = inf, w_k = exp(a*k).
std::vector<double> exp_weights(Exponent p, double a, std::size_t n);

double norm(const SpaceSpec& space, std::span<const Complex> x);

/// Operator norm of the identity from one diagonal space into another with the
/// same exponent: max_k m_to,k / m_from,k.
double embedding_norm(const SpaceSpec& from, const SpaceSpec& to);

/// Least c with ||x||_{X0} <= c ||x||_{X1}.
double embedding_constant(const SpaceSpec& x0, const SpaceSpec& x1);

/// Regular couple (X0, X1) of diagonal spaces sharing exponent and dimension.
class CoupleSpec {
public:
    /// Uses the least admissible embedding constant.
    CoupleSpec(SpaceSpec x0, SpaceSpec x1);
    /// Explicit constant; rejected if it is smaller than the least admissible one.
    CoupleSpec(SpaceSpec x0, SpaceSpec x1, double c);

    const SpaceSpec& x0() const { return x0_; }
    const SpaceSpec& x1() const { return x1_; }
    double c() const { return c_; }
    std::size_t dim() const { return x0_.dim(); }
    Exponent exponent() const { return x0_.exponent(); }

    friend bool operator==(const CoupleSpec&, const CoupleSpec&) = default;

private:
    SpaceSpec x0_;
    SpaceSpec x1_;
    double c_;
};

/// J(t,x) = max(||x||_0, t ||x||_1).
double j_functional(const CoupleSpec& couple, std::span<const Complex> x, double t);

/// ||x||_cap = J(1,x)
double intersection_norm(const CoupleSpec& couple, std::span<const Complex> x);

/// ||x||_+ = K(1,x); computed by the K-functional solver.
double sum_norm(const CoupleSpec& couple, std::span<const Complex> x);

/// Complex interpolation space [X0, X1]_theta of a diagonal couple:
/// weights w0^(1-theta) * w1^theta, same exponent.
SpaceSpec interpolated_space(const CoupleSpec& couple, double theta);

} // namespace interp
