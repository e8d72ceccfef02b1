#include "interp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace interp {

namespace {

constexpr double kSteepSpread = 1e8;

double root(Exponent p, double v)
{
    return p == Exponent::Two ? std::sqrt(v) : v;
}

double inverse_root_exponent(Exponent p)
{
    return p == Exponent::Two ? 0.5 : 1.0;
}

void require_compatible(const SpaceSpec& a, const SpaceSpec& b, const char* what)
{
    if (a.exponent() != b.exponent()) {
        throw DomainError(std::string(what) + ": spaces must share the exponent p");
    }
    require_same_dim(a.dim(), b.dim(), what);
}

} // namespace

Exponent exponent_from_value(double p)
{
    if (p == 1.0) return Exponent::One;
    if (p == 2.0) return Exponent::Two;
    if (std::isinf(p) && p > 0) return Exponent::Infinity;
    throw DomainError("exponent p must be 1, 2 or inf, got " + std::to_string(p));
}

double exponent_value(Exponent p)
{
    switch (p) {
    case Exponent::One: return 1.0;
    case Exponent::Two: return 2.0;
    case Exponent::Infinity: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

std::string to_string(Exponent p)
{
    switch (p) {
    case Exponent::One: return "1";
    case Exponent::Two: return "2";
    case Exponent::Infinity: return "inf";
    }
    return "?";
}

SpaceSpec::SpaceSpec(Exponent p, std::vector<double> weights)
    : p_(p), weights_(std::move(weights))
{
    if (weights_.empty()) throw DomainError("space dimension N must be at least 1");
    multipliers_.reserve(weights_.size());
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw DomainError("space weights must be finite and strictly positive");
        }
        multipliers_.push_back(root(p_, w));
    }
}

double SpaceSpec::weight_spread() const
{
    const auto [lo, hi] = std::minmax_element(weights_.begin(), weights_.end());
    return *hi / *lo;
}

std::vector<double> poly_weights(Exponent p, double s, std::size_t n)
{
    const double power = p == Exponent::Two ? 2.0 * s : s;
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = std::pow(1.0 + static_cast<double>(k), power);
    return w;
}

std::vector<double> exp_weights(Exponent p, double a, std::size_t n)
{
    const double rate = p == Exponent::Two ? 2.0 * a : a;
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = std::exp(rate * static_cast<double>(k));
    return w;
}

double norm(const SpaceSpec& space, std::span<const Complex> x)
{
    require_same_dim(space.dim(), x.size(), "norm");
    const auto& m = space.multipliers();
    switch (space.exponent()) {
    case Exponent::One: {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += m[k] * std::abs(x[k]);
        return s;
    }
    case Exponent::Two: {
        // scaled sum of squares guards against overflow for steep weights
        double scale = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) scale = std::max(scale, m[k] * std::abs(x[k]));
        if (scale == 0.0) return 0.0;
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double a = m[k] * std::abs(x[k]) / scale;
            s += a * a;
        }
        return scale * std::sqrt(s);
    }
    case Exponent::Infinity: {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s = std::max(s, m[k] * std::abs(x[k]));
        return s;
    }
    }
    return 0.0;
}

double embedding_norm(const SpaceSpec& from, const SpaceSpec& to)
{
    require_compatible(from, to, "embedding_norm");
    const auto& wf = from.weights();
    const auto& wt = to.weights();
    if (from.weight_spread() <= kSteepSpread && to.weight_spread() <= kSteepSpread) {
        double best = 0.0;
        for (std::size_t k = 0; k < wf.size(); ++k) best = std::max(best, wt[k] / wf[k]);
        return root(from.exponent(), best);
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < wf.size(); ++k) best = std::max(best, std::log(wt[k]) - std::log(wf[k]));
    return std::exp(inverse_root_exponent(from.exponent()) * best);
}

double embedding_constant(const SpaceSpec& x0, const SpaceSpec& x1)
{
    return embedding_norm(x1, x0);
}

CoupleSpec::CoupleSpec(SpaceSpec x0, SpaceSpec x1)
    : x0_(std::move(x0)), x1_(std::move(x1)), c_(0.0)
{
    c_ = embedding_constant(x0_, x1_);
}

CoupleSpec::CoupleSpec(SpaceSpec x0, SpaceSpec x1, double c)
    : CoupleSpec(std::move(x0), std::move(x1))
{
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("embedding constant c must be positive");
    if (c < c_ * (1.0 - 1e-12)) {
        throw DomainError("embedding constant c=" + std::to_string(c) +
                          " is below the least admissible value " + std::to_string(c_));
    }
    c_ = c;
}

double j_functional(const CoupleSpec& couple, std::span<const Complex> x, double t)
{
    if (!(t >= 0.0)) throw DomainError("j_functional: t must be nonnegative");
    return std::max(norm(couple.x0(), x), t * norm(couple.x1(), x));
}

double intersection_norm(const CoupleSpec& couple, std::span<const Complex> x)
{
    return j_functional(couple, x, 1.0);
}

SpaceSpec interpolated_space(const CoupleSpec& couple, double theta)
{
    require_open_unit(theta, "interpolated_space");
    const auto& w0 = couple.x0().weights();
    const auto& w1 = couple.x1().weights();
    std::vector<double> w(w0.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = std::exp((1.0 - theta) * std::log(w0[k]) + theta * std::log(w1[k]));
    }
    return SpaceSpec(couple.exponent(), std::move(w));
}

} // namespace interp
