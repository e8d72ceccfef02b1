#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "interp/rng.hpp"
#include "interp/spaces.hpp"

namespace testing_support {

using namespace interp;

inline bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline CVector real_vec(std::initializer_list<double> v)
{
    CVector out;
    for (double x : v) out.emplace_back(x, 0.0);
    return out;
}

/// Direct evaluation of the weighted norm from its definition, no multipliers.
inline double naive_norm(Exponent p, const std::vector<double>& w, const CVector& x)
{
    if (p == Exponent::Infinity) {
        double m = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, w[k] * std::abs(x[k]));
        return m;
    }
    const double pv = exponent_value(p);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * std::pow(std::abs(x[k]), pv);
    return std::pow(s, 1.0 / pv);
}

inline Exponent pick_exponent(std::uint64_t i)
{
    static constexpr Exponent all[3] = {Exponent::One, Exponent::Two, Exponent::Infinity};
    return all[i % 3];
}

/// Random diagonal couple with log-normal weights; X1 weights are shifted up
/// by a random factor so the couple is not trivial.
inline CoupleSpec random_couple(RandomStream& rng, std::size_t n, Exponent p, double spread = 1.5)
{
    std::vector<double> w0(n), w1(n);
    for (std::size_t k = 0; k < n; ++k) {
        w0[k] = std::exp(spread * rng.normal());
        w1[k] = std::exp(spread * rng.normal());
    }
    return CoupleSpec(SpaceSpec(p, w0), SpaceSpec(p, w1));
}

inline CoupleSpec identity_couple(Exponent p, std::vector<double> w)
{
    return CoupleSpec(SpaceSpec(p, w), SpaceSpec(p, w));
}

inline CVector scaled(CVector x, Complex a)
{
    for (auto& z : x) z *= a;
    return x;
}

} // namespace testing_support
