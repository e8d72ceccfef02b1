#include "interp/complex_interp.hpp"

#include <algorithm>
#include <cmath>

#include "interp/report.hpp"

namespace interp {

double theta_norm(const CoupleSpec& couple, std::span<const Complex> x, double theta)
{
    return norm(interpolated_space(couple, theta), x);
}

StripFunctionSamples sample_strip(const StripFunction& f, const StripGrid& grid)
{
    if (grid.t_points < 1 || grid.re_points < 2) throw DomainError("sample_strip: grid too small");
    if (!(grid.t_max >= 0.0)) throw DomainError("sample_strip: t_max must be nonnegative");
    std::vector<double> ts(grid.t_points);
    for (std::size_t i = 0; i < grid.t_points; ++i) {
        // symmetric by construction: t_i = -t_{n-1-i}
        const double frac = grid.t_points == 1 ? 0.0 : 2.0 * static_cast<double>(i) / static_cast<double>(grid.t_points - 1) - 1.0;
        ts[i] = grid.t_max * frac;
    }
    StripFunctionSamples s;
    for (double t : ts) {
        s.boundary0.push_back({Complex{0.0, t}, f(Complex{0.0, t})});
        s.boundary1.push_back({Complex{1.0, t}, f(Complex{1.0, t})});
    }
    for (std::size_t j = 1; j + 1 < grid.re_points; ++j) {
        const double re = static_cast<double>(j) / static_cast<double>(grid.re_points - 1);
        for (double t : ts) s.interior.push_back({Complex{re, t}, f(Complex{re, t})});
    }
    return s;
}

double strip_norm(const StripFunctionSamples& samples, const CoupleSpec& couple)
{
    if (samples.boundary0.empty() || samples.boundary1.empty()) throw DomainError("strip_norm: empty boundary samples");
    double sup = 0.0;
    for (const auto& s : samples.boundary0) sup = std::max(sup, norm(couple.x0(), s.value));
    for (const auto& s : samples.boundary1) sup = std::max(sup, norm(couple.x1(), s.value));
    return sup;
}

StripFunction extremal_certificate(const CoupleSpec& couple, CVector x, double theta)
{
    require_open_unit(theta, "extremal_certificate");
    require_same_dim(couple.dim(), x.size(), "extremal_certificate");
    std::vector<double> log_ratio(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        log_ratio[k] = std::log(couple.x0().multipliers()[k]) - std::log(couple.x1().multipliers()[k]);
    }
    return [x = std::move(x), log_ratio = std::move(log_ratio), theta](Complex z) {
        CVector v(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) v[k] = x[k] * std::exp((z - theta) * log_ratio[k]);
        return v;
    };
}

double certificate_norm(const CoupleSpec& couple, std::span<const Complex> x, double theta, double t_max,
                        std::size_t grid_n)
{
    const auto f = extremal_certificate(couple, CVector(x.begin(), x.end()), theta);
    return strip_norm(sample_strip(f, StripGrid{t_max, grid_n, 2}), couple);
}

ThreeLineReport three_line_check(const StripFunctionSamples& samples, const SpaceSpec& space, double tol)
{
    if (samples.boundary0.empty() || samples.boundary1.empty() || samples.interior.empty()) {
        throw DomainError("three_line_check: boundary and interior samples are required");
    }
    ThreeLineReport r;
    for (const auto& s : samples.boundary0) r.boundary_sup = std::max(r.boundary_sup, norm(space, s.value));
    for (const auto& s : samples.boundary1) r.boundary_sup = std::max(r.boundary_sup, norm(space, s.value));
    for (std::size_t i = 0; i < samples.interior.size(); ++i) {
        const double v = norm(space, samples.interior[i].value);
        if (v > r.interior_sup) {
            r.interior_sup = v;
            r.worst_index = i;
        }
    }
    r.worst_margin = relative_margin(r.interior_sup, r.boundary_sup);
    r.passed = r.worst_margin >= -tol;
    return r;
}

bool Lemma1Report::passed() const
{
    return lower_holds && upper_holds && inner_inclusion_holds.value_or(true) && outer_inclusion_holds.value_or(true);
}

Lemma1Report lemma1_check(const CoupleSpec& couple, std::span<const Complex> x, double theta, std::optional<double> r,
                          double tol)
{
    Lemma1Report rep;
    rep.theta = theta;
    rep.c = couple.c();
    rep.norm0 = norm(couple.x0(), x);
    rep.norm1 = norm(couple.x1(), x);
    rep.norm_theta = theta_norm(couple, x, theta);
    const double c = couple.c();
    rep.margin_lower = relative_margin(rep.norm0, std::pow(c, theta) * rep.norm_theta);
    rep.margin_upper = relative_margin(rep.norm_theta, std::pow(c, 1.0 - theta) * rep.norm1);
    rep.lower_holds = rep.margin_lower >= -tol;
    rep.upper_holds = rep.margin_upper >= -tol;
    if (r) {
        const double radius = *r;
        const bool in1 = rep.norm1 < radius / c;
        const bool in_theta = rep.norm_theta < std::pow(c, -theta) * radius * (1.0 + tol);
        const bool in_theta_strict = rep.norm_theta < std::pow(c, -theta) * radius;
        const bool in0 = rep.norm0 < radius * (1.0 + tol);
        rep.inner_inclusion_holds = !in1 || in_theta;
        rep.outer_inclusion_holds = !in_theta_strict || in0;
    }
    return rep;
}

} // namespace interp
