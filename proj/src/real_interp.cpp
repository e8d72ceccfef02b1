#include "interp/real_interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace interp {

namespace {

constexpr double kTailFraction = 1e-12;
constexpr int kMaxDepth = 48;
constexpr std::size_t kPanels = 32;

void check_q(double q)
{
    if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("real_norm: q must lie in [1, inf), got " + std::to_string(q));
}

class AdaptiveSimpson {
public:
    template <typename F>
    AdaptiveSimpson(F& f, double a, double b, double fa, double fm, double fb, double tol)
    {
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        value_ = refine(f, a, b, fa, fm, fb, whole, tol, 0);
    }

    double value() const { return value_; }
    double error() const { return error_; }

private:
    template <typename F>
    double refine(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth)
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double diff = left + right - whole;
        if (depth >= kMaxDepth || std::abs(diff) <= 15.0 * tol) {
            error_ += std::abs(diff);
            return left + right + diff / 15.0;
        }
        return refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    double value_ = 0.0;
    double error_ = 0.0;
};

} // namespace

KCache::KCache(CoupleSpec couple, CVector x)
    : couple_(std::move(couple)), x_(std::move(x))
{
    require_same_dim(couple_.dim(), x_.size(), "KCache");
    norm0_ = norm(couple_.x0(), x_);
    norm1_ = norm(couple_.x1(), x_);
}

double KCache::at_log_t(double u)
{
    if (auto it = cache_.find(u); it != cache_.end()) return it->second;
    const double v = k_functional(couple_, x_, std::exp(u)).value;
    cache_.emplace(u, v);
    return v;
}

std::pair<double, double> KCache::transition_window() const
{
    const auto& m0 = couple_.x0().multipliers();
    const auto& m1 = couple_.x1().multipliers();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < x_.size(); ++k) {
        if (x_[k] == Complex{}) continue;
        const double r = std::log(m0[k]) - std::log(m1[k]);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

QuadratureResult real_norm_detailed(KCache& k, double theta, double q, double rel_tol)
{
    require_open_unit(theta, "real_norm");
    check_q(q);
    if (k.zero()) return {};

    auto integrand = [&](double u) {
        const double kv = k.at_log_t(u);
        if (kv <= 0.0) return 0.0;
        return std::exp(q * (std::log(kv) - theta * u));
    };
    const double log_a = std::log(k.norm0());
    const double log_b = std::log(k.norm1());
    // log of the tail integrals beyond U (right) and below L (left)
    auto log_right_tail = [&](double U) { return q * log_a - theta * q * U - std::log(theta * q); };
    auto log_left_tail = [&](double L) { return q * log_b + (1.0 - theta) * q * L - std::log((1.0 - theta) * q); };

    const auto [w_lo, w_hi] = k.transition_window();
    double L = w_lo - 40.0 / ((1.0 - theta) * q);
    double U = w_hi + 40.0 / (theta * q);

    double total = 0.0;
    double error = 0.0;
    auto integrate = [&](double a, double b, double tol_abs) {
        const double h = (b - a) / static_cast<double>(kPanels);
        for (std::size_t i = 0; i < kPanels; ++i) {
            const double pa = a + h * static_cast<double>(i);
            const double pb = i + 1 == kPanels ? b : pa + h;
            AdaptiveSimpson s(integrand, pa, pb, integrand(pa), integrand(0.5 * (pa + pb)), integrand(pb),
                              tol_abs / static_cast<double>(kPanels));
            total += s.value();
            error += s.error();
        }
    };

    // Coarse pass fixes the absolute tolerance, then the accurate pass.
    double coarse = 0.0;
    {
        const std::size_t n = 256;
        const double h = (U - L) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = L + h * static_cast<double>(i);
            coarse += h / 6.0 * (integrand(a) + 4.0 * integrand(a + 0.5 * h) + integrand(a + h));
        }
    }
    const double tol_abs = rel_tol * coarse;
    integrate(L, U, tol_abs);

    for (int pass = 0; pass < 16; ++pass) {
        const double log_target = std::log(kTailFraction * total);
        bool extended = false;
        if (log_right_tail(U) > log_target) {
            const double next = (q * log_a - std::log(theta * q) - (log_target - std::log(10.0))) / (theta * q);
            integrate(U, next, tol_abs);
            U = next;
            extended = true;
        }
        if (log_left_tail(L) > log_target) {
            const double next =
                (log_target - std::log(10.0) - q * log_b + std::log((1.0 - theta) * q)) / ((1.0 - theta) * q);
            integrate(next, L, tol_abs);
            L = next;
            extended = true;
        }
        if (!extended) break;
    }
    const double tails = std::exp(log_right_tail(U)) + std::exp(log_left_tail(L));

    QuadratureResult r;
    r.value = std::pow(total, 1.0 / q);
    r.error_estimate = std::pow(total, 1.0 / q - 1.0) / q * (error + tails);
    return r;
}

double real_norm(const CoupleSpec& couple, std::span<const Complex> x, double theta, double q)
{
    KCache k(couple, CVector(x.begin(), x.end()));
    return real_norm_detailed(k, theta, q).value;
}

double real_norm_inf(KCache& k, double theta)
{
    require_open_unit(theta, "real_norm_inf");
    if (k.zero()) return 0.0;
    auto psi = [&](double u) { return k.at_log_t(u) * std::exp(-theta * u); };

    const auto [lo, hi] = k.transition_window();
    if (hi - lo <= 0.0) return psi(lo);

    constexpr std::size_t nodes = 129;
    const double h = (hi - lo) / static_cast<double>(nodes - 1);
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double u = i + 1 == nodes ? hi : lo + h * static_cast<double>(i);
        const double v = psi(u);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    // golden-section refinement over the two cells around the best node
    double a = lo + h * static_cast<double>(best == 0 ? 0 : best - 1);
    double b = std::min(hi, lo + h * static_cast<double>(best + 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = psi(c), fd = psi(d);
    while (b - a > 1e-10 * std::max(1.0, std::abs(a))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = psi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = psi(d);
        }
    }
    return std::max({best_val, fc, fd});
}

double real_norm_inf(const CoupleSpec& couple, std::span<const Complex> x, double theta)
{
    KCache k(couple, CVector(x.begin(), x.end()));
    return real_norm_inf(k, theta);
}

} // namespace interp
