#include "interp/kfunc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "interp/parallel.hpp"

namespace interp {

namespace {

constexpr double kLogLambdaTol = 1e-12;
constexpr int kMaxBisection = 200;
constexpr double kPgdTol = 1e-10;
constexpr int kMaxPgdIterations = 50000;

void check_args(const CoupleSpec& couple, std::span<const Complex> x, double t, const char* what)
{
    if (!(t >= 0.0) || std::isinf(t)) throw DomainError(std::string(what) + ": t must be finite and nonnegative");
    require_same_dim(couple.dim(), x.size(), what);
}

bool is_zero(std::span<const Complex> x)
{
    return std::all_of(x.begin(), x.end(), [](const Complex& z) { return z == Complex{}; });
}

KDecomposition from_split(const CoupleSpec& couple, std::span<const Complex> x, double t,
                          const std::vector<double>& s)
{
    KDecomposition d;
    d.t = t;
    d.x0.resize(x.size());
    d.x1.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        d.x1[k] = s[k] * x[k];
        d.x0[k] = x[k] - d.x1[k];
    }
    d.value = norm(couple.x0(), d.x0) + t * norm(couple.x1(), d.x1);
    return d;
}

KDecomposition uniform_split(const CoupleSpec& couple, std::span<const Complex> x, double t, double s)
{
    return from_split(couple, x, t, std::vector<double>(x.size(), s));
}

double log_sum_exp(const std::vector<double>& v)
{
    const double top = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(top)) return top;
    double s = 0.0;
    for (double e : v) s += std::exp(e - top);
    return top + std::log(s);
}

double log_add_exp(double a, double b)
{
    const double top = std::max(a, b);
    return top + std::log1p(std::exp(std::min(a, b) - top));
}

KDecomposition solve_l1(const CoupleSpec& couple, std::span<const Complex> x, double t)
{
    const auto& m0 = couple.x0().multipliers();
    const auto& m1 = couple.x1().multipliers();
    std::vector<double> s(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) s[k] = t * m1[k] < m0[k] ? 1.0 : 0.0;
    return from_split(couple, x, t, s);
}

// p = 2. With r_k = w0_k/w1_k the stationary split is
//   s_k = r_k lambda / (r_k lambda + t)
// and the fixed point lambda = ||x1||_1/||x0||_0 is equivalent to R(lambda) = t, where
//   R(lambda)^2 = sum_k r_k pi_k / sum_k pi_k,   pi_k = w0_k |x_k|^2 / (r_k lambda + t)^2,
// a weighted mean of r_k that decreases in lambda. R(0) <= t means x1 = 0 is optimal,
// R(inf) >= t means x0 = 0 is optimal.
class L2Split {
public:
    L2Split(const CoupleSpec& couple, std::span<const Complex> x, double t)
        : t_(t), log_t_(std::log(t))
    {
        const auto& w0 = couple.x0().weights();
        const auto& w1 = couple.x1().weights();
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k] == Complex{}) continue;
            const double la = std::log(w0[k]) + 2.0 * std::log(std::abs(x[k]));
            log_mass_.push_back(la);
            log_r_.push_back(std::log(w0[k]) - std::log(w1[k]));
        }
    }

    double log_r_min() const { return *std::min_element(log_r_.begin(), log_r_.end()); }
    double log_r_max() const { return *std::max_element(log_r_.begin(), log_r_.end()); }

    /// log R(lambda)^2 at lambda = exp(u)
    double log_r2(double u) const
    {
        std::vector<double> num(log_r_.size()), den(log_r_.size());
        for (std::size_t k = 0; k < log_r_.size(); ++k) {
            const double lp = log_mass_[k] - 2.0 * log_add_exp(log_r_[k] + u, log_t_);
            den[k] = lp;
            num[k] = lp + log_r_[k];
        }
        return log_sum_exp(num) - log_sum_exp(den);
    }

    double log_r2_at_zero() const
    {
        std::vector<double> num(log_r_.size());
        for (std::size_t k = 0; k < log_r_.size(); ++k) num[k] = log_mass_[k] + log_r_[k];
        return log_sum_exp(num) - log_sum_exp(log_mass_);
    }

    double log_r2_at_infinity() const
    {
        std::vector<double> num(log_r_.size()), den(log_r_.size());
        for (std::size_t k = 0; k < log_r_.size(); ++k) {
            den[k] = log_mass_[k] - 2.0 * log_r_[k];
            num[k] = log_mass_[k] - log_r_[k];
        }
        return log_sum_exp(num) - log_sum_exp(den);
    }

    double log_t2() const { return 2.0 * log_t_; }
    double log_t() const { return log_t_; }

private:
    double t_;
    double log_t_;
    std::vector<double> log_mass_;
    std::vector<double> log_r_;
};

const KDecomposition& best_of(const KDecomposition& a, const KDecomposition& b)
{
    return b.value < a.value ? b : a;
}

KDecomposition solve_l2(const CoupleSpec& couple, std::span<const Complex> x, double t)
{
    const L2Split split(couple, x, t);
    const KDecomposition keep_all = uniform_split(couple, x, t, 0.0);
    const KDecomposition move_all = uniform_split(couple, x, t, 1.0);

    if (split.log_t2() >= split.log_r2_at_zero()) return keep_all;
    if (split.log_t2() <= split.log_r2_at_infinity()) return move_all;

    double lo = split.log_t() - split.log_r_max() - 40.0;
    double hi = split.log_t() - split.log_r_min() + 40.0;
    if (!(split.log_r2(lo) > split.log_t2() && split.log_r2(hi) < split.log_t2())) {
        return best_of(best_of(keep_all, move_all), detail::k_projected_gradient(couple, x, t));
    }
    for (int it = 0; it < kMaxBisection && hi - lo > kLogLambdaTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (split.log_r2(mid) > split.log_t2()) lo = mid;
        else hi = mid;
    }
    const double u = 0.5 * (lo + hi);
    const auto& w0 = couple.x0().weights();
    const auto& w1 = couple.x1().weights();
    std::vector<double> s(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double log_r = std::log(w0[k]) - std::log(w1[k]);
        s[k] = 1.0 / (1.0 + std::exp(split.log_t() - log_r - u));
    }
    return best_of(best_of(keep_all, move_all), from_split(couple, x, t, s));
}

// p = inf. For a level alpha = ||x0||_0 the cheapest x1 is s_k = max(0, 1 - alpha/a_k),
// so K = min_alpha alpha + t max_k b_k (1 - alpha/a_k)^+. A value v is attainable iff
// the per-coordinate constraints t b_k (1 - alpha/a_k) <= v - alpha, 0 <= alpha <= v,
// cut out a nonempty interval of alpha.
KDecomposition solve_linf(const CoupleSpec& couple, std::span<const Complex> x, double t)
{
    const auto& m0 = couple.x0().multipliers();
    const auto& m1 = couple.x1().multipliers();
    std::vector<double> a, b;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == Complex{}) continue;
        a.push_back(m0[k] * std::abs(x[k]));
        b.push_back(m1[k] * std::abs(x[k]));
    }
    const double a_max = *std::max_element(a.begin(), a.end());
    const double b_max = *std::max_element(b.begin(), b.end());

    auto feasible = [&](double v) -> std::optional<double> {
        double lo = 0.0;
        double hi = std::min(v, a_max);
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double gamma = t * b[k] / a[k] - 1.0;
            const double rhs = t * b[k] - v;
            if (gamma > 0.0) lo = std::max(lo, rhs / gamma);
            else if (gamma < 0.0) hi = std::min(hi, rhs / gamma);
            else if (rhs > 0.0) return std::nullopt;
        }
        if (lo <= hi) return lo;
        return std::nullopt;
    };

    double lo = 0.0;
    double hi = std::min(a_max, t * b_max);
    for (int it = 0; it < kMaxBisection && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) hi = mid;
        else lo = mid;
    }
    const auto alpha = feasible(hi);
    std::vector<double> s(x.size(), 0.0);
    if (alpha) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k] == Complex{}) continue;
            const double ak = m0[k] * std::abs(x[k]);
            s[k] = std::max(0.0, 1.0 - *alpha / ak);
        }
    }
    const KDecomposition interior = from_split(couple, x, t, s);
    return best_of(best_of(uniform_split(couple, x, t, 0.0), uniform_split(couple, x, t, 1.0)), interior);
}

} // namespace

KDecomposition k_functional(const CoupleSpec& couple, std::span<const Complex> x, double t)
{
    check_args(couple, x, t, "k_functional");
    if (is_zero(x)) {
        KDecomposition d;
        d.t = t;
        d.x0.assign(x.size(), Complex{});
        d.x1.assign(x.size(), Complex{});
        return d;
    }
    // K(0,x) = 0, attained by moving everything into x1.
    if (t == 0.0) return uniform_split(couple, x, t, 1.0);

    switch (couple.exponent()) {
    case Exponent::One: return solve_l1(couple, x, t);
    case Exponent::Two: return solve_l2(couple, x, t);
    case Exponent::Infinity: return solve_linf(couple, x, t);
    }
    return {};
}

double sum_norm(const CoupleSpec& couple, std::span<const Complex> x)
{
    return k_functional(couple, x, 1.0).value;
}

namespace detail {

KDecomposition k_projected_gradient(const CoupleSpec& couple, std::span<const Complex> x, double t)
{
    check_args(couple, x, t, "k_projected_gradient");
    if (couple.exponent() != Exponent::Two) throw DomainError("k_projected_gradient: only p = 2 is supported");
    if (is_zero(x) || t == 0.0) return k_functional(couple, x, t);

    // Work on the normalized vector; K is absolutely homogeneous in x.
    const double scale = norm(couple.x0(), x);
    const auto& w0 = couple.x0().weights();
    const auto& w1 = couple.x1().weights();
    const std::size_t n = x.size();
    std::vector<double> alpha(n), beta(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ax = std::abs(x[k]) / scale;
        alpha[k] = w0[k] * ax * ax;
        beta[k] = w1[k] * ax * ax;
    }

    std::vector<double> s(n, 0.5), grad(n), u(n), hu(n);
    constexpr double tiny = 1e-100;
    for (int it = 0; it < kMaxPgdIterations; ++it) {
        double a2 = 0.0, b2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            a2 += (1.0 - s[k]) * (1.0 - s[k]) * alpha[k];
            b2 += s[k] * s[k] * beta[k];
        }
        const double A = std::max(std::sqrt(a2), tiny);
        const double B = std::max(std::sqrt(b2), tiny);
        double pg2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            grad[k] = -(1.0 - s[k]) * alpha[k] / A + t * s[k] * beta[k] / B;
            const double projected = std::clamp(s[k] - grad[k], 0.0, 1.0) - s[k];
            pg2 += projected * projected;
        }
        if (std::sqrt(pg2) < kPgdTol) break;

        // Curvature of A + tB at s: diagonal plus two rank-one corrections.
        auto apply_hessian = [&](const std::vector<double>& v, std::vector<double>& out) {
            double ca = 0.0, cb = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                ca += (1.0 - s[k]) * alpha[k] * v[k];
                cb += s[k] * beta[k] * v[k];
            }
            for (std::size_t k = 0; k < n; ++k) {
                out[k] = alpha[k] * v[k] / A - (1.0 - s[k]) * alpha[k] * ca / (A * A * A) +
                         t * (beta[k] * v[k] / B - s[k] * beta[k] * cb / (B * B * B));
            }
        };
        std::fill(u.begin(), u.end(), 1.0);
        double lipschitz = 0.0;
        for (int pit = 0; pit < 30; ++pit) {
            apply_hessian(u, hu);
            double nrm = 0.0;
            for (double v : hu) nrm += v * v;
            nrm = std::sqrt(nrm);
            if (nrm == 0.0) break;
            double unrm = 0.0;
            for (double v : u) unrm += v * v;
            lipschitz = nrm / std::sqrt(unrm);
            for (std::size_t k = 0; k < n; ++k) u[k] = hu[k] / nrm;
        }
        const double step = 1.0 / std::max(lipschitz, 1e-12);
        for (std::size_t k = 0; k < n; ++k) s[k] = std::clamp(s[k] - step * grad[k], 0.0, 1.0);
    }
    return from_split(couple, x, t, s);
}

} // namespace detail

double k_grid_error_bound(const CoupleSpec& couple, std::span<const Complex> x, double t, std::size_t resolution)
{
    check_args(couple, x, t, "k_grid_error_bound");
    if (resolution == 0) throw DomainError("k_grid_error_bound: resolution must be positive");
    return (norm(couple.x0(), x) + t * norm(couple.x1(), x)) / (2.0 * static_cast<double>(resolution));
}

double k_oracle_grid(const CoupleSpec& couple, std::span<const Complex> x, double t, std::size_t resolution)
{
    check_args(couple, x, t, "k_oracle_grid");
    if (resolution == 0) throw DomainError("k_oracle_grid: resolution must be positive");
    const std::size_t n = x.size();
    if (n > 4) throw DomainError("k_oracle_grid: N too large (at most 4 coordinates)");

    const Exponent p = couple.exponent();
    auto combine = [p](double acc, double v) {
        switch (p) {
        case Exponent::One: return acc + v;
        case Exponent::Two: return acc + v * v;
        case Exponent::Infinity: return std::max(acc, v);
        }
        return acc;
    };
    auto finish = [p](double acc) { return p == Exponent::Two ? std::sqrt(acc) : acc; };

    std::vector<double> a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = couple.x0().multipliers()[k] * std::abs(x[k]);
        b[k] = couple.x1().multipliers()[k] * std::abs(x[k]);
    }
    const double R = static_cast<double>(resolution);
    const std::size_t last = n - 1;

    auto inner = [&](double acc0, double acc1, std::size_t j) {
        const double s = static_cast<double>(j) / R;
        return finish(combine(acc0, (1.0 - s) * a[last])) + t * finish(combine(acc1, s * b[last]));
    };

    double best = std::numeric_limits<double>::infinity();
    // Minimizer along the last coordinate for the previous outer point; it moves
    // little between neighbouring outer points, so a local walk from it is short.
    std::size_t hint = 0;
    std::function<void(std::size_t, double, double)> enumerate = [&](std::size_t k, double acc0, double acc1) {
        if (k == last) {
            std::size_t j = hint;
            double fj = inner(acc0, acc1, j);
            if (j < resolution && inner(acc0, acc1, j + 1) < fj) {
                while (j < resolution) {
                    const double next = inner(acc0, acc1, j + 1);
                    if (!(next < fj)) break;
                    ++j;
                    fj = next;
                }
            } else {
                while (j > 0) {
                    const double prev = inner(acc0, acc1, j - 1);
                    if (!(prev < fj)) break;
                    --j;
                    fj = prev;
                }
            }
            // no strictly smaller neighbour: global minimum of a convex sequence
            hint = j;
            best = std::min(best, fj);
            return;
        }
        for (std::size_t j = 0; j <= resolution; ++j) {
            const double s = static_cast<double>(j) / R;
            enumerate(k + 1, combine(acc0, (1.0 - s) * a[k]), combine(acc1, s * b[k]));
        }
    };
    enumerate(0, 0.0, 0.0);
    return best;
}

std::vector<std::pair<double, double>> k_profile(const CoupleSpec& couple, std::span<const Complex> x,
                                                 std::span<const double> t_grid, unsigned threads)
{
    std::vector<std::pair<double, double>> out(t_grid.size());
    parallel_for(t_grid.size(), threads, [&](std::size_t i) {
        out[i] = {t_grid[i], k_functional(couple, x, t_grid[i]).value};
    });
    return out;
}

} // namespace interp
