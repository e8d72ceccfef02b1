#include "interp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "interp/parallel.hpp"
#include "interp/rng.hpp"
#include "interp/sampling.hpp"
#include "interp/taylor.hpp"

namespace interp {

namespace {

constexpr double kInside = 1.0 - 1e-9;

enum : std::uint64_t {
    kTheoremStream = 0x100,
    kCorollaryStream = 0x200,
    kLinearStream = 0x300,
    kBallStream = 0x400,
};

struct ThetaSpaces {
    double theta;
    SpaceSpec x;
    SpaceSpec y;
    double radius; ///< c^-theta r
};

std::vector<ThetaSpaces> theta_spaces(const ExperimentConfig& cfg)
{
    std::vector<ThetaSpaces> out;
    for (double th : cfg.thetas) {
        out.push_back({th, interpolated_space(cfg.couple_X, th), interpolated_space(cfg.couple_Y, th),
                       std::pow(cfg.couple_X.c(), -th) * cfg.r});
    }
    return out;
}

BoundReport new_report(const ExperimentConfig& cfg, std::string kind, double M0, double M1)
{
    BoundReport report;
    report.kind = std::move(kind);
    report.map = print_map(cfg.map.expr);
    report.seed = cfg.seed;
    report.tolerance = cfg.tolerance;
    report.M0 = M0;
    report.M1 = M1;
    report.metrics["c"] = cfg.couple_X.c();
    report.metrics["r"] = cfg.r;
    return report;
}

// Runs body(theta index, sample index) over all pairs and collects one record per pair.
template <typename Body>
std::vector<CheckRecord> sweep(const ExperimentConfig& cfg, Body&& body)
{
    const std::size_t nt = cfg.thetas.size();
    std::vector<CheckRecord> records(nt * cfg.n_samples);
    parallel_for(records.size(), cfg.threads,
                 [&](std::size_t j) { records[j] = body(j / cfg.n_samples, j % cfg.n_samples); });
    return records;
}

void check_homogeneous_by_taylor(const ExperimentConfig& cfg, int n)
{
    // The AST already guarantees homogeneity; this confirms that the contour
    // extraction sees no other order at a few probe points.
    const int d = cfg.map.expr.degree();
    for (std::size_t i = 0; i < 3; ++i) {
        const CVector h = sample_on_sphere(cfg.couple_X.x0(), 1.0, cfg.seed, kCorollaryStream + 0xff, i);
        const auto parts = taylor_coefficients(cfg.map.expr, h, d);
        double scale = 0.0;
        for (const auto& p : parts) scale = std::max(scale, norm(cfg.couple_Y.x0(), p));
        for (int k = 0; k <= d; ++k) {
            if (k == n) continue;
            if (norm(cfg.couple_Y.x0(), parts[static_cast<std::size_t>(k)]) > 1e-10 * std::max(scale, 1.0)) {
                throw DomainError("corollary_check: map has a nonzero part of order " + std::to_string(k));
            }
        }
    }
}

} // namespace

void ExperimentConfig::validate() const
{
    const std::size_t n = couple_X.dim();
    if (couple_Y.dim() != n) {
        throw DimensionError("couple_Y: dimension " + std::to_string(couple_Y.dim()) + " differs from couple_X (" +
                             std::to_string(n) + ")");
    }
    if (map.expr.dim() && *map.expr.dim() != n) {
        throw DimensionError("map: embedded vectors have length " + std::to_string(*map.expr.dim()) +
                             " but the spaces have dimension " + std::to_string(n));
    }
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive");
    if (thetas.empty()) throw DomainError("thetas must be nonempty");
    for (double th : thetas) {
        if (!(th > 0.0 && th < 1.0)) throw DomainError("thetas must lie in the open interval (0,1)");
    }
    if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("q must be a finite number >= 1");
    if (n_samples < 1) throw DomainError("n_samples must be positive");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw DomainError("tolerance must be positive");
    if (force_M0 && !(*force_M0 >= 0.0)) throw DomainError("force_M0 must be nonnegative");
}

double interpolated_bound(double M0, double M1, double theta)
{
    if (M0 == 0.0 || M1 == 0.0) return 0.0;
    return std::exp((1.0 - theta) * std::log(M0) + theta * std::log(M1));
}

BallBounds certified_ball_bounds(const ExperimentConfig& cfg)
{
    BallBounds b;
    b.M0 = cfg.force_M0 ? *cfg.force_M0
                        : certified_bound(cfg.map.expr, cfg.couple_X.x0(), cfg.couple_Y.x0(), cfg.r);
    b.M1 = certified_bound(cfg.map.expr, cfg.couple_X.x1(), cfg.couple_Y.x1(), cfg.r / cfg.couple_X.c());
    return b;
}

BoundReport linear_check(const ExperimentConfig& cfg)
{
    cfg.validate();
    const std::size_t n = cfg.couple_X.dim();
    const auto d = diagonal_of(cfg.map.expr, n);
    if (!d) throw DomainError("linear_check: map is not a diagonal linear operator");
    auto op_norm = [&](const SpaceSpec& from, const SpaceSpec& to) {
        double best = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            best = std::max(best, std::abs((*d)[k]) * to.multipliers()[k] / from.multipliers()[k]);
        }
        return best;
    };
    const double M0 = cfg.force_M0 ? *cfg.force_M0 : op_norm(cfg.couple_X.x0(), cfg.couple_Y.x0());
    const double M1 = op_norm(cfg.couple_X.x1(), cfg.couple_Y.x1());
    const auto spaces = theta_spaces(cfg);
    BoundReport report = new_report(cfg, "linear", M0, M1);
    report.records = sweep(cfg, [&](std::size_t a, std::size_t i) {
        const auto& s = spaces[a];
        const CVector x = sample_in_ball(s.x, s.radius * kInside, cfg.seed, kLinearStream + a, i);
        const double xn = norm(s.x, x);
        CVector tx(n);
        for (std::size_t k = 0; k < n; ++k) tx[k] = (*d)[k] * x[k];
        return make_record("linear_bound", s.theta, static_cast<std::int64_t>(i), 0, xn, norm(s.y, tx),
                           interpolated_bound(M0, M1, s.theta) * xn, cfg.tolerance);
    });
    finalize(report);
    return report;
}

BoundReport theorem1_check(const ExperimentConfig& cfg)
{
    cfg.validate();
    const BallBounds b = certified_ball_bounds(cfg);
    const auto spaces = theta_spaces(cfg);
    BoundReport report = new_report(cfg, "theorem", b.M0, b.M1);
    report.records = sweep(cfg, [&](std::size_t a, std::size_t i) {
        const auto& s = spaces[a];
        const CVector x = sample_in_ball(s.x, s.radius * kInside, cfg.seed, kTheoremStream + a, i);
        return make_record("ball_bound", s.theta, static_cast<std::int64_t>(i), 0, norm(s.x, x),
                           norm(s.y, eval_map(cfg.map.expr, x)), interpolated_bound(b.M0, b.M1, s.theta),
                           cfg.tolerance);
    });
    finalize(report);
    return report;
}

BoundReport corollary_check(const ExperimentConfig& cfg, int n)
{
    cfg.validate();
    const auto deg = homogeneous_degree(cfg.map.expr);
    if (!deg || *deg != n) {
        throw DomainError("corollary_check: map is not homogeneous of degree " + std::to_string(n));
    }
    check_homogeneous_by_taylor(cfg, n);
    const double M0 = cfg.force_M0 ? *cfg.force_M0
                                   : homogeneous_constant(cfg.map.expr, cfg.couple_X.x0(), cfg.couple_Y.x0());
    const double M1 = homogeneous_constant(cfg.map.expr, cfg.couple_X.x1(), cfg.couple_Y.x1());
    const auto spaces = theta_spaces(cfg);
    BoundReport report = new_report(cfg, "corollary", M0, M1);
    report.metrics["degree"] = n;
    report.records = sweep(cfg, [&](std::size_t a, std::size_t i) {
        const auto& s = spaces[a];
        const CVector x = sample_in_ball(s.x, s.radius * kInside, cfg.seed, kCorollaryStream + a, i);
        const double xn = norm(s.x, x);
        return make_record("homogeneous_bound", s.theta, static_cast<std::int64_t>(i), 0, xn,
                           norm(s.y, eval_map(cfg.map.expr, x)),
                           interpolated_bound(M0, M1, s.theta) * std::pow(xn, n), cfg.tolerance);
    });
    finalize(report);
    return report;
}

BoundReport proof_walkthrough(const ExperimentConfig& cfg, std::span<const Complex> x_in, double theta,
                              const StripGrid& grid)
{
    cfg.validate();
    require_open_unit(theta, "proof_walkthrough");
    require_same_dim(cfg.couple_X.dim(), x_in.size(), "proof_walkthrough");
    const CoupleSpec& X = cfg.couple_X;
    const CoupleSpec& Y = cfg.couple_Y;
    const double c = X.c();
    const double r = cfg.r;
    const double radius = std::pow(c, -theta) * r;
    const SpaceSpec x_theta = interpolated_space(X, theta);
    const SpaceSpec y_theta = interpolated_space(Y, theta);
    const CVector x(x_in.begin(), x_in.end());
    const double x_norm = norm(x_theta, x);
    if (!(x_norm < radius)) {
        throw DomainError("proof_walkthrough: x is not in the open ball B(c^-theta r, X_theta): ||x||_theta = " +
                          format_double(x_norm) + ", radius = " + format_double(radius));
    }

    const BallBounds b = certified_ball_bounds(cfg);
    const double m_theta = interpolated_bound(b.M0, b.M1, theta);
    const double log_c = std::log(c);

    const StripFunction f = extremal_certificate(X, x, theta);
    const StripFunction g = [&](Complex z) {
        CVector v = f(z);
        const Complex s = std::exp((theta - z) * log_c);
        for (auto& e : v) e *= s;
        return v;
    };
    const bool zero_bound = b.M0 == 0.0 || b.M1 == 0.0;
    const StripFunction F = [&](Complex z) {
        CVector v = eval_map(cfg.map.expr, g(z));
        if (zero_bound) return CVector(v.size());
        const Complex s = std::exp((z - 1.0) * std::log(b.M0) - z * std::log(b.M1));
        for (auto& e : v) e *= s;
        return v;
    };

    const auto fs = sample_strip(f, grid);
    const auto gs = sample_strip(g, grid);
    const auto Fs = sample_strip(F, grid);

    BoundReport report = new_report(cfg, "walkthrough", b.M0, b.M1);
    report.metrics["theta"] = theta;
    report.metrics["x_norm_theta"] = x_norm;
    report.metrics["grid_t_points"] = static_cast<double>(grid.t_points);
    report.metrics["grid_re_points"] = static_cast<double>(grid.re_points);
    const double tol = cfg.tolerance;
    auto add = [&](const std::string& check, std::int64_t index, double value, double bound) {
        report.records.push_back(make_record(check, theta, 0, index, x_norm, value, bound, tol));
    };
    // largest norm over a list of samples, with its position
    auto sup = [](const std::vector<StripSample>& v, const SpaceSpec& space) {
        std::pair<double, std::int64_t> best{0.0, 0};
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double n = norm(space, v[i].value);
            if (n > best.first) best = {n, static_cast<std::int64_t>(i)};
        }
        return best;
    };

    // f: admissible strip function through x with ||f||_H < c^-theta r
    const double f_h = strip_norm(fs, X);
    add("f_norm", 0, f_h, radius);
    CVector diff = f(Complex{theta, 0.0});
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= x[k];
    add("f_at_theta", 0, norm(x_theta, diff), tol * x_norm);

    // g on the boundary lines
    const auto g_left0 = sup(gs.boundary0, X.x0());
    const auto g_right0 = sup(gs.boundary1, X.x0());
    const auto g_right1 = sup(gs.boundary1, X.x1());
    add("g_left_X0", g_left0.second, g_left0.first, r);
    add("g_right_X0", g_right0.second, g_right0.first, r);
    add("g_right_X1", g_right1.second, g_right1.first, r / c);

    // g stays in B(r, X0) inside the strip
    const auto g_in0 = sup(gs.interior, X.x0());
    add("g_strip_X0", g_in0.second, g_in0.first, r);
    const ThreeLineReport tl = three_line_check(gs, X.x0(), tol);
    add("three_line", static_cast<std::int64_t>(tl.worst_index), tl.interior_sup, tl.boundary_sup);

    // F on the boundary lines
    const auto F_left = sup(Fs.boundary0, Y.x0());
    const auto F_right = sup(Fs.boundary1, Y.x1());
    add("F_left_Y0", F_left.second, F_left.first, 1.0);
    add("F_right_Y1", F_right.second, F_right.first, 1.0);
    const double F_h = std::max(F_left.first, F_right.first);

    // F(theta) = M0^(theta-1) M1^-theta Phi(x)
    const double phi_x = norm(y_theta, eval_map(cfg.map.expr, x));
    const double F_theta = norm(y_theta, F(Complex{theta, 0.0}));
    add("F_theta_norm", 0, F_theta, 1.0);
    if (!zero_bound) {
        const double rebuilt = m_theta * F_theta;
        add("F_theta_identity", 0, std::abs(phi_x - rebuilt), tol * std::max(phi_x, rebuilt));
    }
    add("conclusion", 0, phi_x, m_theta);

    report.metrics["f_H_norm"] = f_h;
    report.metrics["g_strip_sup_X0"] = std::max({g_left0.first, g_right0.first, g_in0.first});
    report.metrics["F_H_norm"] = F_h;
    report.metrics["three_line_margin"] = tl.worst_margin;
    report.metrics["strip_window_only"] = tl.window_only ? 1.0 : 0.0;
    finalize(report);
    return report;
}

BoundReport ball_inclusion_check(const CoupleSpec& couple, double r, double theta, std::size_t n_samples,
                                 std::uint64_t seed, unsigned threads)
{
    require_open_unit(theta, "ball_inclusion_check");
    if (!(r > 0.0)) throw DomainError("ball_inclusion_check: r must be positive");
    if (n_samples < 1) throw DomainError("ball_inclusion_check: n_samples must be positive");
    const double c = couple.c();
    const SpaceSpec xt = interpolated_space(couple, theta);
    const double r1 = r / c;
    const double rt = std::pow(c, -theta) * r;
    const std::size_t n = couple.dim();
    constexpr double tol = 1e-12;

    std::vector<std::vector<CheckRecord>> per(n_samples);
    parallel_for(n_samples, threads, [&](std::size_t i) {
        CVector x;
        if (i < n) {
            x = sample_in_ball(couple.x1(), r1 * kInside, seed, kBallStream, i);
        } else {
            RandomStream rng(seed, kBallStream + 1, i);
            x = sample_on_sphere(couple.x1(), r1 * (0.5 + rng.uniform()), seed, kBallStream, i);
        }
        const double n0 = norm(couple.x0(), x);
        const double n1 = norm(couple.x1(), x);
        const double nt = norm(xt, x);
        const auto s = static_cast<std::int64_t>(i);
        if (n1 < r1) per[i].push_back(make_record("inner_inclusion", theta, s, 0, n1, nt, rt, tol));
        if (nt < rt) per[i].push_back(make_record("outer_inclusion", theta, s, 0, nt, n0, r, tol));
    });

    BoundReport report;
    report.kind = "balls";
    report.seed = seed;
    report.tolerance = tol;
    report.metrics["c"] = c;
    report.metrics["r"] = r;
    for (auto& v : per) {
        for (auto& rec : v) report.records.push_back(std::move(rec));
    }
    finalize(report);
    return report;
}

double sharpness_probe(const ExperimentConfig& cfg, double theta, double fraction)
{
    cfg.validate();
    require_open_unit(theta, "sharpness_probe");
    const BallBounds b = certified_ball_bounds(cfg);
    const double bound = interpolated_bound(b.M0, b.M1, theta);
    if (bound == 0.0) return 0.0;
    const SpaceSpec xt = interpolated_space(cfg.couple_X, theta);
    const SpaceSpec yt = interpolated_space(cfg.couple_Y, theta);
    const double radius = fraction * std::pow(cfg.couple_X.c(), -theta) * cfg.r;
    double best = 0.0;
    for (std::size_t k = 0; k < xt.dim(); ++k) {
        const CVector x = sample_in_ball(xt, radius, cfg.seed, 0, k);
        best = std::max(best, norm(yt, eval_map(cfg.map.expr, x)) / bound);
    }
    return best;
}

} // namespace interp
