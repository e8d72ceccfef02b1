#include "interp/taylor.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "interp/complex_interp.hpp"
#include "interp/parallel.hpp"
#include "interp/rng.hpp"
#include "interp/sampling.hpp"

namespace interp {

namespace {

constexpr std::uint64_t kTaylorStream = 0x7a1;

void check_nodes(int degree, int n, std::size_t m)
{
    if (m <= static_cast<std::size_t>(degree)) {
        throw AliasingError("taylor: " + std::to_string(m) + " contour nodes alias a map of degree " +
                            std::to_string(degree) + " (need more than the degree)");
    }
    if (n > degree && static_cast<std::size_t>(n) % m <= static_cast<std::size_t>(degree)) {
        throw AliasingError("taylor: order " + std::to_string(n) + " folds onto order " +
                            std::to_string(static_cast<std::size_t>(n) % m) + " with " + std::to_string(m) +
                            " contour nodes");
    }
}

Complex root_of_unity(std::size_t j, std::size_t m)
{
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
}

std::vector<CVector> contour_values(const MapExpr& map, std::span<const Complex> h, double rho, std::size_t m)
{
    std::vector<CVector> values(m);
    CVector z(h.size());
    for (std::size_t j = 0; j < m; ++j) {
        const Complex s = rho * root_of_unity(j, m);
        for (std::size_t k = 0; k < h.size(); ++k) z[k] = s * h[k];
        values[j] = eval_map(map, z);
    }
    return values;
}

CVector extract(const std::vector<CVector>& values, int n, double rho)
{
    const std::size_t m = values.size();
    CVector out(values.front().size());
    for (std::size_t j = 0; j < m; ++j) {
        // w^(-jn), reduced mod m to keep the angle small
        const std::size_t e = (j * static_cast<std::size_t>(n)) % m;
        const Complex w = std::conj(root_of_unity(e, m));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += values[j][k] * w;
    }
    const double scale = 1.0 / (static_cast<double>(m) * std::pow(rho, n));
    for (auto& z : out) z *= scale;
    return out;
}

void check_rho(double rho)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("taylor: rho must be positive");
}

double interpolate(double m0, double m1, double theta)
{
    if (m0 == 0.0 || m1 == 0.0) return 0.0;
    return std::exp((1.0 - theta) * std::log(m0) + theta * std::log(m1));
}

} // namespace

std::size_t default_nodes(int degree, int n)
{
    return std::bit_ceil(static_cast<std::size_t>(std::max(degree, n)) + 1);
}

CVector taylor_coefficient(const MapExpr& map, std::span<const Complex> h, int n, double rho, std::size_t m)
{
    if (n < 0) throw DomainError("taylor: order must be nonnegative");
    check_rho(rho);
    if (m == 0) m = default_nodes(map.degree(), n);
    check_nodes(map.degree(), n, m);
    return extract(contour_values(map, h, rho, m), n, rho);
}

std::vector<CVector> taylor_coefficients(const MapExpr& map, std::span<const Complex> h, int n_max, double rho,
                                         std::size_t m)
{
    if (n_max < 0) throw DomainError("taylor: order must be nonnegative");
    check_rho(rho);
    if (m == 0) m = default_nodes(map.degree(), n_max);
    for (int n = 0; n <= n_max; ++n) check_nodes(map.degree(), n, m);
    const auto values = contour_values(map, h, rho, m);
    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(extract(values, n, rho));
    return out;
}

CVector taylor_reassemble(const MapExpr& map, std::span<const Complex> h, int n_max)
{
    if (n_max < map.degree()) {
        throw DomainError("taylor_reassemble: n_max " + std::to_string(n_max) + " is below the map degree " +
                          std::to_string(map.degree()));
    }
    const auto parts = taylor_coefficients(map, h, n_max);
    CVector sum(h.size());
    for (const auto& p : parts) {
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += p[k];
    }
    return sum;
}

BoundReport coefficient_bound_check(const MapExpr& map, const CoupleSpec& couple_x, const CoupleSpec& couple_y,
                                    double r, const CoefficientCheckOptions& opt)
{
    require_same_dim(couple_x.dim(), couple_y.dim(), "coefficient_bound_check");
    if (!(r > 0.0)) throw DomainError("coefficient_bound_check: r must be positive");
    if (opt.n_max < 0) throw DomainError("coefficient_bound_check: n_max must be nonnegative");
    if (opt.thetas.empty()) throw DomainError("coefficient_bound_check: no theta values");
    for (double th : opt.thetas) require_open_unit(th, "coefficient_bound_check");

    const double c = couple_x.c();
    const double M0 = opt.force_M0 ? *opt.force_M0 : certified_bound(map, couple_x.x0(), couple_y.x0(), r);
    const double M1 = certified_bound(map, couple_x.x1(), couple_y.x1(), r / c);
    const std::size_t nt = opt.thetas.size();
    std::vector<SpaceSpec> xs, ys;
    for (double th : opt.thetas) {
        xs.push_back(interpolated_space(couple_x, th));
        ys.push_back(interpolated_space(couple_y, th));
    }
    const int n_max = opt.n_max;
    const int tail_orders = std::min(n_max, map.degree()) + 1;

    std::vector<std::vector<CheckRecord>> per_sample(opt.n_samples);
    parallel_for(opt.n_samples, opt.threads, [&](std::size_t i) {
        auto& out = per_sample[i];
        const auto s = static_cast<std::int64_t>(i);
        CVector h = sample_in_ball(couple_x.x0(), r, opt.seed, kTaylorStream, i);
        const double h0 = norm(couple_x.x0(), h);
        const double h1 = norm(couple_x.x1(), h);
        // rho inside the admissible interval (0, r/||h||_X0)
        const double rho = h0 > 0.0 ? 0.5 * r / h0 : 1.0;
        const auto parts = taylor_coefficients(map, h, n_max, rho);
        for (int n = 0; n <= n_max; ++n) {
            const auto& p = parts[static_cast<std::size_t>(n)];
            out.push_back(make_record("coef_0", std::nullopt, s, n, h0, norm(couple_y.x0(), p),
                                      M0 / std::pow(r, n) * std::pow(h0, n), opt.tolerance));
            out.push_back(make_record("coef_1", std::nullopt, s, n, h1, norm(couple_y.x1(), p),
                                      M1 / std::pow(r / c, n) * std::pow(h1, n), opt.tolerance));
        }
        for (std::size_t a = 0; a < nt; ++a) {
            const double th = opt.thetas[a];
            const double m_theta = interpolate(M0, M1, th);
            const double radius = std::pow(c, -th) * r;
            const double ht = norm(xs[a], h);
            for (int n = 0; n <= n_max; ++n) {
                out.push_back(make_record("coef_theta", th, s, n, ht, norm(ys[a], parts[static_cast<std::size_t>(n)]),
                                          m_theta * std::pow(ht / radius, n), opt.tolerance));
            }
            if (ht == 0.0) continue;
            // geometric tail: rescale h to a prescribed ratio z < 1
            RandomStream rng(opt.seed, kTaylorStream + 1 + a, i);
            const double z = 0.1 + 0.8 * rng.uniform();
            CVector hz = h;
            const double f = z * radius / ht;
            for (auto& v : hz) v *= f;
            const double hz_theta = norm(xs[a], hz);
            const auto zparts = taylor_coefficients(map, hz, tail_orders, 0.5 * r / norm(couple_x.x0(), hz));
            CVector deficit = eval_map(map, hz);
            for (int n = 0; n < tail_orders; ++n) {
                const auto& p = zparts[static_cast<std::size_t>(n)];
                for (std::size_t k = 0; k < deficit.size(); ++k) deficit[k] -= p[k];
                const double zeta = hz_theta / radius;
                const double bound = m_theta * std::pow(zeta, n + 1) / (1.0 - zeta);
                out.push_back(make_record("tail_theta", th, s, n, hz_theta, norm(ys[a], deficit), bound, opt.tolerance));
            }
        }
    });

    BoundReport report;
    report.kind = "taylor";
    report.map = print_map(map);
    report.seed = opt.seed;
    report.tolerance = opt.tolerance;
    report.M0 = M0;
    report.M1 = M1;
    report.metrics["c"] = c;
    report.metrics["r"] = r;
    report.metrics["n_max"] = n_max;
    for (auto& v : per_sample) {
        for (auto& rec : v) report.records.push_back(std::move(rec));
    }
    finalize(report);
    return report;
}

} // namespace interp
