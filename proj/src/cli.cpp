#include "interp/cli.hpp"

#include <cmath>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "interp/complex_interp.hpp"
#include "interp/config.hpp"
#include "interp/kfunc.hpp"
#include "interp/parallel.hpp"
#include "interp/real_interp.hpp"
#include "interp/sampling.hpp"
#include "interp/taylor.hpp"
#include "interp/verify.hpp"

namespace interp {

namespace {

constexpr std::uint64_t kPointStream = 0x500;

struct Output {
    std::optional<BoundReport> report;
    std::optional<Table> table;
};

// Points for the table commands: explicit ones, else unit-sphere samples in X0.
std::vector<CVector> points_for(const LoadedConfig& cfg, std::size_t count)
{
    if (!cfg.points.empty()) return cfg.points;
    const auto& e = cfg.experiment;
    std::vector<CVector> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back(sample_on_sphere(e.couple_X.x0(), 1.0, e.seed, kPointStream, i));
    return pts;
}

Table norms_table(const LoadedConfig& cfg)
{
    const auto& e = cfg.experiment;
    const auto pts = points_for(cfg, e.n_samples);
    const std::size_t nt = e.thetas.size();
    std::vector<std::vector<std::vector<double>>> rows(pts.size());
    parallel_for(pts.size(), e.threads, [&](std::size_t i) {
        KCache k(e.couple_X, pts[i]);
        for (double th : e.thetas) {
            rows[i].push_back({static_cast<double>(i), th, k.norm0(), k.norm1(), real_norm_detailed(k, th, e.q).value,
                               real_norm_inf(k, th), theta_norm(e.couple_X, pts[i], th)});
        }
    });
    Table t{"norms", {"point", "theta", "norm_X0", "norm_X1", "real_theta_q", "real_theta_inf", "norm_X_theta"}, {}};
    t.rows.reserve(pts.size() * nt);
    for (auto& r : rows) {
        for (auto& row : r) t.rows.push_back(std::move(row));
    }
    return t;
}

Table kprofile_table(const LoadedConfig& cfg)
{
    const auto& e = cfg.experiment;
    const CVector x = points_for(cfg, 1).front();
    std::vector<double> grid = cfg.t_grid;
    if (grid.empty()) {
        for (int i = 0; i <= 80; ++i) grid.push_back(std::pow(10.0, -4.0 + 0.1 * i));
    }
    const double n0 = norm(e.couple_X.x0(), x);
    const double n1 = norm(e.couple_X.x1(), x);
    Table t{"kprofile", {"t", "K", "K_over_min_bound"}, {}};
    for (const auto& [tv, k] : k_profile(e.couple_X, x, grid, e.threads)) {
        const double b = std::min(n0, tv * n1);
        t.rows.push_back({tv, k, b > 0.0 ? k / b : 0.0});
    }
    return t;
}

BoundReport walkthrough_report(const LoadedConfig& cfg)
{
    const auto& e = cfg.experiment;
    BoundReport merged;
    for (std::size_t a = 0; a < e.thetas.size(); ++a) {
        const double th = e.thetas[a];
        CVector x;
        if (!cfg.points.empty()) {
            x = cfg.points.front();
        } else {
            const double radius = std::pow(e.couple_X.c(), -th) * e.r * (1.0 - 1e-9);
            x = sample_in_ball(interpolated_space(e.couple_X, th), radius, e.seed, kPointStream + 1 + a,
                               2 * e.couple_X.dim());
        }
        BoundReport one = proof_walkthrough(e, x, th);
        if (a == 0) {
            merged = one;
            merged.records.clear();
            merged.metrics.clear();
        }
        for (const auto& [k, v] : one.metrics) merged.metrics[k + "@theta=" + format_double(th)] = v;
        for (auto& r : one.records) merged.records.push_back(std::move(r));
    }
    finalize(merged);
    return merged;
}

Output execute(const std::string& command, const LoadedConfig& cfg)
{
    const auto& e = cfg.experiment;
    if (command == "norms") return {std::nullopt, norms_table(cfg)};
    if (command == "kprofile") return {std::nullopt, kprofile_table(cfg)};
    if (command == "verify-theorem") return {theorem1_check(e), std::nullopt};
    if (command == "verify-corollary") {
        const auto n = homogeneous_degree(e.map.expr);
        if (!n) throw ConfigError("map: verify-corollary needs a homogeneous map");
        return {corollary_check(e, *n), std::nullopt};
    }
    if (command == "taylor") {
        CoefficientCheckOptions opt;
        opt.n_max = cfg.n_max >= 0 ? cfg.n_max : e.map.expr.degree() + 2;
        opt.thetas = e.thetas;
        opt.n_samples = e.n_samples;
        opt.seed = e.seed;
        opt.tolerance = e.tolerance;
        opt.threads = e.threads;
        opt.force_M0 = e.force_M0;
        return {coefficient_bound_check(e.map.expr, e.couple_X, e.couple_Y, e.r, opt), std::nullopt};
    }
    if (command == "proof-walkthrough") return {walkthrough_report(cfg), std::nullopt};
    throw ConfigError("unknown command '" + command + "'");
}

Format default_format(const RunConfig& run)
{
    if (run.format) return *run.format;
    if (run.out && run.out->extension() == ".csv") return Format::Csv;
    if (run.out && run.out->extension() == ".json") return Format::Json;
    return (run.command == "norms" || run.command == "kprofile") ? Format::Csv : Format::Json;
}

} // namespace

namespace {

std::string command_description(const std::string& name)
{
    static const std::map<std::string, std::string> text{
        {"norms", "endpoint, real and complex interpolation norms of points"},
        {"kprofile", "K-functional profile of the first point over a t grid"},
        {"verify-theorem", "sampled check of the ball bound M0^(1-theta) M1^theta"},
        {"verify-corollary", "sampled check of the bound for homogeneous maps"},
        {"taylor", "Taylor coefficient bounds via contour averages"},
        {"proof-walkthrough", "strip-function construction checked on a grid"},
    };
    return text.at(name);
}

} // namespace

const std::vector<std::string>& cli_commands()
{
    static const std::vector<std::string> cmds{"norms",           "kprofile", "verify-theorem",
                                               "verify-corollary", "taylor",   "proof-walkthrough"};
    return cmds;
}

int run(const RunConfig& run, std::ostream& out, std::ostream& log)
{
    Output result;
    try {
        LoadedConfig cfg = load_config(run.config);
        auto& e = cfg.experiment;
        if (run.seed) e.seed = *run.seed;
        if (run.samples) e.n_samples = *run.samples;
        if (run.thetas) e.thetas = *run.thetas;
        if (run.force_M0) e.force_M0 = *run.force_M0;
        e.threads = run.threads;
        try {
            e.validate();
        } catch (const std::exception& ex) {
            throw ConfigError(ex.what());
        }
        result = execute(run.command, cfg);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << '\n';
        return kExitConfig;
    }

    const Format format = default_format(run);
    try {
        if (run.out) {
            if (result.report) emit(*result.report, format, *run.out);
            else emit(*result.table, format, *run.out);
        } else if (result.report) {
            out << (format == Format::Json ? to_json(*result.report) : to_csv(*result.report));
        } else {
            out << (format == Format::Json ? to_json(*result.table) : to_csv(*result.table));
        }
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << '\n';
        return kExitConfig;
    }

    if (result.table) {
        log << run.command << ": " << result.table->rows.size() << " rows\n";
        return kExitPass;
    }
    const auto& r = *result.report;
    const auto& s = r.summary;
    log << run.command << ": " << s.passed << "/" << s.count << " checks passed, worst margin "
        << format_double(s.worst_margin) << " (" << s.worst_check << "), M0=" << format_double(r.M0)
        << " M1=" << format_double(r.M1) << '\n';
    return r.all_passed() ? kExitPass : kExitViolation;
}

int cli_main(int argc, char** argv)
{
    CLI::App app{"Interpolation of nonlinear maps on weighted sequence-space couples"};
    app.require_subcommand(1, 1);
    RunConfig rc;
    std::string format;
    std::vector<double> thetas;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double force_M0 = 0.0;
    std::string out;

    for (const auto& name : cli_commands()) {
        CLI::App* sub = app.add_subcommand(name, command_description(name));
        sub->add_option("--config", rc.config, "experiment JSON file")->required();
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
        sub->add_option("--theta", thetas, "comma separated theta values")->delimiter(',');
        sub->add_option("--out", out, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--force-M0", force_M0, "override the certified M0 (testing only)");
        sub->add_option("--threads", rc.threads, "worker threads, 0 = hardware");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }
    CLI::App* sub = app.get_subcommands().front();
    rc.command = sub->get_name();
    if (sub->count("--seed")) rc.seed = seed;
    if (sub->count("--samples")) rc.samples = samples;
    if (sub->count("--theta")) rc.thetas = thetas;
    if (sub->count("--out")) rc.out = out;
    if (sub->count("--format")) rc.format = parse_format(format);
    if (sub->count("--force-M0")) rc.force_M0 = force_M0;
    return run(rc, std::cout, rc.out ? std::cout : std::cerr);
}

} // namespace interp
