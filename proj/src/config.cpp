#include "interp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace interp {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg)
{
    throw ConfigError(field + ": " + msg);
}

double get_number(const json& j, const std::string& field)
{
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "expected a finite number");
    return v;
}

Complex get_complex(const json& j, const std::string& field)
{
    if (j.is_number()) return {get_number(j, field), 0.0};
    if (j.is_array() && j.size() == 2) return {get_number(j[0], field), get_number(j[1], field)};
    fail(field, "expected a number or a [re, im] pair");
}

CVector get_vector(const json& j, const std::string& field)
{
    if (!j.is_array() || j.empty()) fail(field, "expected a nonempty array");
    CVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_complex(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

Exponent get_exponent(const json& j, const std::string& field)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity") return Exponent::Infinity;
        fail(field, "expected 1, 2 or \"inf\"");
    }
    try {
        return exponent_from_value(get_number(j, field));
    } catch (const DomainError&) {
        fail(field, "expected 1, 2 or \"inf\"");
    }
}

std::size_t get_size(const json& j, const std::string& field)
{
    if (!j.is_number_integer() || j.get<long long>() < 1) fail(field, "expected a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

SpaceSpec get_space(const json& j, const std::string& field, const json* inherited_p)
{
    if (!j.is_object()) fail(field, "expected an object");
    Exponent p;
    if (j.contains("p")) p = get_exponent(j["p"], field + ".p");
    else if (inherited_p) p = get_exponent(*inherited_p, field + ".p");
    else fail(field + ".p", "missing exponent");

    std::vector<double> w;
    if (j.contains("weights")) {
        const json& a = j["weights"];
        if (!a.is_array() || a.empty()) fail(field + ".weights", "expected a nonempty array");
        for (std::size_t i = 0; i < a.size(); ++i) w.push_back(get_number(a[i], field + ".weights"));
    } else if (j.contains("family")) {
        if (!j.contains("N")) fail(field + ".N", "missing dimension");
        const std::size_t n = get_size(j["N"], field + ".N");
        const std::string fam = j["family"].is_string() ? j["family"].get<std::string>() : "";
        if (fam == "poly") {
            if (!j.contains("s")) fail(field + ".s", "missing exponent of the poly family");
            w = poly_weights(p, get_number(j["s"], field + ".s"), n);
        } else if (fam == "exp") {
            if (!j.contains("a")) fail(field + ".a", "missing rate of the exp family");
            w = exp_weights(p, get_number(j["a"], field + ".a"), n);
        } else {
            fail(field + ".family", "expected \"poly\" or \"exp\"");
        }
    } else {
        fail(field, "needs either \"weights\" or \"family\"");
    }
    if (j.contains("scale")) {
        const double s = get_number(j["scale"], field + ".scale");
        if (!(s > 0.0)) fail(field + ".scale", "must be positive");
        for (double& x : w) x *= s;
    }
    try {
        return SpaceSpec(p, std::move(w));
    } catch (const std::exception& e) {
        fail(field, e.what());
    }
}

CoupleSpec get_couple(const json& j, const std::string& field)
{
    if (!j.is_object()) fail(field, "expected an object");
    const json* p = j.contains("p") ? &j["p"] : nullptr;
    if (!j.contains("X0")) fail(field + ".X0", "missing");
    if (!j.contains("X1")) fail(field + ".X1", "missing");
    SpaceSpec x0 = get_space(j["X0"], field + ".X0", p);
    SpaceSpec x1 = get_space(j["X1"], field + ".X1", p);
    try {
        if (j.contains("c")) return CoupleSpec(std::move(x0), std::move(x1), get_number(j["c"], field + ".c"));
        return CoupleSpec(std::move(x0), std::move(x1));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(field, e.what());
    }
}

} // namespace

LoadedConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");

    if (!j.contains("couple_X")) fail("couple_X", "missing");
    CoupleSpec cx = get_couple(j["couple_X"], "couple_X");
    CoupleSpec cy = j.contains("couple_Y") ? get_couple(j["couple_Y"], "couple_Y") : cx;

    if (!j.contains("map") || !j["map"].is_string()) fail("map", "expected a map expression string");
    std::string src = j["map"].get<std::string>();
    MapSpec map{MapExpr::var(), "", 1};
    try {
        map = make_map_spec(src);
    } catch (const std::exception& e) {
        fail("map", e.what());
    }

    if (!j.contains("r")) fail("r", "missing");
    const double r = get_number(j["r"], "r");
    if (!j.contains("thetas") || !j["thetas"].is_array()) fail("thetas", "expected an array");
    std::vector<double> thetas;
    for (const auto& t : j["thetas"]) thetas.push_back(get_number(t, "thetas"));

    LoadedConfig out{.experiment = {.couple_X = std::move(cx), .couple_Y = std::move(cy), .map = std::move(map), .r = r, .thetas = std::move(thetas)}};
    ExperimentConfig& e = out.experiment;
    if (j.contains("q")) e.q = get_number(j["q"], "q");
    if (j.contains("n_samples")) e.n_samples = get_size(j["n_samples"], "n_samples");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
            fail("seed", "expected a nonnegative integer");
        }
        e.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerance")) e.tolerance = get_number(j["tolerance"], "tolerance");
    if (j.contains("points")) {
        const json& a = j["points"];
        if (!a.is_array()) fail("points", "expected an array of vectors");
        for (std::size_t i = 0; i < a.size(); ++i) {
            CVector v = get_vector(a[i], "points[" + std::to_string(i) + "]");
            if (v.size() != e.couple_X.dim()) {
                fail("points[" + std::to_string(i) + "]", "length " + std::to_string(v.size()) +
                                                               " differs from the space dimension " +
                                                               std::to_string(e.couple_X.dim()));
            }
            out.points.push_back(std::move(v));
        }
    }
    if (j.contains("t_grid")) {
        if (!j["t_grid"].is_array()) fail("t_grid", "expected an array");
        for (const auto& t : j["t_grid"]) {
            const double v = get_number(t, "t_grid");
            if (v < 0.0) fail("t_grid", "values must be nonnegative");
            out.t_grid.push_back(v);
        }
    }
    if (j.contains("n_max")) {
        if (!j["n_max"].is_number_integer() || j["n_max"].get<long long>() < 0) {
            fail("n_max", "expected a nonnegative integer");
        }
        out.n_max = static_cast<int>(j["n_max"].get<long long>());
    }
    try {
        e.validate();
    } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace interp
