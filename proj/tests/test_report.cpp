#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>
#include <cstring>
#include <cmath>

#include "interp/report.hpp"
#include "interp/rng.hpp"
#include "interp/types.hpp"

using namespace interp;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BoundReport sample_report()
{
    BoundReport r;
    r.kind = "theorem";
    r.map = "conv(x,x)";
    r.seed = 18446744073709551615ULL;
    r.M0 = 1.0 / 3.0;
    r.M1 = 2e-300;
    r.metrics["c"] = 0.1;
    r.metrics["r"] = 1.0;
    r.records.push_back(make_record("ball_bound", 0.5, 0, 0, 0.1, 0.2, 0.3, 1e-9));
    r.records.push_back(make_record("ball_bound", 0.5, 1, 0, 0.1, 0.7, 0.3, 1e-9));
    r.records.push_back(make_record("f_norm", std::nullopt, 2, 3, 0.1, 1.0 / 7.0, 1.0 / 7.0, 1e-9));
    finalize(r);
    return r;
}

std::filesystem::path temp_dir()
{
    auto d = std::filesystem::temp_directory_path() / "interp_report_test";
    std::filesystem::create_directories(d);
    return d;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("relative margin")
{
    CHECK(relative_margin(1.0, 2.0) == doctest::Approx(0.5));
    CHECK(relative_margin(3.0, 2.0) == doctest::Approx(-0.5));
    CHECK(relative_margin(0.0, 0.0) == 0.0);
    CHECK(relative_margin(1.0, 0.0) < -1e300);
}

TEST_CASE("summaries")
{
    const CheckRecord one = make_record("a", 0.5, 0, 0, 1, 1, 2, 1e-9);
    const auto s1 = summarize(std::span(&one, 1));
    CHECK(s1.worst_margin == one.margin);
    CHECK(s1.count == 1);
    CHECK(s1.passed == 1);

    const BoundReport r = sample_report();
    CHECK(r.summary.count == 3);
    CHECK(r.summary.passed == 2);
    CHECK(r.summary.failed == 1);
    CHECK(r.summary.worst_sample == 1);
    CHECK(r.summary.worst_margin < 0.0);

    std::vector<CheckRecord> recs;
    RandomStream rng(70, 70);
    for (int i = 0; i < 200; ++i) {
        recs.push_back(make_record("c" + std::to_string(i % 3), 0.1 * (i % 5), i, i % 7, 1.0, rng.uniform(),
                                   0.5 + rng.uniform(), 1e-9));
    }
    recs.push_back(recs[17]);
    const Summary a = summarize(recs);
    for (int k = 0; k < 10; ++k) {
        for (std::size_t i = recs.size() - 1; i > 0; --i) std::swap(recs[i], recs[rng.next_u64() % (i + 1)]);
        CHECK(summarize(recs) == a);
    }
    CHECK_THROWS_AS(summarize(std::span<const CheckRecord>()), DomainError);
}

TEST_CASE("pairwise sum")
{
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum(std::span<const double>()) == 0.0);
}

TEST_CASE("json round trip")
{
    const BoundReport r = sample_report();
    const std::string text = to_json(r);
    CHECK(text.find("\"schema\": \"interp-couples/1\"") != std::string::npos);
    CHECK(bound_report_from_json(text) == r);
    CHECK(to_json(bound_report_from_json(text)) == text);

    Table t{"norms", {"a", "b"}, {{1.0 / 3.0, 1e-310}, {-0.0, 12345678.9}}};
    CHECK(table_from_json(to_json(t)) == t);
    CHECK_THROWS(bound_report_from_json("{\"schema\":\"other/2\"}"));
}

TEST_CASE("number formatting round-trips exactly")
{
    RandomStream rng(71, 71);
    for (int i = 0; i < 2000; ++i) {
        double v;
        const std::uint64_t bits = rng.next_u64();
        std::memcpy(&v, &bits, sizeof v);
        if (!std::isfinite(v)) continue;
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e21) == "1e+21");
}

TEST_CASE("csv layout")
{
    const BoundReport r = sample_report();
    const std::string csv = to_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.records.size()) + 1);
    CHECK(csv.rfind("check,theta,sample,index,x_norm,value,bound,margin,pass\n", 0) == 0);
    Table t{"kprofile", {"t", "K", "K_over_min_bound"}, {{0.5, 0.5, 1}, {2, 1, 1}}};
    CHECK(to_csv(t) == "t,K,K_over_min_bound\n0.5,0.5,1\n2,1,1\n");
}

TEST_CASE("atomic emit")
{
    const auto dir = temp_dir();
    const auto path = dir / "report.json";
    const BoundReport r = sample_report();
    emit(r, Format::Json, path);
    CHECK(bound_report_from_json(slurp(path)) == r);
    CHECK_FALSE(std::filesystem::exists(dir / "report.json.tmp"));
    emit(r, Format::Csv, dir / "report.csv");
    CHECK(slurp(dir / "report.csv") == to_csv(r));
    CHECK_THROWS_WITH_AS(emit(r, Format::Json, dir / "missing" / "x.json"), doctest::Contains("missing"), IoError);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), DomainError);
    std::filesystem::remove_all(dir);
}

}
