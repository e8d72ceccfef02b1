#include "interp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <tuple>

#include <json.hpp>

#include "interp/types.hpp"

namespace interp {

using ojson = nlohmann::ordered_json;

double relative_margin(double value, double bound)
{
    if (bound > 0.0) return (bound - value) / bound;
    if (value <= 0.0) return 0.0;
    return std::numeric_limits<double>::lowest();
}

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

CheckRecord make_record(std::string check, std::optional<double> theta, std::int64_t sample, std::int64_t index,
                        double x_norm, double value, double bound, double tol)
{
    CheckRecord r;
    r.check = std::move(check);
    r.theta = theta;
    r.sample = sample;
    r.index = index;
    r.x_norm = x_norm;
    r.value = value;
    r.bound = bound;
    r.margin = relative_margin(value, bound);
    r.pass = bound > 0.0 ? value <= bound * (1.0 + tol) : value <= 0.0;
    return r;
}

Summary summarize(std::span<const CheckRecord> records)
{
    if (records.empty()) throw DomainError("summarize: empty record set");
    auto key = [](const CheckRecord& r) {
        return std::tuple<double, double, std::int64_t, std::int64_t, const std::string&>(
            r.margin, r.theta.value_or(-1.0), r.sample, r.index, r.check);
    };
    const CheckRecord* worst = &records.front();
    Summary s;
    std::vector<double> margins;
    margins.reserve(records.size());
    for (const auto& r : records) {
        ++s.count;
        if (r.pass) ++s.passed;
        else ++s.failed;
        // a zero bound with a positive value has margin lowest(); clamp so the mean stays finite
        margins.push_back(std::max(r.margin, -1e300));
        if (key(r) < key(*worst)) worst = &r;
    }
    std::sort(margins.begin(), margins.end());
    s.mean_margin = pairwise_sum(margins) / static_cast<double>(margins.size());
    s.worst_margin = worst->margin;
    s.worst_check = worst->check;
    s.worst_theta = worst->theta;
    s.worst_sample = worst->sample;
    s.worst_index = worst->index;
    return s;
}

void finalize(BoundReport& report)
{
    report.summary = summarize(report.records);
}

Format parse_format(const std::string& s)
{
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw DomainError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

ojson optional_number(const std::optional<double>& v)
{
    return v ? ojson(*v) : ojson(nullptr);
}

std::optional<double> read_optional(const ojson& j)
{
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

ojson record_json(const CheckRecord& r)
{
    ojson j;
    j["check"] = r.check;
    j["theta"] = optional_number(r.theta);
    j["sample"] = r.sample;
    j["index"] = r.index;
    j["x_norm"] = r.x_norm;
    j["value"] = r.value;
    j["bound"] = r.bound;
    j["margin"] = r.margin;
    j["pass"] = r.pass;
    return j;
}

CheckRecord record_from(const ojson& j)
{
    CheckRecord r;
    r.check = j.at("check").get<std::string>();
    r.theta = read_optional(j.at("theta"));
    r.sample = j.at("sample").get<std::int64_t>();
    r.index = j.at("index").get<std::int64_t>();
    r.x_norm = j.at("x_norm").get<double>();
    r.value = j.at("value").get<double>();
    r.bound = j.at("bound").get<double>();
    r.margin = j.at("margin").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
}

void check_schema(const ojson& j)
{
    if (!j.contains("schema") || j["schema"] != kReportSchema) {
        throw DomainError(std::string("report schema mismatch, expected ") + kReportSchema);
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string to_json(const BoundReport& report)
{
    ojson j;
    j["schema"] = kReportSchema;
    j["kind"] = report.kind;
    j["map"] = report.map;
    j["seed"] = report.seed;
    j["tolerance"] = report.tolerance;
    j["M0"] = report.M0;
    j["M1"] = report.M1;
    ojson metrics = ojson::object();
    for (const auto& [k, v] : report.metrics) metrics[k] = v;
    j["metrics"] = metrics;
    const Summary& s = report.summary;
    ojson summary;
    summary["count"] = s.count;
    summary["passed"] = s.passed;
    summary["failed"] = s.failed;
    summary["worst_margin"] = s.worst_margin;
    summary["mean_margin"] = s.mean_margin;
    summary["worst_check"] = s.worst_check;
    summary["worst_theta"] = optional_number(s.worst_theta);
    summary["worst_sample"] = s.worst_sample;
    summary["worst_index"] = s.worst_index;
    j["summary"] = summary;
    ojson records = ojson::array();
    for (const auto& r : report.records) records.push_back(record_json(r));
    j["records"] = records;
    return j.dump(1) + "\n";
}

std::string to_json(const Table& table)
{
    ojson j;
    j["schema"] = kReportSchema;
    j["kind"] = table.kind;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(1) + "\n";
}

BoundReport bound_report_from_json(const std::string& text)
{
    const ojson j = ojson::parse(text);
    check_schema(j);
    BoundReport r;
    r.kind = j.at("kind").get<std::string>();
    r.map = j.at("map").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tolerance = j.at("tolerance").get<double>();
    r.M0 = j.at("M0").get<double>();
    r.M1 = j.at("M1").get<double>();
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = v.get<double>();
    const ojson& s = j.at("summary");
    r.summary.count = s.at("count").get<std::int64_t>();
    r.summary.passed = s.at("passed").get<std::int64_t>();
    r.summary.failed = s.at("failed").get<std::int64_t>();
    r.summary.worst_margin = s.at("worst_margin").get<double>();
    r.summary.mean_margin = s.at("mean_margin").get<double>();
    r.summary.worst_check = s.at("worst_check").get<std::string>();
    r.summary.worst_theta = read_optional(s.at("worst_theta"));
    r.summary.worst_sample = s.at("worst_sample").get<std::int64_t>();
    r.summary.worst_index = s.at("worst_index").get<std::int64_t>();
    for (const auto& rec : j.at("records")) r.records.push_back(record_from(rec));
    return r;
}

Table table_from_json(const std::string& text)
{
    const ojson j = ojson::parse(text);
    check_schema(j);
    Table t;
    t.kind = j.at("kind").get<std::string>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    return t;
}

std::string to_csv(const BoundReport& report)
{
    std::string out = "check,theta,sample,index,x_norm,value,bound,margin,pass\n";
    for (const auto& r : report.records) {
        out += csv_field(r.check);
        out += ',';
        out += r.theta ? format_double(*r.theta) : std::string();
        out += ',' + std::to_string(r.sample) + ',' + std::to_string(r.index);
        out += ',' + format_double(r.x_norm) + ',' + format_double(r.value) + ',' + format_double(r.bound);
        out += ',' + format_double(r.margin) + ',' + (r.pass ? "1" : "0") + '\n';
    }
    return out;
}

std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        const std::string reason = ec.message();
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move report into place at " + path.string() + ": " + reason);
    }
}

void emit(const BoundReport& report, Format format, const std::filesystem::path& path)
{
    write_atomic(path, format == Format::Json ? to_json(report) : to_csv(report));
}

void emit(const Table& table, Format format, const std::filesystem::path& path)
{
    write_atomic(path, format == Format::Json ? to_json(table) : to_csv(table));
}

} // namespace interp
