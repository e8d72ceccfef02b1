#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace interp {

inline constexpr const char* kReportSchema = "interp-couples/1";

/// (bound - value) / bound. A zero bound gives 0 when value is also 0 and the
/// most negative finite double otherwise.
double relative_margin(double value, double bound);

/// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> v);

/// One checked inequality value <= bound.
struct CheckRecord {
    std::string check;
    std::optional<double> theta;
    std::int64_t sample = 0;
    std::int64_t index = 0; ///< secondary index: Taylor order, grid column, ...
    double x_norm = 0.0;
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool pass = true;

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

/// Builds a record; pass <=> value <= bound * (1 + tol).
CheckRecord make_record(std::string check, std::optional<double> theta, std::int64_t sample, std::int64_t index,
                        double x_norm, double value, double bound, double tol);

struct Summary {
    std::int64_t count = 0;
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    double worst_margin = 0.0;
    double mean_margin = 0.0;
    std::string worst_check;
    std::optional<double> worst_theta;
    std::int64_t worst_sample = 0;
    std::int64_t worst_index = 0;

    friend bool operator==(const Summary&, const Summary&) = default;
};

/// Order-independent aggregation: the worst record is the minimal margin with
/// ties broken by (theta, sample, index, check); the mean is a pairwise sum
/// over sorted margins.
Summary summarize(std::span<const CheckRecord> records);

/// Outcome of one harness run.
struct BoundReport {
    std::string kind;
    std::string map;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    double M0 = 0.0;
    double M1 = 0.0;
    std::map<std::string, double> metrics;
    std::vector<CheckRecord> records;
    Summary summary;

    bool all_passed() const { return summary.failed == 0; }
    friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Recomputes report.summary from report.records.
void finalize(BoundReport& report);

/// Plot-ready numeric table (norms, K profiles, Taylor coefficient norms).
struct Table {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

enum class Format { Csv, Json };

Format parse_format(const std::string& s);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_json(const BoundReport& report);
std::string to_json(const Table& table);
std::string to_csv(const BoundReport& report);
std::string to_csv(const Table& table);

BoundReport bound_report_from_json(const std::string& text);
Table table_from_json(const std::string& text);

/// Locale-independent shortest round-trip decimal.
std::string format_double(double v);

/// Writes `content` to `path` via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void emit(const BoundReport& report, Format format, const std::filesystem::path& path);
void emit(const Table& table, Format format, const std::filesystem::path& path);

} // namespace interp
