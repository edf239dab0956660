#pragma once

#include "curvlab/divisibility.hpp"
#include "curvlab/error.hpp"
#include "curvlab/kernel.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace curvlab {

// Invalid configuration or command-line input (exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

inline const std::vector<std::string> kAllChecks{"posdef",       "curvature",
                                                 "contraction",  "row_contraction",
                                                 "polydisc_contraction", "divisible",
                                                 "reconstruct"};

enum class OutputFormat { text, json };

struct RunConfig {
    std::string kernel;
    std::vector<std::string> checks;
    int order = kDefaultOrder;
    std::vector<double> t_grid = kDefaultTGrid;
    std::uint64_t seed = 42;
    double tolerance = kDefaultTolerance;
    OutputFormat format = OutputFormat::text;
    std::optional<Point> center;

    // Throws ConfigError on out-of-range values.
    void validate() const;
};

// key = value lines; '#' starts a comment. Keys: kernel (quoted DSL), checks
// (comma list), order, t_grid (comma list), seed, tolerance, format, center.
// The seed defaults to CURVLAB_SEED when set, else 42.
RunConfig parse_config(std::string_view text);

// "0.2+0.1i, -0.3i, 0.5" -> point.
Point parse_point(std::string_view text);
Complex parse_complex(std::string_view text);
std::string format_complex(Complex c);

struct CheckResult {
    std::string name;
    std::string verdict;
    std::string witness;
    double tolerance = 0.0;
    bool pass = true;
};

using ReportValue = std::variant<double, std::string>;

struct ExpectedRow {
    std::string label;
    ReportValue expected;
    ReportValue actual;
    std::optional<double> tol;
    bool pass = true;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<CheckResult> checks;
    std::vector<ExpectedRow> expected;
    std::vector<Point> points;
    // Free-form lines for inspection; never asserted.
    std::vector<std::string> notes;
    bool pass = true;

    void add_check(CheckResult c);
    // Numeric row: pass iff |actual - expected| <= tol.
    void expect_near(std::string label, double expected, double actual, double tol);
    // Exact row on a string or flag.
    void expect_equal(std::string label, std::string expected, std::string actual);
    void expect_true(std::string label, bool actual);
};

std::string to_json(const ScenarioReport& r);
std::string to_text(const ScenarioReport& r);

// Runs the requested checks in a fixed order. Check failures mark the report
// failed; invalid input throws (ConfigError, ParseError or another Error).
ScenarioReport run_checks(const RunConfig& cfg);

const std::vector<std::string>& scenario_ids();
// Throws ConfigError for an unknown id.
ScenarioReport run_scenario(const std::string& id, std::uint64_t seed = 42);

} // namespace curvlab
