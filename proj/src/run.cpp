#include "curvlab/run.hpp"

#include "curvlab/curvature.hpp"
#include "curvlab/dsl.hpp"
#include "curvlab/operator_model.hpp"
#include "curvlab/points.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t p = s.find(sep, start);
        out.push_back(trim(s.substr(start, p == std::string_view::npos ? p : p - start)));
        if (p == std::string_view::npos)
            return out;
        start = p + 1;
    }
}

double parse_double(std::string_view s, const char* what)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    return v;
}

template <class Int>
Int parse_int(std::string_view s, const char* what)
{
    s = trim(s);
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::string format_double(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

} // namespace

Complex parse_complex(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    }
    if (s.empty())
        throw ConfigError("empty complex number");
    if (s.back() != 'i')
        return {parse_double(s, "complex number"), 0.0};
    s.pop_back();
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    auto imag = [](std::string_view t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return parse_double(t, "imaginary part");
    };
    if (cut == std::string::npos)
        return {0.0, imag(s)};
    return {parse_double(std::string_view(s).substr(0, cut), "real part"),
            imag(std::string_view(s).substr(cut))};
}

Point parse_point(std::string_view text)
{
    Point p;
    for (auto part : split(text, ','))
        p.push_back(parse_complex(part));
    return p;
}

std::string format_complex(Complex c)
{
    std::string s = format_double(c.real() + 0.0);
    if (c.imag() != 0.0)
        s += (c.imag() < 0.0 ? "" : "+") + format_double(c.imag()) + "i";
    return s;
}

void RunConfig::validate() const
{
    if (kernel.empty())
        throw ConfigError("config: no kernel given");
    if (order < 1 || order > kMaxOrder)
        throw ConfigError("config: order must lie in [1, " + std::to_string(kMaxOrder) + "], got " +
                          std::to_string(order));
    if (t_grid.empty())
        throw ConfigError("config: t_grid is empty");
    for (double t : t_grid) {
        if (!(t > 0.0))
            throw ConfigError("config: t_grid values must be positive");
    }
    if (!(tolerance > 0.0))
        throw ConfigError("config: tolerance must be positive");
    for (const auto& c : checks) {
        if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
            throw ConfigError("config: unknown check '" + c + "'");
    }
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    cfg.seed = default_seed();
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view l = line;
        bool quoted = false;
        for (std::size_t k = 0; k < l.size(); ++k) {
            if (l[k] == '"')
                quoted = !quoted;
            if (l[k] == '#' && !quoted) {
                l = l.substr(0, k);
                break;
            }
        }
        l = trim(l);
        if (l.empty())
            continue;
        const std::size_t eq = l.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(trim(l.substr(0, eq)));
        std::string_view value = trim(l.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);

        if (key == "kernel") {
            cfg.kernel = std::string(value);
        } else if (key == "checks") {
            cfg.checks.clear();
            for (auto c : split(value, ','))
                cfg.checks.emplace_back(c);
        } else if (key == "order") {
            cfg.order = parse_int<int>(value, "order");
        } else if (key == "t_grid") {
            cfg.t_grid.clear();
            for (auto t : split(value, ','))
                cfg.t_grid.push_back(parse_double(t, "t_grid value"));
        } else if (key == "seed") {
            cfg.seed = parse_int<std::uint64_t>(value, "seed");
        } else if (key == "tolerance") {
            cfg.tolerance = parse_double(value, "tolerance");
        } else if (key == "format") {
            if (value == "text")
                cfg.format = OutputFormat::text;
            else if (value == "json")
                cfg.format = OutputFormat::json;
            else
                throw ConfigError("config: format must be text or json");
        } else if (key == "center") {
            cfg.center = parse_point(value);
        } else {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.checks.empty())
        cfg.checks = {"posdef", "curvature"};
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------

void ScenarioReport::add_check(CheckResult c)
{
    pass = pass && c.pass;
    checks.push_back(std::move(c));
}

void ScenarioReport::expect_near(std::string label, double exp, double actual, double tol)
{
    const bool ok = std::abs(actual - exp) <= tol;
    pass = pass && ok;
    expected.push_back({std::move(label), exp, actual, tol, ok});
}

void ScenarioReport::expect_equal(std::string label, std::string exp, std::string actual)
{
    const bool ok = exp == actual;
    pass = pass && ok;
    expected.push_back({std::move(label), std::move(exp), std::move(actual), std::nullopt, ok});
}

void ScenarioReport::expect_true(std::string label, bool actual)
{
    expect_equal(std::move(label), "true", actual ? "true" : "false");
}

namespace {

nlohmann::ordered_json value_json(const ReportValue& v)
{
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    return std::get<std::string>(v);
}

std::string value_text(const ReportValue& v)
{
    if (const auto* d = std::get_if<double>(&v))
        return format_double(*d);
    return std::get<std::string>(v);
}

} // namespace

std::string to_json(const ScenarioReport& r)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["scenario"] = r.scenario;
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"verdict", c.verdict},
                               {"witness", c.witness},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    j["expected"] = ordered_json::array();
    for (const auto& e : r.expected) {
        ordered_json row{{"label", e.label}, {"expected", value_json(e.expected)},
                         {"actual", value_json(e.actual)}};
        row["tol"] = e.tol ? ordered_json(*e.tol) : ordered_json(nullptr);
        row["pass"] = e.pass;
        j["expected"].push_back(std::move(row));
    }
    j["points"] = ordered_json::array();
    for (const auto& p : r.points) {
        ordered_json pj = ordered_json::array();
        for (const auto& x : p)
            pj.push_back(format_complex(x));
        j["points"].push_back(std::move(pj));
    }
    j["notes"] = r.notes;
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

std::string to_text(const ScenarioReport& r)
{
    std::ostringstream os;
    os << "scenario: " << r.scenario << "\n";
    for (const auto& c : r.checks)
        os << "  check " << c.name << ": " << (c.pass ? "pass" : "FAIL") << "  " << c.witness << "\n";
    for (const auto& e : r.expected) {
        os << "  " << (e.pass ? "ok   " : "MISS ") << e.label << ": expected " << value_text(e.expected)
           << ", actual " << value_text(e.actual);
        if (e.tol)
            os << " (tol " << format_double(*e.tol) << ")";
        os << "\n";
    }
    for (const auto& n : r.notes)
        os << "  note: " << n << "\n";
    os << "  points logged: " << r.points.size() << "\n";
    os << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

CheckResult from_verdict(std::string name, const PosDefVerdict& v)
{
    return {std::move(name), to_string(v.verdict), v.describe(), v.tolerance, v.accepts()};
}

void log_points(ScenarioReport& r, const std::vector<Point>& pts)
{
    r.points.insert(r.points.end(), pts.begin(), pts.end());
}

} // namespace

ScenarioReport run_checks(const RunConfig& cfg)
{
    cfg.validate();
    const KernelSpec k = parse_kernel_dsl(cfg.kernel);
    const Domain& d = k.domain();
    if (d.kind == Domain::Kind::any)
        throw ConfigError("kernel has no variables: constant kernels cannot be checked");
    const Point center = cfg.center.value_or(Point(d.m, Complex(0.0, 0.0)));
    if (center.size() != d.m || !d.contains(center))
        throw ConfigError("center is not a point of " + d.name());

    ScenarioReport r;
    r.scenario = "check";
    const double eps = cfg.tolerance;
    auto wants = [&](const char* c) {
        return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
    };

    if (wants("posdef")) {
        const auto pts = random_points(d, 16, 0.9, cfg.seed);
        auto v = combine(taylor_psd_graded(taylor_expand(k, center, cfg.order), eps), gram_psd(k, pts, eps));
        r.add_check(from_verdict("posdef", v));
        log_points(r, pts);
    }
    if (wants("curvature")) {
        const auto pts = radial_grid(d, 10, 8, 0.9, cfg.seed);
        std::optional<PosDefVerdict> worst;
        for (const auto& w : pts) {
            auto v = curvature_negativity(k, w, eps);
            worst = worst ? combine(*worst, v) : v;
        }
        r.add_check(from_verdict("curvature_negative", *worst));
        if (d.kind != Domain::Kind::matrix_ball2) {
            const KernelSpec ref = reference_kernel(d);
            r.add_check(from_verdict("curvature_vs_" + pretty_print(ref),
                                     curvature_compare(k, ref, Pointwise{pts}, eps)));
        }
        log_points(r, pts);
    }
    ContractionOptions opt;
    opt.eps = eps;
    opt.order = cfg.order;
    opt.seed = cfg.seed;
    if (wants("contraction"))
        r.add_check(from_verdict("contraction", contraction_test(k, opt)));
    if (wants("row_contraction"))
        r.add_check(from_verdict("row_contraction", row_contraction_test(k, opt)));
    if (wants("polydisc_contraction"))
        r.add_check(from_verdict("polydisc_contraction", polydisc_contraction_test(k, opt)));
    if (wants("divisible")) {
        const auto rep = divisibility_check(k, cfg.t_grid, center, cfg.order, eps, cfg.seed);
        PosDefVerdict worst = rep.per_t.front();
        for (const auto& v : rep.per_t)
            worst = combine(worst, v);
        std::string witness = rep.scope;
        if (rep.witness_t)
            witness = "fails at t=" + format_double(*rep.witness_t) + ": " + rep.verdict_at(*rep.witness_t)->describe();
        r.add_check({"divisible", rep.divisible ? "divisible-up-to-order" : "not-divisible", witness,
                     worst.tolerance, rep.divisible});
    }
    if (wants("reconstruct")) {
        const HermitianSeries logk = log(taylor_expand(k, center, cfg.order));
        const auto rec = reconstruct(logk, cfg.t_grid, eps);
        bool all_t = true;
        for (const auto& v : rec.per_t)
            all_t = all_t && v.accepts();
        const bool ok = rec.diagonal_error <= 1e-9 && (!rec.k0_verdict.accepts() || all_t);
        r.add_check({"reconstruct", to_string(rec.k0_verdict.verdict),
                     "diagonal error " + format_double(rec.diagonal_error) + "; K0 " +
                         rec.k0_verdict.describe(),
                     1e-9, ok});
        log_points(r, rec.sample);
    }
    return r;
}

} // namespace curvlab
