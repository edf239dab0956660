#include "curvlab/curvature.hpp"
#include "curvlab/dsl.hpp"
#include "curvlab/operator_model.hpp"
#include "curvlab/points.hpp"
#include "curvlab/run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace curvlab {

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

ScenarioReport agler_counterexample(std::uint64_t seed)
{
    ScenarioReport r;
    r.scenario = "agler_counterexample";
    const KernelSpec k = parse_kernel_dsl("diag([8,16]; tail=15)");

    const std::vector<double> head{8.0, 16.0};
    const WeightedShift w = shift_from_diagonal(head, 15.0);
    const std::vector<double> want{std::sqrt(0.5), std::sqrt(16.0 / 15.0), 1.0, 1.0};
    for (std::size_t n = 0; n < want.size(); ++n) {
        const double got = n < w.weights.size() ? w.weights[n] : *w.tail_weight;
        r.expect_near("weight " + std::to_string(n), want[n], got, 1e-12);
    }
    r.expect_near("operator norm", std::sqrt(16.0 / 15.0), w.norm(), 1e-12);
    r.expect_true("operator norm exceeds 1", w.norm() > 1.0);

    ContractionOptions opt;
    opt.seed = seed;
    const PosDefVerdict c = contraction_test(k, opt);
    r.checks.push_back({"contraction", to_string(c.verdict), c.describe(), c.tolerance, c.accepts()});
    r.expect_equal("contraction verdict", "indefinite", to_string(c.verdict));
    r.expect_near("contraction witness coefficient", -1.0, c.min_value, 1e-12);
    r.expect_near("contraction witness index", 2.0, c.position ? double(*c.position) : -1.0, 0.0);

    const KernelSpec szego = szego_disc();
    std::vector<Point> pts;
    double err = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double rr = 0.1 * i; // r = |w|^2
        const Point p{std::polar(std::sqrt(rr), 0.7 * i)};
        pts.push_back(p);
        const double diff = curvature_difference(k, szego, p)(0, 0).real();
        const double closed = 8.0 * (8.0 - 4.0 * rr - rr * rr) / std::pow(8.0 + 8.0 * rr - rr * rr, 2);
        err = std::max(err, std::abs(diff - closed));
        if (i == 0)
            r.expect_near("curvature difference at 0", 1.0, diff, 1e-9);
    }
    r.expect_near("curvature difference vs closed form (max error)", 0.0, err, 1e-9);
    const PosDefVerdict cmp = curvature_compare(k, szego, Pointwise{pts});
    r.checks.push_back({"curvature_vs_szego", to_string(cmp.verdict), cmp.describe(), cmp.tolerance, cmp.accepts()});
    r.expect_true("curvature comparison with szego passes", cmp.accepts());
    r.expect_near("curvature at 0", -2.0, curvature_scalar(k, Point{0.0}), 1e-12);
    r.points = pts;
    return r;
}

ScenarioReport nondivisible_contraction(std::uint64_t seed)
{
    ScenarioReport r;
    r.scenario = "nondivisible_contraction";
    // 1 + 2 u + sum_{n>=2} (n + 1/4) u^n = (1 + u + u^2/4 + u^3 + u^4 + ...) / (1 - u)
    const KernelSpec k = parse_kernel_dsl("diag([1,1,0.25]; tail=1) * szego");

    ContractionOptions opt;
    opt.seed = seed;
    const PosDefVerdict c = contraction_test(k, opt);
    r.checks.push_back({"contraction", to_string(c.verdict), c.describe(), c.tolerance, c.accepts()});
    r.expect_true("contraction accepted", c.accepts());

    const auto coeffs = diagonal_coefficients(contract(k), kDefaultOrder);
    const std::vector<double> want{1.0, 1.0, 0.25, 1.0, 1.0};
    for (std::size_t n = 0; n < want.size(); ++n)
        r.expect_near("factor coefficient " + std::to_string(n), want[n], coeffs ? (*coeffs)[n] : NAN, 1e-12);

    // Every t < 1/2 fails; the grid starts at the witness of interest.
    const std::vector<double> grid{0.25, 0.5, 0.75, 1.0};
    const DivisibilityReport d = divisibility_check(contract(k), grid, Point{0.0}, kDefaultOrder,
                                                    kDefaultTolerance, seed);
    r.checks.push_back({"divisible", d.divisible ? "divisible-up-to-order" : "not-divisible",
                 d.witness_t ? "fails at t=" + fmt(*d.witness_t) : d.scope, 0.0, d.divisible});
    r.expect_equal("divisibility", "not-divisible", d.divisible ? "divisible-up-to-order" : "not-divisible");
    r.expect_near("witness t", 0.25, d.witness_t.value_or(NAN), 0.0);
    const PosDefVerdict& at_quarter = d.per_t.front();
    r.expect_equal("witness index", "(2)x(2)",
                   at_quarter.index ? at_quarter.index->first.to_string() + "x" + at_quarter.index->second.to_string()
                                    : "none");
    r.expect_near("witness entry", -1.0 / 32.0, at_quarter.entry.value_or(NAN).real(), 1e-12);

    const HermitianSeries p = real_power(taylor_expand(contract(k), Point{0.0}, kDefaultOrder), 0.25);
    r.expect_near("z^2 conj(w)^2 coefficient at t=0.25", -1.0 / 32.0,
                  p.coeff(MultiIndex{2}, MultiIndex{2}).real(), 1e-12);
    for (double t : {0.5, 0.75, 1.0}) {
        const auto dc = diagonal_coefficients(power(contract(k), t), kDefaultOrder);
        PosDefVerdict v = diag_coeff_psd(*dc);
        r.expect_true("coefficient test accepts t=" + fmt(t), v.accepts());
    }

    const auto dcc = divisible_contraction_check(k, kDefaultTGrid, kDefaultOrder, kDefaultTolerance, seed);
    r.expect_true("both divisibility routes agree", dcc.agree);
    return r;
}

ScenarioReport detball_logk(std::uint64_t seed)
{
    ScenarioReport r;
    r.scenario = "detball_logk";
    const KernelSpec k = det_ball_2x2();
    const Point origin(4, Complex(0.0, 0.0));
    const HermitianSeries s = taylor_expand(k, origin, kDefaultOrder);
    const HermitianSeries logk = log(s);

    const auto pts = random_points(k.domain(), 30, 0.6, seed);
    const PosDefVerdict v = posdef_function_check(logk, {}, pts);
    r.checks.push_back({"log_posdef", to_string(v.verdict), v.describe(), v.tolerance, v.accepts()});
    r.expect_equal("log K positive definite", "indefinite", to_string(v.verdict));
    r.expect_true("an eigenvalue below -1e-8", v.min_value < -1e-8);

    const DivisibilityReport d = divisibility_check(k, {0.5}, origin, kDefaultOrder, kDefaultTolerance, seed);
    r.expect_equal("divisibility at t=0.5", "not-divisible",
                   d.divisible ? "divisible-up-to-order" : "not-divisible");

    const MultiIndex delta{1, 0, 0, 3};
    const TaylorMatrix h = taylor_matrix(logk.series(), delta);
    r.notes.push_back("H_delta of log K for delta=" + delta.to_string() + " (not asserted):");
    for (Eigen::Index i = 0; i < h.entries.rows(); ++i) {
        std::ostringstream row;
        row << h.indices[static_cast<std::size_t>(i)].to_string() << ":";
        for (Eigen::Index j = 0; j < h.entries.cols(); ++j)
            row << " " << fmt(h.entries(i, j).real());
        r.notes.push_back(row.str());
    }
    const PosDefVerdict hv = taylor_matrix_psd(h, kDefaultTolerance);
    r.notes.push_back("H_delta verdict: " + hv.describe());
    r.points = pts;
    return r;
}

ScenarioReport szego_baseline(std::uint64_t seed)
{
    ScenarioReport r;
    r.scenario = "szego_baseline";
    const KernelSpec k = szego_disc();
    const auto pts = radial_grid(Domain::disc(), 10, 5, 0.9, seed);
    double curv_err = 0.0, h_err = 0.0;
    bool local_ok = true;
    for (const auto& w : pts) {
        const double r2 = std::norm(w[0]);
        curv_err = std::max(curv_err, std::abs(curvature_scalar(k, w) + 1.0 / ((1.0 - r2) * (1.0 - r2))));
        const LocalOperator op = local_operator(k, w);
        h_err = std::max(h_err, std::abs(op.h - (1.0 - r2)));
        local_ok = local_ok && local_contraction_test(op);
    }
    r.expect_near("grid points", 50.0, static_cast<double>(pts.size()), 0.0);
    r.expect_near("curvature vs -1/(1-|w|^2)^2 (max error)", 0.0, curv_err, 1e-10);
    r.expect_near("h(w) vs 1-|w|^2 (max error)", 0.0, h_err, 1e-10);
    r.expect_true("local operator contractive on the grid", local_ok);
    r.points = pts;
    return r;
}

} // namespace

const std::vector<std::string>& scenario_ids()
{
    static const std::vector<std::string> ids{"agler_counterexample", "nondivisible_contraction",
                                              "detball_logk", "szego_baseline"};
    return ids;
}

ScenarioReport run_scenario(const std::string& id, std::uint64_t seed)
{
    if (id == "agler_counterexample")
        return agler_counterexample(seed);
    if (id == "nondivisible_contraction")
        return nondivisible_contraction(seed);
    if (id == "detball_logk")
        return detball_logk(seed);
    if (id == "szego_baseline")
        return szego_baseline(seed);
    throw ConfigError("unknown scenario '" + id + "'");
}

} // namespace curvlab
