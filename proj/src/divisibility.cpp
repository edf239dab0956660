#include "curvlab/divisibility.hpp"

#include "curvlab/error.hpp"
#include "curvlab/points.hpp"

#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

std::string scope_note(int order, const std::vector<double>& t_grid)
{
    std::ostringstream os;
    os << "certified up to order " << order << " on t grid {";
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        os << (i ? ", " : "") << t_grid[i];
    os << "}";
    return os.str();
}

void require_grid(const std::vector<double>& t_grid)
{
    if (t_grid.empty())
        throw Error("t grid is empty");
    for (double t : t_grid) {
        if (!(t > 0.0))
            throw Error("t grid values must be positive");
    }
}

// Gram verdicts only count when they refute.
PosDefVerdict refute_only(PosDefVerdict taylor, const PosDefVerdict& gram)
{
    if (gram.verdict == Verdict::indefinite && taylor.verdict != Verdict::indefinite)
        return gram;
    return taylor;
}

} // namespace

const PosDefVerdict* DivisibilityReport::verdict_at(double t) const
{
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (std::abs(t_grid[i] - t) < 1e-12)
            return &per_t[i];
    }
    return nullptr;
}

DivisibilityReport divisibility_check(const KernelSpec& k, const std::vector<double>& t_grid,
                                      const Point& w0, int order, double eps, std::uint64_t seed)
{
    require_grid(t_grid);
    const HermitianSeries s = taylor_expand(k, w0, order);
    if (!(s.constant_term() > 0.0))
        throw BadConstantTerm("divisibility_check: K(w0, w0) is not positive");

    std::vector<Point> points;
    if (!w0.empty())
        points = random_points_near(k.domain(), w0, 8, 0.2, seed);

    DivisibilityReport r;
    r.t_grid = t_grid;
    r.order = order;
    r.scope = scope_note(order, t_grid);
    for (double t : t_grid) {
        const HermitianSeries st = real_power(s, t);
        PosDefVerdict v = taylor_psd_graded(st, eps);
        if (!points.empty())
            v = refute_only(v, gram_psd(st, points, eps));
        if (v.verdict == Verdict::indefinite && r.divisible) {
            r.divisible = false;
            r.witness_t = t;
        }
        r.per_t.push_back(std::move(v));
    }
    return r;
}

LogKernelReport log_kernel_cpd_check(const KernelSpec& k, const std::vector<Point>& points,
                                     const Point& w0, double eps, std::uint64_t seed)
{
    LogKernelReport r;
    std::vector<Point> accepted;
    std::vector<std::vector<Complex>> logs; // logs[a][b] for b <= a

    auto try_add = [&](const Point& p) {
        std::vector<Complex> row;
        try {
            for (const auto& q : accepted)
                row.push_back(log_eval(k, p, q));
            row.push_back(log_eval(k, p, p));
            log_eval(k, p, w0);
        } catch (const BranchError&) {
            ++r.rejected;
            return false;
        }
        accepted.push_back(p);
        logs.push_back(std::move(row));
        return true;
    };

    for (const auto& p : points)
        try_add(p);
    const std::size_t want = points.size();
    double radius = 0.5 * kDefaultGuardRadius;
    std::uint64_t salt = seed;
    for (int round = 0; accepted.size() < want && round < 50; ++round) {
        for (const auto& p : random_points_near(k.domain(), w0, want - accepted.size(), radius, ++salt))
            try_add(p);
        radius *= 0.8;
    }
    if (accepted.size() < 2)
        throw BranchError("log_kernel_cpd_check: too few points with a usable logarithm");

    const auto n = static_cast<Eigen::Index>(accepted.size());
    Eigen::MatrixXcd g(n, n), l(n, n);
    const Complex c0 = log_eval(k, w0, w0);
    std::vector<Complex> to_w0(accepted.size());
    for (std::size_t a = 0; a < accepted.size(); ++a)
        to_w0[a] = log_eval(k, accepted[a], w0);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
            const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
            g(a, b) = logs[ua][ub];
            g(b, a) = std::conj(g(a, b));
            l(a, b) = g(a, b) - to_w0[ua] - std::conj(to_w0[ub]) + c0;
            l(b, a) = std::conj(l(a, b));
        }
    }
    r.cpd = cpd_check(g, eps);
    r.cpd.points = accepted;
    r.shifted = matrix_psd(l, eps, "shifted log gram");
    r.shifted.points = accepted;
    r.points = std::move(accepted);
    return r;
}

ReconstructionResult reconstruct(const HermitianSeries& logdiag, const std::vector<double>& t_grid,
                                 double eps)
{
    require_grid(t_grid);
    const Series& in = logdiag.series();
    for (std::size_t i = 1; i < in.dim(); ++i) {
        const double scale = std::max(1.0, std::abs(in.at(i, 0)));
        if (std::abs(in.at(i, 0) - std::conj(in.at(0, i))) > 1e-10 * scale)
            throw HermitianViolation("reconstruct: holomorphic and antiholomorphic parts do not pair");
    }

    Series psi = holomorphic_part(in);
    psi.at(0, 0) = 0.5 * in.at(0, 0).real();
    const Series e_psi = exp(psi);
    const HermitianSeries k0(mixed_part(in));
    const Series body = mul(mul(e_psi, exp(k0.series())), adjoint(e_psi));

    ReconstructionResult r{k0, psi, HermitianSeries(body, 1e-10), 0.0, {}, {}, t_grid, {}};

    const std::size_t m = in.vars();
    r.sample.push_back(in.center());
    const auto near = random_points_near(m == 1 ? Domain::disc() : Domain::polydisc(m), in.center(),
                                         24, 0.2, kDefaultSeed);
    r.sample.insert(r.sample.end(), near.begin(), near.end());
    for (const auto& w : r.sample) {
        const double expected = std::exp(diagonal_eval(logdiag, w));
        const double got = diagonal_eval(r.kernel, w);
        r.diagonal_error = std::max(r.diagonal_error, std::abs(expected - got));
    }

    r.k0_verdict = posdef_function_check(k0, {}, {}, eps);
    for (double t : t_grid)
        r.per_t.push_back(taylor_psd_graded(real_power(r.kernel, t), eps));
    return r;
}

DivisibleContractionReport divisible_contraction_check(const KernelSpec& k,
                                                       const std::vector<double>& t_grid, int order,
                                                       double eps, std::uint64_t seed)
{
    const auto& d = k.domain();
    if (d.kind == Domain::Kind::any || d.kind == Domain::Kind::matrix_ball2)
        throw ShapeMismatch("divisible_contraction_check: needs a disc, ball or polydisc kernel, got " +
                            d.name());
    const KernelSpec factor = contract(k);
    const Point origin(d.m, Complex(0.0, 0.0));

    DivisibleContractionReport r;
    r.powers = divisibility_check(factor, t_grid, origin, order, eps, seed);

    const HermitianSeries logf = log(taylor_expand(factor, origin, order));
    if (d.m == 1) {
        r.curvature_route = posdef_function_check(HermitianSeries(mixed_derivative(logf, 0, 0)), {}, {}, eps);
    } else {
        r.curvature_route = derivative_function_check(logf, {}, eps);
    }
    r.curvature_route.source = "d dbar log: " + r.curvature_route.source;

    const bool refuted = r.curvature_route.verdict == Verdict::indefinite;
    r.agree = refuted == !r.powers.divisible;
    return r;
}

} // namespace curvlab
