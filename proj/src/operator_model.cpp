#include "curvlab/operator_model.hpp"

#include "curvlab/curvature.hpp"
#include "curvlab/error.hpp"
#include "curvlab/points.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

double WeightedShift::norm() const
{
    double n = tail_weight.value_or(0.0);
    for (double w : weights)
        n = std::max(n, w);
    return n;
}

WeightedShift shift_from_diagonal(std::span<const double> coeffs, std::optional<double> tail)
{
    std::vector<double> a(coeffs.begin(), coeffs.end());
    if (tail)
        a.push_back(*tail);
    for (double c : a) {
        if (!(c > 0.0))
            throw BadConstantTerm("shift_from_diagonal: coefficients must be positive");
    }
    WeightedShift s;
    for (std::size_t n = 0; n + 1 < a.size(); ++n)
        s.weights.push_back(std::sqrt(a[n] / a[n + 1]));
    if (tail)
        s.tail_weight = 1.0;
    return s;
}

namespace {

PosDefVerdict factor_test(const KernelSpec& factor, const ContractionOptions& opt, double radius)
{
    const auto& d = factor.domain();
    const std::size_t m = d.m;
    PosDefVerdict v;
    bool have = false;
    auto merge = [&](const PosDefVerdict& x) {
        v = have ? combine(v, x) : x;
        have = true;
    };

    if (m == 1) {
        if (auto coeffs = diagonal_coefficients(factor, opt.order))
            merge(diag_coeff_psd(*coeffs, opt.eps));
    }

    const Point origin(m, Complex(0.0, 0.0));
    const HermitianSeries s = taylor_expand(factor, origin, opt.order);
    if (opt.deltas.empty()) {
        merge(taylor_psd_graded(s, opt.eps));
    } else {
        for (const auto& delta : opt.deltas)
            merge(taylor_psd(s, delta, opt.eps));
    }

    const auto points = opt.points.empty() ? random_points(d, 12, radius, opt.seed) : opt.points;
    merge(gram_psd(factor, points, opt.eps));
    return v;
}

} // namespace

PosDefVerdict contraction_test(const KernelSpec& k, const ContractionOptions& opt)
{
    if (!k.domain().compatible(Domain::disc()) || k.domain().kind == Domain::Kind::any)
        throw ShapeMismatch("contraction_test: needs a kernel on the disc, got " + k.domain().name());
    return factor_test(contract(k), opt, 0.9);
}

PosDefVerdict row_contraction_test(const KernelSpec& k, const ContractionOptions& opt)
{
    const auto& d = k.domain();
    const bool ball = d.kind == Domain::Kind::ball || (d.m == 1 && d.compatible(Domain::disc()));
    if (!ball || d.kind == Domain::Kind::any)
        throw ShapeMismatch("row_contraction_test: needs a kernel on the ball, got " + d.name());
    return factor_test(contract(k), opt, 0.9);
}

PosDefVerdict polydisc_contraction_test(const KernelSpec& k, const ContractionOptions& opt)
{
    const auto& d = k.domain();
    const bool poly = d.kind == Domain::Kind::polydisc || (d.m == 1 && d.compatible(Domain::disc()));
    if (!poly || d.kind == Domain::Kind::any)
        throw ShapeMismatch("polydisc_contraction_test: needs a kernel on the polydisc, got " + d.name());
    return factor_test(contract(k), opt, 0.9);
}

LocalOperator local_operator(const KernelSpec& k, const Point& w)
{
    const double c = curvature_scalar(k, w);
    if (!(c < 0.0))
        throw NumericBreakdown("local_operator: curvature is not negative at w");
    return {w[0], 1.0 / std::sqrt(-c)};
}

bool local_contraction_test(const LocalOperator& op)
{
    const double r2 = std::norm(op.w);
    if (r2 > 1.0 + 1e-12)
        return false;
    const double bound = (1.0 - r2) * (1.0 - r2);
    return op.h * op.h <= bound + 1e-12;
}

} // namespace curvlab
