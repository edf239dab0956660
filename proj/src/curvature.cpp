#include "curvlab/curvature.hpp"

#include "curvlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

CurvatureMatrix curvature_from_jet(const KernelJet& jet, const Point& w)
{
    const double K = jet.value;
    if (!(K > 1e-12))
        throw NumericBreakdown("curvature: K(w, w) is not positive at the given point");
    const auto m = static_cast<Eigen::Index>(jet.grad.size());
    CurvatureMatrix c{w, Eigen::MatrixXcd(m, m)};
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            c.entries(i, j) = -(K * jet.hess[ui][uj] - jet.grad[ui] * std::conj(jet.grad[uj])) / (K * K);
        }
    }
    c.entries = 0.5 * (c.entries + c.entries.adjoint()).eval();
    return c;
}

CurvatureMatrix curvature_matrix(const KernelSpec& k, const Point& w)
{
    return curvature_from_jet(derivatives(k, w), w);
}

double curvature_scalar(const KernelSpec& k, const Point& w)
{
    if (w.size() != 1)
        throw ShapeMismatch("curvature_scalar: one-variable kernels only");
    return curvature_matrix(k, w).entries(0, 0).real();
}

PosDefVerdict curvature_negativity(const KernelSpec& k, const Point& w, double eps)
{
    auto v = matrix_psd(-curvature_matrix(k, w).entries, eps, "curvature");
    v.points = {w};
    return v;
}

double curvature_gram_check(const KernelSpec& k, const Point& w)
{
    const KernelJet jet = derivatives(k, w);
    const CurvatureMatrix curv = curvature_from_jet(jet, w);
    const std::size_t m = w.size();
    const auto n = static_cast<Eigen::Index>(m + 1);

    // <v_a, v_b> for v_0 = K_w, v_i = dbar_i K_w.
    Eigen::MatrixXcd P(n, n);
    P(0, 0) = jet.value;
    for (std::size_t i = 0; i < m; ++i) {
        const auto a = static_cast<Eigen::Index>(i + 1);
        P(a, 0) = std::conj(jet.grad[i]);
        P(0, a) = jet.grad[i];
        for (std::size_t j = 0; j < m; ++j)
            P(a, static_cast<Eigen::Index>(j + 1)) = jet.hess[j][i];
    }

    // Rows of X realize the vectors: X X^* = P.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (P + P.adjoint()));
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd X = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();

    auto tensor = [&](Eigen::Index a, Eigen::Index b) {
        Eigen::VectorXcd t(n * n);
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = 0; q < n; ++q)
                t(p * n + q) = X(a, p) * X(b, q);
        }
        return t;
    };

    std::vector<Eigen::VectorXcd> e;
    for (std::size_t i = 0; i < m; ++i) {
        const auto a = static_cast<Eigen::Index>(i + 1);
        e.push_back(tensor(0, a) - tensor(a, 0));
    }

    const double K2 = 2.0 * jet.value * jet.value;
    double dev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            // <e_i, e_j> = sum e_i conj(e_j)
            const Complex ip = e[j].dot(e[i]);
            const Complex rhs = -curv.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            dev = std::max(dev, std::abs(ip / K2 - rhs));
        }
    }
    return dev;
}

std::vector<std::vector<Series>> curvature_series(const HermitianSeries& s)
{
    const HermitianSeries k0 = normalize(s);
    const HermitianSeries logk = log(k0);
    const std::size_t m = s.vars();
    std::vector<std::vector<Series>> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            out[i].push_back(mixed_derivative(logk, i, j));
    }
    return out;
}

Eigen::MatrixXcd curvature_at_center(const std::vector<std::vector<Series>>& cs)
{
    const auto m = static_cast<Eigen::Index>(cs.size());
    Eigen::MatrixXcd c(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j)
            c(i, j) = -cs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].constant_term();
    }
    return c;
}

Eigen::MatrixXcd curvature_difference(const KernelSpec& kA, const KernelSpec& kB, const Point& w)
{
    if (!kA.domain().compatible(kB.domain()))
        throw ShapeMismatch("curvature comparison: domains differ");
    return curvature_matrix(kB, w).entries - curvature_matrix(kA, w).entries;
}

PosDefVerdict curvature_compare(const KernelSpec& kA, const KernelSpec& kB, const CompareMode& mode,
                                double eps)
{
    if (!kA.domain().compatible(kB.domain()))
        throw ShapeMismatch("curvature comparison: domains " + kA.domain().name() + " and " +
                            kB.domain().name() + " differ");

    if (const auto* pw = std::get_if<Pointwise>(&mode)) {
        if (pw->points.empty())
            throw Error("curvature_compare: no points");
        std::optional<PosDefVerdict> worst;
        for (const auto& w : pw->points) {
            auto v = matrix_psd(curvature_difference(kA, kB, w), eps, "curvature difference");
            v.points = {w};
            if (!worst || v.min_value < worst->min_value)
                worst = v;
        }
        return *worst;
    }

    const auto& fo = std::get<FunctionOrder>(mode);
    const HermitianSeries sA = taylor_expand(kA, fo.center, fo.order);
    const HermitianSeries sB = taylor_expand(kB, fo.center, fo.order);
    const HermitianSeries L(sub(log(sA).series(), log(sB).series()));
    if (L.vars() == 1) {
        const HermitianSeries dd(mixed_derivative(L, 0, 0));
        auto v = posdef_function_check(dd, fo.deltas, fo.points, eps);
        v.source = "function order: " + v.source;
        return v;
    }
    auto v = derivative_function_check(L, fo.points, eps);
    v.source = "function order: " + v.source;
    return v;
}

} // namespace curvlab
