#include "curvlab/posdef.hpp"

#include "curvlab/error.hpp"
#include "curvlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curvlab {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::positive: return "positive";
    case Verdict::indefinite: return "indefinite";
    case Verdict::degenerate: return "degenerate";
    }
    return "?";
}

std::string PosDefVerdict::describe() const
{
    std::ostringstream os;
    os.precision(12);
    os << to_string(verdict) << " [" << source << "] min=" << min_value << " tol=" << tolerance;
    if (index)
        os << " at " << index->first.to_string() << "x" << index->second.to_string();
    if (entry)
        os << " entry=" << entry->real();
    if (position)
        os << " position=" << *position;
    return os.str();
}

PosDefVerdict classify(double lmin, double lmax, double eps, std::string source)
{
    PosDefVerdict v;
    v.min_value = lmin;
    v.max_value = lmax;
    v.tolerance = eps * std::max(1.0, std::abs(lmax));
    v.source = std::move(source);
    if (lmin < -v.tolerance)
        v.verdict = Verdict::indefinite;
    else if (std::abs(lmin) <= v.tolerance)
        v.verdict = Verdict::degenerate;
    else
        v.verdict = Verdict::positive;
    return v;
}

PosDefVerdict combine(const PosDefVerdict& a, const PosDefVerdict& b)
{
    auto rank = [](Verdict v) {
        switch (v) {
        case Verdict::indefinite: return 2;
        case Verdict::degenerate: return 1;
        default: return 0;
        }
    };
    return rank(b.verdict) > rank(a.verdict) ? b : a;
}

namespace {

void require_hermitian(const Eigen::MatrixXcd& h, const char* what)
{
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-10 * scale)
        throw HermitianViolation(std::string(what) + ": matrix is not Hermitian (defect " +
                                 std::to_string(defect) + ")");
}

struct Spectrum {
    double lmin;
    double lmax;
    Eigen::VectorXcd vmin;
};

Spectrum spectrum(const Eigen::MatrixXcd& h)
{
    const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    if (es.info() != Eigen::Success)
        throw NumericBreakdown("eigen solver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev(0), ev(ev.size() - 1), es.eigenvectors().col(0)};
}

} // namespace

PosDefVerdict matrix_psd(const Eigen::MatrixXcd& h, double eps, std::string source)
{
    if (h.rows() == 0)
        return classify(0.0, 0.0, eps, std::move(source));
    require_hermitian(h, "matrix_psd");
    const auto sp = spectrum(h);
    auto v = classify(sp.lmin, sp.lmax, eps, std::move(source));
    Eigen::Index row = 0;
    sp.vmin.cwiseAbs().maxCoeff(&row);
    v.position = static_cast<std::size_t>(row);
    return v;
}

PosDefVerdict taylor_matrix_psd(const TaylorMatrix& h, double eps, std::string source)
{
    auto v = matrix_psd(h.entries, eps, std::move(source));
    if (v.position && !h.indices.empty()) {
        const auto k = *v.position;
        v.index = std::make_pair(h.indices[k], h.indices[k]);
        v.entry = h.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        v.position.reset();
    }
    return v;
}

TaylorMatrix taylor_matrix(const Series& s, const MultiIndex& delta)
{
    if (delta.size() != s.vars())
        throw ShapeMismatch("taylor_matrix: delta has the wrong length");
    if (delta.total_degree() > s.order())
        throw OrderError("taylor_matrix: |delta| = " + std::to_string(delta.total_degree()) +
                         " exceeds the truncation order " + std::to_string(s.order()));
    TaylorMatrix h;
    h.indices = delta.box();
    h.center = s.center();
    const auto n = static_cast<Eigen::Index>(h.indices.size());
    h.entries.resize(n, n);
    std::vector<std::size_t> pos;
    for (const auto& a : h.indices)
        pos.push_back(s.basis().index_of(a));
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b)
            h.entries(a, b) = s.at(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
    }
    return h;
}

TaylorMatrix graded_taylor_matrix(const Series& s, int degree)
{
    if (degree < 0)
        degree = s.order();
    if (degree > s.order())
        throw OrderError("graded_taylor_matrix: degree exceeds the truncation order");
    TaylorMatrix h;
    h.center = s.center();
    const std::size_t n = s.basis().degree_begin(degree + 1);
    for (std::size_t k = 0; k < n; ++k)
        h.indices.push_back(s.basis()[k]);
    const auto en = static_cast<Eigen::Index>(n);
    h.entries.resize(en, en);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            h.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s.at(a, b);
    }
    return h;
}

TaylorMatrix derivative_taylor_matrix(const Series& s, int degree)
{
    if (s.order() < 1)
        throw OrderError("derivative_taylor_matrix: need order >= 1");
    if (degree < 0)
        degree = s.order() - 1;
    if (degree > s.order() - 1)
        throw OrderError("derivative_taylor_matrix: degree exceeds order - 1");
    const std::size_t m = s.vars();
    const auto& basis = s.basis();
    const std::size_t n = basis.degree_begin(degree + 1);
    TaylorMatrix h;
    h.center = s.center();
    // Index list holds alpha + e_i so that a witness names the underlying
    // coefficient of s.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < m; ++i)
            h.indices.push_back(basis[basis.raise(k, i)]);
    }
    const auto en = static_cast<Eigen::Index>(n * m);
    h.entries.resize(en, en);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < m; ++i) {
            const double fa = basis[a][i] + 1;
            const std::size_t ra = basis.raise(a, i);
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t j = 0; j < m; ++j) {
                    const double fb = basis[b][j] + 1;
                    h.entries(static_cast<Eigen::Index>(a * m + i),
                              static_cast<Eigen::Index>(b * m + j)) =
                        fa * fb * s.at(ra, basis.raise(b, j));
                }
            }
        }
    }
    return h;
}

Eigen::MatrixXcd gram_matrix(const KernelSpec& k, const std::vector<Point>& points)
{
    for (const auto& p : points) {
        if (!k.domain().contains(p))
            throw DomainError("gram: point outside the domain " + k.domain().name());
    }
    return parallel::hermitian_matrix(points.size(), [&](std::size_t a, std::size_t b) {
        return eval(k, points[a], points[b]);
    });
}

Eigen::MatrixXcd gram_matrix_serial(const KernelSpec& k, const std::vector<Point>& points)
{
    return parallel::hermitian_matrix_serial(points.size(), [&](std::size_t a, std::size_t b) {
        return eval(k, points[a], points[b]);
    });
}

Eigen::MatrixXcd gram_matrix(const Series& s, const std::vector<Point>& points, double guard)
{
    for (const auto& p : points) {
        if (distance(p, s.center()) > guard)
            throw DomainError("gram: point outside the series guard radius");
    }
    return parallel::hermitian_matrix(points.size(), [&](std::size_t a, std::size_t b) {
        return eval(s, points[a], points[b], guard);
    });
}

PosDefVerdict gram_psd(const KernelSpec& k, const std::vector<Point>& points, double eps)
{
    if (points.empty())
        throw Error("gram_psd: need at least one point");
    auto v = matrix_psd(gram_matrix(k, points), eps, "gram");
    v.points = points;
    return v;
}

PosDefVerdict gram_psd(const HermitianSeries& s, const std::vector<Point>& points, double eps,
                       double guard)
{
    if (points.empty())
        throw Error("gram_psd: need at least one point");
    auto v = matrix_psd(gram_matrix(s.series(), points, guard), eps, "gram");
    v.points = points;
    return v;
}

PosDefVerdict taylor_psd(const HermitianSeries& s, const MultiIndex& delta, double eps)
{
    return taylor_matrix_psd(taylor_matrix(s.series(), delta), eps, "taylor " + delta.to_string());
}

PosDefVerdict taylor_psd_graded(const HermitianSeries& s, double eps, int degree)
{
    const auto h = graded_taylor_matrix(s.series(), degree);
    return taylor_matrix_psd(h, eps, "taylor |alpha|<=" + std::to_string(degree < 0 ? s.order() : degree));
}

PosDefVerdict diag_coeff_psd(std::span<const double> coeffs, double eps)
{
    if (coeffs.empty())
        throw Error("diag_coeff_psd: empty coefficient list");
    std::size_t worst = 0;
    double lmax = coeffs[0];
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] < coeffs[worst])
            worst = k;
        lmax = std::max(lmax, coeffs[k]);
    }
    PosDefVerdict v;
    v.source = "diagonal coefficients";
    v.min_value = coeffs[worst];
    v.max_value = lmax;
    v.tolerance = eps;
    v.position = worst;
    v.entry = coeffs[worst];
    if (v.min_value < -eps)
        v.verdict = Verdict::indefinite;
    else if (std::abs(v.min_value) <= eps)
        v.verdict = Verdict::degenerate;
    else
        v.verdict = Verdict::positive;
    return v;
}

PosDefVerdict cpd_check(const Eigen::MatrixXcd& g, double eps)
{
    require_hermitian(g, "cpd_check");
    const Eigen::Index n = g.rows();
    if (n < 2) {
        auto v = classify(0.0, 0.0, eps, "cpd");
        return v;
    }
    // Helmert basis of the complement of the all-ones vector.
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n - 1);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
        for (Eigen::Index r = 0; r < k; ++r)
            q(r, k - 1) = 1.0 / norm;
        q(k, k - 1) = -static_cast<double>(k) / norm;
    }
    const Eigen::MatrixXcd restricted = q.adjoint() * g * q;
    const auto sp = spectrum(restricted);
    return classify(sp.lmin, sp.lmax, eps, "cpd");
}

namespace {

// Drops rows/columns that vanish identically (to eps * scale).
TaylorMatrix prune_null(const TaylorMatrix& h, double eps)
{
    const double scale = h.entries.size() ? std::max(1.0, h.entries.cwiseAbs().maxCoeff()) : 1.0;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index r = 0; r < h.entries.rows(); ++r) {
        if (h.entries.row(r).cwiseAbs().maxCoeff() > eps * scale)
            keep.push_back(r);
    }
    TaylorMatrix out;
    out.center = h.center;
    const auto n = static_cast<Eigen::Index>(keep.size());
    out.entries.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        out.indices.push_back(h.indices[static_cast<std::size_t>(keep[static_cast<std::size_t>(a)])]);
        for (Eigen::Index b = 0; b < n; ++b)
            out.entries(a, b) = h.entries(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
    }
    return out;
}

PosDefVerdict function_verdict(const std::vector<TaylorMatrix>& blocks,
                               const std::optional<Eigen::MatrixXcd>& gram,
                               const std::vector<Point>& points, double eps)
{
    std::optional<PosDefVerdict> result;
    for (const auto& h : blocks) {
        const auto pruned = prune_null(h, eps);
        PosDefVerdict v = pruned.entries.rows() == 0 ? classify(0.0, 0.0, eps, "taylor (null)")
                                                      : taylor_matrix_psd(pruned, eps);
        result = result ? combine(*result, v) : v;
    }
    if (gram) {
        auto g = matrix_psd(*gram, eps, "gram");
        g.points = points;
        if (g.verdict == Verdict::indefinite)
            result = result ? combine(*result, g) : g;
    }
    if (!result)
        throw Error("posdef_function_check: nothing to check");
    return *result;
}

} // namespace

PosDefVerdict posdef_function_check(const HermitianSeries& s, const std::vector<MultiIndex>& deltas,
                                    const std::vector<Point>& points, double eps)
{
    std::vector<TaylorMatrix> blocks;
    if (deltas.empty())
        blocks.push_back(graded_taylor_matrix(s.series()));
    for (const auto& d : deltas)
        blocks.push_back(taylor_matrix(s.series(), d));
    std::optional<Eigen::MatrixXcd> gram;
    if (!points.empty())
        gram = gram_matrix(s.series(), points);
    return function_verdict(blocks, gram, points, eps);
}

Eigen::MatrixXcd derivative_gram_matrix(const Series& s, const std::vector<Point>& points,
                                        double guard)
{
    const std::size_t m = s.vars();
    std::vector<Series> d;
    d.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            d.push_back(mixed_derivative(s, i, j));
    }
    for (const auto& p : points) {
        if (distance(p, s.center()) > guard)
            throw DomainError("derivative gram: point outside the series guard radius");
    }
    return parallel::hermitian_matrix(points.size() * m, [&](std::size_t r, std::size_t c) {
        const std::size_t a = r / m, i = r % m;
        const std::size_t b = c / m, j = c % m;
        return eval(d[i * m + j], points[a], points[b], guard);
    });
}

PosDefVerdict derivative_function_check(const HermitianSeries& s, const std::vector<Point>& points,
                                        double eps)
{
    std::vector<TaylorMatrix> blocks{derivative_taylor_matrix(s.series())};
    std::optional<Eigen::MatrixXcd> gram;
    if (!points.empty())
        gram = derivative_gram_matrix(s.series(), points);
    return function_verdict(blocks, gram, points, eps);
}

} // namespace curvlab
