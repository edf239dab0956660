#include "curvlab/series.hpp"

#include "curvlab/error.hpp"
#include "curvlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvlab {

Series::Series(std::size_t m, int order, Point center)
    : basis_(MonomialBasis::get(m, order)), center_(std::move(center))
{
    if (center_.size() != m)
        throw ShapeMismatch("Series: center has " + std::to_string(center_.size()) +
                            " coordinates, expected " + std::to_string(m));
    coeffs_.assign(basis_->size() * basis_->size(), Complex(0.0, 0.0));
}

Series Series::constant(std::size_t m, int order, Point center, Complex c)
{
    Series s(m, order, std::move(center));
    s.coeffs_[0] = c;
    return s;
}

Series Series::holomorphic_coordinate(std::size_t m, int order, Point center, std::size_t i)
{
    Series s(m, order, std::move(center));
    if (order >= 1)
        s.set(MultiIndex::unit(m, i), MultiIndex(m), 1.0);
    return s;
}

Series Series::antiholomorphic_coordinate(std::size_t m, int order, Point center, std::size_t i)
{
    Series s(m, order, std::move(center));
    if (order >= 1)
        s.set(MultiIndex(m), MultiIndex::unit(m, i), 1.0);
    return s;
}

Complex Series::coeff(const MultiIndex& I, const MultiIndex& J) const
{
    const auto r = basis_->find(I);
    const auto c = basis_->find(J);
    if (r == MonomialBasis::npos || c == MonomialBasis::npos)
        return {0.0, 0.0};
    return at(r, c);
}

void Series::set(const MultiIndex& I, const MultiIndex& J, Complex value)
{
    at(basis_->index_of(I), basis_->index_of(J)) = value;
}

double Series::max_abs() const
{
    double m = 0.0;
    for (const auto& c : coeffs_)
        m = std::max(m, std::abs(c));
    return m;
}

bool Series::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return c == Complex(0.0, 0.0); });
}

bool Series::same_shape(const Series& other) const
{
    return vars() == other.vars() && order() == other.order() && center_ == other.center_;
}

void require_same_shape(const Series& s, const Series& t, const char* op)
{
    if (s.vars() != t.vars())
        throw ShapeMismatch(std::string(op) + ": variable counts differ");
    if (s.center() != t.center())
        throw ShapeMismatch(std::string(op) + ": expansion centers differ");
}

Series truncate(const Series& s, int order)
{
    if (order > s.order())
        throw OrderError("truncate: target order exceeds the series order");
    if (order == s.order())
        return s;
    Series r(s.vars(), order, s.center());
    // Lower-order bases are prefixes of higher-order ones.
    const std::size_t n = r.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            r.at(i, j) = s.at(i, j);
    }
    return r;
}

namespace {

std::pair<Series, Series> common_order(const Series& s, const Series& t, const char* op)
{
    require_same_shape(s, t, op);
    const int order = std::min(s.order(), t.order());
    return {truncate(s, order), truncate(t, order)};
}

template <class Op>
Series zip(const Series& s, const Series& t, const char* name, Op op)
{
    auto [a, b] = common_order(s, t, name);
    auto out = a.data();
    auto in = b.data();
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = op(out[k], in[k]);
    return a;
}

} // namespace

Series add(const Series& s, const Series& t)
{
    return zip(s, t, "add", [](Complex x, Complex y) { return x + y; });
}

Series sub(const Series& s, const Series& t)
{
    return zip(s, t, "sub", [](Complex x, Complex y) { return x - y; });
}

Series scale(const Series& s, Complex c)
{
    Series r(s);
    for (auto& x : r.data())
        x *= c;
    return r;
}

Series mul(const Series& s, const Series& t)
{
    auto [a, b] = common_order(s, t, "mul");
    Series r(a.vars(), a.order(), a.center());
    parallel::cauchy_product(a.basis(), a.data(), b.data(), r.data());
    return r;
}

Series mul_serial(const Series& s, const Series& t)
{
    auto [a, b] = common_order(s, t, "mul");
    Series r(a.vars(), a.order(), a.center());
    parallel::cauchy_product_serial(a.basis(), a.data(), b.data(), r.data());
    return r;
}

Series invert(const Series& s)
{
    const Complex a00 = s.constant_term();
    if (std::abs(a00) <= 1e-12)
        throw BadConstantTerm("invert: constant term vanishes");

    // b_{IJ} = -(1/a_00) sum_{(P,Q) != 0} a_{PQ} b_{I-P, J-Q}, by total degree.
    const auto& basis = s.basis();
    const int N = s.order();
    Series b(s.vars(), N, s.center());
    b.at(0, 0) = 1.0 / a00;
    for (int total = 1; total <= 2 * N; ++total) {
        for (int dr = std::max(0, total - N); dr <= std::min(N, total); ++dr) {
            const int dc = total - dr;
            const auto r_lo = static_cast<long>(basis.degree_begin(dr));
            const auto r_hi = static_cast<long>(basis.degree_begin(dr + 1));
            const std::size_t c_lo = basis.degree_begin(dc);
            const std::size_t c_hi = basis.degree_begin(dc + 1);
#pragma omp parallel for schedule(dynamic)
            for (long row = r_lo; row < r_hi; ++row) {
                const auto ur = static_cast<std::size_t>(row);
                for (std::size_t col = c_lo; col < c_hi; ++col) {
                    Complex acc(0.0, 0.0);
                    for (const auto& rs : basis.splits(ur)) {
                        for (const auto& cs : basis.splits(col)) {
                            if (rs.left == 0 && cs.left == 0)
                                continue;
                            const Complex a = s.at(rs.left, cs.left);
                            if (a == Complex(0.0, 0.0))
                                continue;
                            acc += a * b.at(rs.right, cs.right);
                        }
                    }
                    b.at(ur, col) = -acc / a00;
                }
            }
        }
    }
    return b;
}

namespace {

void require_positive_constant(const Series& s, const char* op)
{
    const Complex a00 = s.constant_term();
    if (!(a00.real() > 0.0))
        throw BadConstantTerm(std::string(op) + ": constant term must be positive, got " +
                              std::to_string(a00.real()));
    if (std::abs(a00.imag()) > 1e-12 * std::abs(a00))
        throw BadConstantTerm(std::string(op) + ": constant term is not real");
}

} // namespace

namespace {

// Euler operator: a_{IJ} -> (|I| + |J|) a_{IJ}. It is a derivation for the
// Cauchy product, which gives stable recurrences for log and exp.
Series euler(const Series& s)
{
    Series r(s);
    const auto& basis = s.basis();
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.dim(); ++j)
            r.at(i, j) *= static_cast<double>(basis.degree(i) + basis.degree(j));
    return r;
}

} // namespace

Series log(const Series& s)
{
    require_positive_constant(s, "log");
    const double a00 = s.constant_term().real();

    // E log s = s^{-1} E s, and E^{-1} is a division by the total degree.
    Series r = mul(invert(s), euler(s));
    const auto& basis = s.basis();
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = 0; j < r.dim(); ++j)
            if (i != 0 || j != 0)
                r.at(i, j) /= static_cast<double>(basis.degree(i) + basis.degree(j));
    r.at(0, 0) = std::log(a00);
    return r;
}

Series exp(const Series& s)
{
    const Complex a00 = s.constant_term();
    const Series es = euler(s);

    // E f = f E s with f_00 = 1, solved by total degree.
    const auto& basis = s.basis();
    const int N = s.order();
    Series f(s.vars(), N, s.center());
    f.at(0, 0) = 1.0;
    for (int total = 1; total <= 2 * N; ++total) {
        for (int dr = std::max(0, total - N); dr <= std::min(N, total); ++dr) {
            const int dc = total - dr;
            const auto r_lo = static_cast<long>(basis.degree_begin(dr));
            const auto r_hi = static_cast<long>(basis.degree_begin(dr + 1));
            const std::size_t c_lo = basis.degree_begin(dc);
            const std::size_t c_hi = basis.degree_begin(dc + 1);
#pragma omp parallel for schedule(dynamic)
            for (long row = r_lo; row < r_hi; ++row) {
                const auto ur = static_cast<std::size_t>(row);
                for (std::size_t col = c_lo; col < c_hi; ++col) {
                    Complex acc(0.0, 0.0);
                    for (const auto& rs : basis.splits(ur)) {
                        for (const auto& cs : basis.splits(col)) {
                            const Complex a = es.at(rs.left, cs.left);
                            if (a == Complex(0.0, 0.0))
                                continue;
                            acc += a * f.at(rs.right, cs.right);
                        }
                    }
                    f.at(ur, col) = acc / static_cast<double>(total);
                }
            }
        }
    }
    return scale(f, std::exp(a00));
}

Series real_power(const Series& s, double t)
{
    if (t == 0.0) {
        require_positive_constant(s, "real_power");
        return Series::constant(s.vars(), s.order(), s.center(), 1.0);
    }
    return exp(scale(log(s), t));
}

Series mixed_derivative(const Series& s, std::size_t i, std::size_t j)
{
    if (i >= s.vars() || j >= s.vars())
        throw Error("mixed_derivative: variable index out of range");
    if (s.order() < 1)
        throw OrderError("mixed_derivative: order-0 series has no derivative data");
    const auto& basis = s.basis();
    Series r(s.vars(), s.order() - 1, s.center());
    const std::size_t n = r.dim();
    for (std::size_t row = 0; row < n; ++row) {
        const std::size_t up_row = basis.raise(row, i);
        const double fi = basis[row][i] + 1;
        for (std::size_t col = 0; col < n; ++col) {
            const std::size_t up_col = basis.raise(col, j);
            const double fj = basis[col][j] + 1;
            r.at(row, col) = fi * fj * s.at(up_row, up_col);
        }
    }
    return r;
}

Series adjoint(const Series& s)
{
    Series r(s.vars(), s.order(), s.center());
    const std::size_t n = s.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            r.at(i, j) = std::conj(s.at(j, i));
    }
    return r;
}

double hermitian_defect(const Series& s)
{
    double d = 0.0;
    const std::size_t n = s.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j)
            d = std::max(d, std::abs(s.at(i, j) - std::conj(s.at(j, i))));
    }
    return d;
}

Series holomorphic_part(const Series& s)
{
    Series r(s.vars(), s.order(), s.center());
    for (std::size_t i = 0; i < s.dim(); ++i)
        r.at(i, 0) = s.at(i, 0);
    return r;
}

Series antiholomorphic_part(const Series& s)
{
    Series r(s.vars(), s.order(), s.center());
    for (std::size_t j = 0; j < s.dim(); ++j)
        r.at(0, j) = s.at(0, j);
    return r;
}

Series mixed_part(const Series& s)
{
    Series r(s);
    for (std::size_t k = 0; k < s.dim(); ++k) {
        r.at(k, 0) = 0.0;
        r.at(0, k) = 0.0;
    }
    return r;
}

double off_diagonal_magnitude(const Series& s)
{
    double d = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
            if (i != j)
                d = std::max(d, std::abs(s.at(i, j)));
        }
    }
    return d;
}

double distance(const Point& a, const Point& b)
{
    if (a.size() != b.size())
        throw ShapeMismatch("distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += std::norm(a[k] - b[k]);
    return std::sqrt(s);
}

namespace {

// Values of (p - c)^I for every monomial I of the basis.
std::vector<Complex> monomial_values(const MonomialBasis& basis, const Point& p, const Point& c)
{
    std::vector<Complex> v(basis.size());
    v[0] = 1.0;
    for (std::size_t k = 1; k < basis.size(); ++k) {
        for (std::size_t var = 0; var < basis.vars(); ++var) {
            const std::size_t lo = basis.lower(k, var);
            if (lo != MonomialBasis::npos) {
                v[k] = v[lo] * (p[var] - c[var]);
                break;
            }
        }
    }
    return v;
}

} // namespace

Complex eval(const Series& s, const Point& z, const Point& w, double guard)
{
    if (z.size() != s.vars() || w.size() != s.vars())
        throw ShapeMismatch("eval: point dimension does not match the series");
    if (distance(z, s.center()) > guard || distance(w, s.center()) > guard)
        throw DomainError("eval: point outside the guard radius " + std::to_string(guard) +
                          " around the expansion center");
    const auto zu = monomial_values(s.basis(), z, s.center());
    const auto wv = monomial_values(s.basis(), w, s.center());
    Complex total(0.0, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Complex row(0.0, 0.0);
        for (std::size_t j = 0; j < s.dim(); ++j)
            row += s.at(i, j) * std::conj(wv[j]);
        total += zu[i] * row;
    }
    return total;
}

HermitianSeries::HermitianSeries(Series s, double rel_tol) : s_(std::move(s))
{
    const double scale = std::max(1.0, s_.max_abs());
    const double defect = hermitian_defect(s_);
    if (defect > rel_tol * scale)
        throw HermitianViolation("series violates a_IJ = conj(a_JI) by " + std::to_string(defect));
    const std::size_t n = s_.dim();
    for (std::size_t i = 0; i < n; ++i) {
        s_.at(i, i) = Complex(s_.at(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (s_.at(i, j) + std::conj(s_.at(j, i)));
            s_.at(i, j) = avg;
            s_.at(j, i) = std::conj(avg);
        }
    }
}

HermitianSeries add(const HermitianSeries& s, const HermitianSeries& t)
{
    return HermitianSeries(add(s.series(), t.series()));
}

HermitianSeries mul(const HermitianSeries& s, const HermitianSeries& t)
{
    return HermitianSeries(mul(s.series(), t.series()));
}

HermitianSeries invert(const HermitianSeries& s)
{
    return HermitianSeries(invert(s.series()));
}

HermitianSeries log(const HermitianSeries& s)
{
    return HermitianSeries(log(s.series()));
}

HermitianSeries exp(const HermitianSeries& s)
{
    return HermitianSeries(exp(s.series()));
}

HermitianSeries real_power(const HermitianSeries& s, double t)
{
    return HermitianSeries(real_power(s.series(), t));
}

Series mixed_derivative(const HermitianSeries& s, std::size_t i, std::size_t j)
{
    return mixed_derivative(s.series(), i, j);
}

double diagonal_eval(const HermitianSeries& s, const Point& w, double guard)
{
    return eval(s.series(), w, w, guard).real();
}

HermitianSeries normalize(const HermitianSeries& s)
{
    const double a00 = s.constant_term();
    if (!(a00 > 1e-12))
        throw BadConstantTerm("normalize: kernel does not have a positive value at the center");
    const Series phi = holomorphic_part(s.series());
    const Series phi_bar = antiholomorphic_part(s.series());
    Series k0 = mul(mul(invert(phi), s.series()), invert(phi_bar));
    k0 = scale(k0, a00);
    // Exact zero pattern; the products above only leave rounding noise there.
    k0.at(0, 0) = 1.0;
    for (std::size_t k = 1; k < k0.dim(); ++k) {
        k0.at(k, 0) = 0.0;
        k0.at(0, k) = 0.0;
    }
    return HermitianSeries(std::move(k0));
}

HermitianSeries diagonal_series(std::span<const double> coeffs, int order)
{
    Series s(1, order, Point{0.0});
    for (std::size_t n = 0; n < coeffs.size() && static_cast<int>(n) <= order; ++n)
        s.at(n, n) = coeffs[n];
    return HermitianSeries(std::move(s));
}

} // namespace curvlab
