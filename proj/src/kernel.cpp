#include "curvlab/kernel.hpp"

#include "curvlab/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::string Domain::name() const
{
    switch (kind) {
    case Kind::any: return "any";
    case Kind::disc: return "disc";
    case Kind::polydisc: return "polydisc(" + std::to_string(m) + ")";
    case Kind::ball: return "ball(" + std::to_string(m) + ")";
    case Kind::matrix_ball2: return "matrix_ball(2x2)";
    }
    return "?";
}

double operator_norm_2x2(const Point& a)
{
    if (a.size() != 4)
        throw ShapeMismatch("operator_norm_2x2: need four entries");
    double frob = 0.0;
    for (const auto& x : a)
        frob += std::norm(x);
    const double det = std::abs(a[0] * a[3] - a[1] * a[2]);
    const double disc = std::max(0.0, frob * frob - 4.0 * det * det);
    return std::sqrt(0.5 * (frob + std::sqrt(disc)));
}

bool Domain::contains(const Point& p) const
{
    switch (kind) {
    case Kind::any:
        return true;
    case Kind::disc:
    case Kind::polydisc:
        if (p.size() != m)
            return false;
        for (const auto& x : p) {
            if (!(std::abs(x) < 1.0))
                return false;
        }
        return true;
    case Kind::ball: {
        if (p.size() != m)
            return false;
        double s = 0.0;
        for (const auto& x : p)
            s += std::norm(x);
        return s < 1.0;
    }
    case Kind::matrix_ball2:
        return p.size() == 4 && operator_norm_2x2(p) < 1.0;
    }
    return false;
}

bool Domain::compatible(const Domain& other) const
{
    if (kind == Kind::any || other.kind == Kind::any)
        return true;
    if (m != other.m)
        return false;
    if (kind == other.kind)
        return true;
    auto disc_like = [](Kind k) { return k == Kind::disc || k == Kind::polydisc || k == Kind::ball; };
    return m == 1 && disc_like(kind) && disc_like(other.kind);
}

KernelSpec szego_disc()
{
    return KernelSpec(node::Szego{}, Domain::disc());
}

KernelSpec szego_polydisc(std::size_t m)
{
    if (m == 0)
        throw Error("szego_poly: dimension must be positive");
    return KernelSpec(node::SzegoPolydisc{m}, Domain::polydisc(m));
}

KernelSpec drury_arveson(std::size_t m)
{
    if (m == 0)
        throw Error("da: dimension must be positive");
    return KernelSpec(node::DruryArveson{m}, Domain::ball(m));
}

KernelSpec diagonal(std::vector<double> coeffs, double tail)
{
    return KernelSpec(node::Diagonal{std::move(coeffs), tail}, Domain::disc());
}

KernelSpec det_ball_2x2()
{
    return KernelSpec(node::DetBall2{}, Domain::matrix_ball2());
}

KernelSpec constant(double c)
{
    return KernelSpec(node::Constant{c}, Domain{});
}

KernelSpec series_kernel(HermitianSeries s, Domain domain)
{
    if (domain.kind != Domain::Kind::any && domain.m != s.vars())
        throw ShapeMismatch("series kernel: domain dimension differs from the series");
    return KernelSpec(node::SeriesAtom{std::move(s)}, domain);
}

KernelSpec product(const KernelSpec& a, const KernelSpec& b)
{
    if (!a.domain().compatible(b.domain()))
        throw ShapeMismatch("domain mismatch: cannot multiply a kernel on " + a.domain().name() +
                            " by a kernel on " + b.domain().name());
    const Domain d = a.domain().kind == Domain::Kind::any ? b.domain() : a.domain();
    return KernelSpec(node::Product{std::make_shared<const KernelSpec>(a),
                                    std::make_shared<const KernelSpec>(b)},
                      d);
}

KernelSpec power(const KernelSpec& base, double t)
{
    if (!std::isfinite(t))
        throw Error("power: exponent must be finite");
    return KernelSpec(node::Power{std::make_shared<const KernelSpec>(base), t}, base.domain());
}

KernelSpec contract(const KernelSpec& inner)
{
    const auto kind = inner.domain().kind;
    if (kind == Domain::Kind::any || kind == Domain::Kind::matrix_ball2)
        throw ShapeMismatch("contract: no (1 - z conj w)-type factor for domain " +
                            inner.domain().name());
    return KernelSpec(node::Contract{std::make_shared<const KernelSpec>(inner)}, inner.domain());
}

KernelSpec reference_kernel(const Domain& d)
{
    switch (d.kind) {
    case Domain::Kind::disc: return szego_disc();
    case Domain::Kind::polydisc: return d.m == 1 ? szego_disc() : szego_polydisc(d.m);
    case Domain::Kind::ball: return d.m == 1 ? szego_disc() : drury_arveson(d.m);
    default: throw ShapeMismatch("no reference kernel for domain " + d.name());
    }
}

bool structurally_equal(const KernelSpec& a, const KernelSpec& b)
{
    if (a.node().index() != b.node().index())
        return false;
    return std::visit(
        overloaded{
            [](const node::Szego&) { return true; },
            [&](const node::SzegoPolydisc& x) { return x.m == std::get<node::SzegoPolydisc>(b.node()).m; },
            [&](const node::DruryArveson& x) { return x.m == std::get<node::DruryArveson>(b.node()).m; },
            [&](const node::Diagonal& x) {
                const auto& y = std::get<node::Diagonal>(b.node());
                return x.coeffs == y.coeffs && x.tail == y.tail;
            },
            [](const node::DetBall2&) { return true; },
            [&](const node::Constant& x) { return x.value == std::get<node::Constant>(b.node()).value; },
            [&](const node::SeriesAtom& x) {
                const auto& y = std::get<node::SeriesAtom>(b.node()).series.series();
                const auto& s = x.series.series();
                if (!s.same_shape(y))
                    return false;
                return std::equal(s.data().begin(), s.data().end(), y.data().begin());
            },
            [&](const node::Product& x) {
                const auto& y = std::get<node::Product>(b.node());
                return structurally_equal(*x.left, *y.left) && structurally_equal(*x.right, *y.right);
            },
            [&](const node::Power& x) {
                const auto& y = std::get<node::Power>(b.node());
                return x.exponent == y.exponent && structurally_equal(*x.base, *y.base);
            },
            [&](const node::Contract& x) {
                return structurally_equal(*x.inner, *std::get<node::Contract>(b.node()).inner);
            },
        },
        a.node());
}

namespace {

std::string format_real(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw Error("format_real: conversion failed");
    return std::string(buf, end);
}

void print(const KernelSpec& k, std::ostream& os, bool in_factor)
{
    std::visit(overloaded{
                   [&](const node::Szego&) { os << "szego"; },
                   [&](const node::SzegoPolydisc& x) { os << "szego_poly(" << x.m << ")"; },
                   [&](const node::DruryArveson& x) { os << "da(" << x.m << ")"; },
                   [&](const node::Diagonal& x) {
                       os << "diag([";
                       for (std::size_t i = 0; i < x.coeffs.size(); ++i)
                           os << (i ? "," : "") << format_real(x.coeffs[i]);
                       os << "]";
                       if (x.tail != 0.0)
                           os << "; tail=" << format_real(x.tail);
                       os << ")";
                   },
                   [&](const node::DetBall2&) { os << "detball2"; },
                   [&](const node::Constant& x) { os << "const(" << format_real(x.value) << ")"; },
                   [&](const node::SeriesAtom& x) {
                       os << "series(" << x.series.vars() << "," << x.series.order() << ")";
                   },
                   [&](const node::Product& x) {
                       if (in_factor)
                           os << "(";
                       print(*x.left, os, false);
                       os << " * ";
                       // Right operand of '*' is parenthesized when it is itself a product
                       // so that the left-associative parse rebuilds the same tree.
                       print(*x.right, os, true);
                       if (in_factor)
                           os << ")";
                   },
                   [&](const node::Power& x) {
                       const bool wrap = std::holds_alternative<node::Product>(x.base->node()) ||
                                         std::holds_alternative<node::Power>(x.base->node());
                       if (wrap)
                           os << "(";
                       print(*x.base, os, false);
                       if (wrap)
                           os << ")";
                       os << "^" << format_real(x.exponent);
                   },
                   [&](const node::Contract& x) {
                       os << "contract(";
                       print(*x.inner, os, false);
                       os << ")";
                   },
               },
               k.node());
}

} // namespace

std::string pretty_print(const KernelSpec& k)
{
    std::ostringstream os;
    print(k, os, false);
    return os.str();
}

// ---------------------------------------------------------------------------
// Pointwise evaluation

namespace {

void require_in_domain(const KernelSpec& k, const Point& z, const Point& w)
{
    const auto& d = k.domain();
    if (!d.contains(z) || !d.contains(w))
        throw DomainError("point outside the domain " + d.name());
    if (z.size() != w.size())
        throw ShapeMismatch("eval: z and w have different dimensions");
}

Complex inner(const Point& z, const Point& w)
{
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < z.size(); ++i)
        s += z[i] * std::conj(w[i]);
    return s;
}

// Z W^* for 2x2 matrices stored row-major.
std::array<Complex, 4> times_adjoint(const Point& Z, const Point& W)
{
    std::array<Complex, 4> M{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Complex s(0.0, 0.0);
            for (int k = 0; k < 2; ++k)
                s += Z[2 * i + k] * std::conj(W[2 * j + k]);
            M[2 * i + j] = s;
        }
    }
    return M;
}

Complex diagonal_value(const node::Diagonal& d, Complex q)
{
    Complex poly(0.0, 0.0);
    for (std::size_t k = d.coeffs.size(); k-- > 0;)
        poly = poly * q + d.coeffs[k];
    if (d.tail != 0.0)
        poly += d.tail * std::pow(q, static_cast<int>(d.coeffs.size())) / (1.0 - q);
    return poly;
}

Complex principal_log(Complex v, const char* what)
{
    if (!(v.real() > 0.0))
        throw BranchError(std::string("principal log of ") + what +
                          " kernel value with non-positive real part");
    return std::log(v);
}

Complex eval_node(const KernelSpec& k, const Point& z, const Point& w);

Complex log_node(const KernelSpec& k, const Point& z, const Point& w)
{
    return std::visit(
        overloaded{
            [&](const node::Szego&) { return -std::log(1.0 - z[0] * std::conj(w[0])); },
            [&](const node::SzegoPolydisc& x) {
                Complex s(0.0, 0.0);
                for (std::size_t i = 0; i < x.m; ++i)
                    s -= std::log(1.0 - z[i] * std::conj(w[i]));
                return s;
            },
            [&](const node::DruryArveson&) { return -std::log(1.0 - inner(z, w)); },
            [&](const node::Diagonal& d) {
                return principal_log(diagonal_value(d, z[0] * std::conj(w[0])), "diagonal");
            },
            [&](const node::DetBall2&) {
                // det(I - M) = (1 - l1)(1 - l2) with |l_i| < 1; summing the two
                // principal logs follows the branch continuously from M = 0.
                const auto M = times_adjoint(z, w);
                const Complex tr = M[0] + M[3];
                const Complex det = M[0] * M[3] - M[1] * M[2];
                const Complex root = std::sqrt(0.25 * tr * tr - det);
                const Complex l1 = 0.5 * tr + root;
                const Complex l2 = 0.5 * tr - root;
                return -(std::log(1.0 - l1) + std::log(1.0 - l2));
            },
            [&](const node::Constant& c) { return principal_log(Complex(c.value, 0.0), "constant"); },
            [&](const node::SeriesAtom& s) { return principal_log(eval(s.series.series(), z, w), "series"); },
            [&](const node::Product& p) { return log_node(*p.left, z, w) + log_node(*p.right, z, w); },
            [&](const node::Power& p) { return p.exponent * log_node(*p.base, z, w); },
            [&](const node::Contract& c) {
                const auto& d = k.domain();
                Complex f(0.0, 0.0);
                if (d.kind == Domain::Kind::polydisc) {
                    for (std::size_t i = 0; i < d.m; ++i)
                        f += std::log(1.0 - z[i] * std::conj(w[i]));
                } else {
                    f = std::log(1.0 - inner(z, w));
                }
                return f + log_node(*c.inner, z, w);
            },
        },
        k.node());
}

Complex eval_node(const KernelSpec& k, const Point& z, const Point& w)
{
    return std::visit(
        overloaded{
            [&](const node::Szego&) { return 1.0 / (1.0 - z[0] * std::conj(w[0])); },
            [&](const node::SzegoPolydisc& x) {
                Complex v(1.0, 0.0);
                for (std::size_t i = 0; i < x.m; ++i)
                    v /= (1.0 - z[i] * std::conj(w[i]));
                return v;
            },
            [&](const node::DruryArveson&) { return 1.0 / (1.0 - inner(z, w)); },
            [&](const node::Diagonal& d) { return diagonal_value(d, z[0] * std::conj(w[0])); },
            [&](const node::DetBall2&) {
                const auto M = times_adjoint(z, w);
                return 1.0 / ((1.0 - M[0]) * (1.0 - M[3]) - M[1] * M[2]);
            },
            [&](const node::Constant& c) { return Complex(c.value, 0.0); },
            [&](const node::SeriesAtom& s) { return eval(s.series.series(), z, w); },
            [&](const node::Product& p) { return eval_node(*p.left, z, w) * eval_node(*p.right, z, w); },
            [&](const node::Power& p) { return std::exp(p.exponent * log_node(*p.base, z, w)); },
            [&](const node::Contract& c) {
                const auto& d = k.domain();
                Complex f(1.0, 0.0);
                if (d.kind == Domain::Kind::polydisc) {
                    for (std::size_t i = 0; i < d.m; ++i)
                        f *= (1.0 - z[i] * std::conj(w[i]));
                } else {
                    f = 1.0 - inner(z, w);
                }
                return f * eval_node(*c.inner, z, w);
            },
        },
        k.node());
}

} // namespace

Complex eval(const KernelSpec& k, const Point& z, const Point& w)
{
    require_in_domain(k, z, w);
    return eval_node(k, z, w);
}

Complex log_eval(const KernelSpec& k, const Point& z, const Point& w)
{
    require_in_domain(k, z, w);
    return log_node(k, z, w);
}

// ---------------------------------------------------------------------------
// Taylor expansion

namespace {

struct Expander {
    std::size_t m;
    int order;
    Point center;

    Series one() const { return Series::constant(m, order, center, 1.0); }

    // z_i as a series: c_i + (z_i - c_i)
    Series z(std::size_t i) const
    {
        Series s = Series::holomorphic_coordinate(m, order, center, i);
        s.at(0, 0) = center[i];
        return s;
    }

    // conj(w_i): conj(c_i) + conj(w_i - c_i)
    Series wbar(std::size_t i) const
    {
        Series s = Series::antiholomorphic_coordinate(m, order, center, i);
        s.at(0, 0) = std::conj(center[i]);
        return s;
    }

    Series zw(std::size_t i) const { return mul(z(i), wbar(i)); }

    Series inner() const
    {
        Series s(m, order, center);
        for (std::size_t i = 0; i < m; ++i)
            s = add(s, zw(i));
        return s;
    }

    Series contract_factor(const Domain& d) const
    {
        if (d.kind == Domain::Kind::polydisc) {
            Series f = one();
            for (std::size_t i = 0; i < m; ++i)
                f = mul(f, sub(one(), zw(i)));
            return f;
        }
        return sub(one(), inner());
    }

    Series det_ball() const
    {
        // A = I - Z W^*, variables are Z's entries row-major.
        auto entry = [&](int i, int j) {
            Series s(m, order, center);
            for (int k = 0; k < 2; ++k)
                s = add(s, mul(z(static_cast<std::size_t>(2 * i + k)),
                               wbar(static_cast<std::size_t>(2 * j + k))));
            return i == j ? sub(one(), s) : scale(s, -1.0);
        };
        const Series det = sub(mul(entry(0, 0), entry(1, 1)), mul(entry(0, 1), entry(1, 0)));
        return invert(det);
    }

    Series expand(const KernelSpec& k) const
    {
        return std::visit(
            overloaded{
                [&](const node::Szego&) { return invert(sub(one(), zw(0))); },
                [&](const node::SzegoPolydisc& x) {
                    Series s = one();
                    for (std::size_t i = 0; i < x.m; ++i)
                        s = mul(s, invert(sub(one(), zw(i))));
                    return s;
                },
                [&](const node::DruryArveson&) { return invert(sub(one(), inner())); },
                [&](const node::Diagonal& d) {
                    const Series q = zw(0);
                    Series poly(m, order, center);
                    for (std::size_t k = d.coeffs.size(); k-- > 0;)
                        poly = add(mul(poly, q), Series::constant(m, order, center, d.coeffs[k]));
                    if (d.tail != 0.0) {
                        Series tail = scale(invert(sub(one(), q)), d.tail);
                        for (std::size_t k = 0; k < d.coeffs.size(); ++k)
                            tail = mul(tail, q);
                        poly = add(poly, tail);
                    }
                    return poly;
                },
                [&](const node::DetBall2&) { return det_ball(); },
                [&](const node::Constant& c) { return Series::constant(m, order, center, c.value); },
                [&](const node::SeriesAtom& s) {
                    const auto& src = s.series.series();
                    if (src.center() != center)
                        throw ShapeMismatch("series kernel can only be expanded at its own center");
                    if (src.order() < order)
                        throw OrderError("series kernel has order " + std::to_string(src.order()) +
                                         ", requested " + std::to_string(order));
                    return truncate(src, order);
                },
                [&](const node::Product& p) { return mul(expand(*p.left), expand(*p.right)); },
                [&](const node::Power& p) { return real_power(expand(*p.base), p.exponent); },
                [&](const node::Contract& c) {
                    return mul(contract_factor(k.domain()), expand(*c.inner));
                },
            },
            k.node());
    }
};

} // namespace

HermitianSeries taylor_expand(const KernelSpec& k, const Point& w0, int order)
{
    if (order < 0 || order > kMaxOrder)
        throw OrderError("taylor_expand: order must lie in [0, " + std::to_string(kMaxOrder) + "]");
    const auto& d = k.domain();
    if (d.kind != Domain::Kind::any && w0.size() != d.m)
        throw ShapeMismatch("taylor_expand: center has the wrong dimension for " + d.name());
    if (!d.contains(w0))
        throw DomainError("taylor_expand: center is not an interior point of " + d.name());
    if (w0.empty())
        throw ShapeMismatch("taylor_expand: empty center");
    Expander e{w0.size(), order, w0};
    Series s = e.expand(k);
    // Products of many factors accumulate relative noise of a few ulps.
    return HermitianSeries(std::move(s), 1e-10);
}

HermitianSeries normalize_at(const KernelSpec& k, const Point& w0, int order)
{
    return normalize(taylor_expand(k, w0, order));
}

KernelJet derivatives(const KernelSpec& k, const Point& w)
{
    const HermitianSeries jet = taylor_expand(k, w, 1);
    const std::size_t m = w.size();
    KernelJet out;
    out.value = jet.constant_term();
    out.grad.resize(m);
    out.hess.assign(m, std::vector<Complex>(m));
    const MultiIndex zero(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto ei = MultiIndex::unit(m, i);
        out.grad[i] = jet.coeff(ei, zero);
        for (std::size_t j = 0; j < m; ++j)
            out.hess[i][j] = jet.coeff(ei, MultiIndex::unit(m, j));
    }
    return out;
}

std::optional<std::vector<double>> diagonal_coefficients(const KernelSpec& k, int order)
{
    if (!k.domain().compatible(Domain::disc()))
        throw ShapeMismatch("diagonal coefficients need a one-variable kernel");
    const HermitianSeries s = taylor_expand(k, Point{0.0}, order);
    const double scale = std::max(1.0, s.series().max_abs());
    if (off_diagonal_magnitude(s.series()) > 1e-12 * scale)
        return std::nullopt;
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    for (std::size_t n = 0; n < c.size(); ++n)
        c[n] = s.series().at(n, n).real();
    return c;
}

} // namespace curvlab
