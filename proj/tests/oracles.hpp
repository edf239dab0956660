#pragma once

// Independent reference computations. Nothing here calls into the series
// algebra of the library.

#include "curvlab/kernel.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// (t)_n / n!, the coefficient of u^n in (1 - u)^{-t}.
inline double rising_binomial(double t, int n)
{
    double c = 1.0;
    for (int k = 0; k < n; ++k)
        c *= (t + k) / (k + 1);
    return c;
}

// Coefficient of u^n in (1 - u)^t.
inline double binomial_series(double t, int n)
{
    double c = 1.0;
    for (int k = 0; k < n; ++k)
        c *= -(t - k) / (k + 1);
    return c;
}

// Sparse polynomial in z_1..z_m, conj(w_1)..conj(w_m); exponent vectors have
// length 2m (z part first).
using Poly = std::map<std::vector<int>, Complex>;

inline int z_degree(const std::vector<int>& e)
{
    int d = 0;
    for (std::size_t k = 0; k < e.size() / 2; ++k)
        d += e[k];
    return d;
}

inline int w_degree(const std::vector<int>& e)
{
    int d = 0;
    for (std::size_t k = e.size() / 2; k < e.size(); ++k)
        d += e[k];
    return d;
}

inline Poly poly_mul(const Poly& a, const Poly& b, int order)
{
    Poly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] = ea[k] + eb[k];
            if (z_degree(e) > order || w_degree(e) > order)
                continue;
            out[e] += ca * cb;
        }
    }
    return out;
}

// 1 / (1 - x) for x without constant term, truncated.
inline Poly geometric(const Poly& x, int order)
{
    Poly one{{std::vector<int>(x.begin()->first.size(), 0), 1.0}};
    Poly sum = one, power = one;
    for (int k = 1; k <= 2 * order; ++k) {
        power = poly_mul(power, x, order);
        if (power.empty())
            break;
        for (const auto& [e, c] : power)
            sum[e] += c;
    }
    return sum;
}

// det(I - Z W^*)^{-1} for 2x2 matrices, entries row-major, via
// det(I - M) = 1 - tr M + det M and the geometric series.
inline Poly detball_series(int order)
{
    auto mono = [](std::initializer_list<int> e) { return std::vector<int>(e); };
    Poly x;
    // tr(Z W^*) = sum z_a conj(w_a)
    for (int a = 0; a < 4; ++a) {
        std::vector<int> e(8, 0);
        e[static_cast<std::size_t>(a)] = 1;
        e[static_cast<std::size_t>(a + 4)] = 1;
        x[e] += 1.0;
    }
    // -det Z conj(det W) = -(z1 z4 - z2 z3)(conj w1 conj w4 - conj w2 conj w3)
    x[mono({1, 0, 0, 1, 1, 0, 0, 1})] -= 1.0;
    x[mono({1, 0, 0, 1, 0, 1, 1, 0})] += 1.0;
    x[mono({0, 1, 1, 0, 1, 0, 0, 1})] += 1.0;
    x[mono({0, 1, 1, 0, 0, 1, 1, 0})] -= 1.0;
    return geometric(x, order);
}

// -d^2/dw_i dconj(w_j) of log K(w, w) by central differences on the real
// function f(x, y) = log K(x + iy, x + iy):
// d_i dbar_j = (f_{x_i x_j} + f_{y_i y_j} + i (f_{x_i y_j} - f_{y_i x_j})) / 4.
inline std::vector<std::vector<Complex>> fd_curvature(const std::function<double(const curvlab::Point&)>& f,
                                                      const curvlab::Point& w, double h)
{
    const std::size_t m = w.size();
    auto shifted = [&](std::size_t a, double da, std::size_t b, double db) {
        curvlab::Point p = w;
        auto bump = [&](std::size_t v, double d) {
            if (v < m)
                p[v] += Complex(d, 0.0);
            else
                p[v - m] += Complex(0.0, d);
        };
        bump(a, da);
        bump(b, db);
        return f(p);
    };
    auto second = [&](std::size_t a, std::size_t b) {
        return (shifted(a, h, b, h) - shifted(a, h, b, -h) - shifted(a, -h, b, h) + shifted(a, -h, b, -h)) /
               (4.0 * h * h);
    };
    std::vector<std::vector<Complex>> c(m, std::vector<Complex>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double xx = second(i, j), yy = second(i + m, j + m);
            const double xy = second(i, j + m), yx = second(i + m, j);
            c[i][j] = -Complex(xx + yy, xy - yx) / 4.0;
        }
    }
    return c;
}

// Curvature of the one-variable diagonal kernel sum a_n r^n at r = |w|^2:
// -(d/dr (r K'/K)) with K' = dK/dr.
inline double diagonal_curvature(const std::vector<double>& a, double tail, double r)
{
    double K = 0, K1 = 0, K2 = 0;
    const int n_terms = 4000;
    for (int n = 0; n < n_terms; ++n) {
        const double c = n < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(n)] : tail;
        const double rn = std::pow(r, n);
        K += c * rn;
        if (n >= 1)
            K1 += c * n * std::pow(r, n - 1);
        if (n >= 2)
            K2 += c * n * (n - 1) * std::pow(r, n - 2);
    }
    // d dbar log K(|w|^2) = (K' + r K'') / K - r K'^2 / K^2
    return -((K1 + r * K2) / K - r * K1 * K1 / (K * K));
}

} // namespace oracle
