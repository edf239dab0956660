#pragma once

// Data-parallel kernels, each with a serial reference used by the tests and
// the benchmark.

#include "curvlab/multi_index.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>

namespace curvlab::parallel {

using Complex = std::complex<double>;

// out(I, J) = sum_{P <= I, Q <= J} s(P, Q) t(I - P, J - Q), all n x n row-major.
void cauchy_product(const MonomialBasis& basis, std::span<const Complex> s,
                    std::span<const Complex> t, std::span<Complex> out);
// Naive scatter over all term pairs; O(nnz(s) * n^2).
void cauchy_product_serial(const MonomialBasis& basis, std::span<const Complex> s,
                           std::span<const Complex> t, std::span<Complex> out);

// Hermitian matrix G(a, b) = f(a, b); the upper triangle is evaluated and
// mirrored.
template <class F>
Eigen::MatrixXcd hermitian_matrix(std::size_t n, F&& f)
{
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const auto sn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long a = 0; a < sn; ++a) {
        for (long b = a; b < sn; ++b) {
            const Complex v = f(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            g(a, b) = v;
            g(b, a) = std::conj(v);
        }
    }
    for (long a = 0; a < sn; ++a)
        g(a, a) = Complex(g(a, a).real(), 0.0);
    return g;
}

template <class F>
Eigen::MatrixXcd hermitian_matrix_serial(std::size_t n, F&& f)
{
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const auto sn = static_cast<long>(n);
    for (long a = 0; a < sn; ++a) {
        for (long b = a; b < sn; ++b) {
            const Complex v = f(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            g(a, b) = v;
            g(b, a) = std::conj(v);
        }
    }
    for (long a = 0; a < sn; ++a)
        g(a, a) = Complex(g(a, a).real(), 0.0);
    return g;
}

int max_threads();

} // namespace curvlab::parallel
