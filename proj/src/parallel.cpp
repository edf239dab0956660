#include "curvlab/parallel.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curvlab::parallel {

namespace {

std::vector<char> nonzero_rows(std::span<const Complex> a, std::size_t n)
{
    std::vector<char> flag(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (a[r * n + c] != Complex(0.0, 0.0)) {
                flag[r] = 1;
                break;
            }
        }
    }
    return flag;
}

// One output row of the product: gathered over the splits of I, scattered
// along J from the nonzero entries of s only. Rows never share output.
inline void product_row(const MonomialBasis& basis, std::size_t row, std::span<const Complex> s,
                        std::span<const Complex> t, const std::vector<char>& s_rows,
                        const std::vector<char>& t_rows, std::span<Complex> out)
{
    const std::size_t n = basis.size();
    Complex* dst = out.data() + row * n;
    std::fill(dst, dst + n, Complex(0.0, 0.0));
    for (const auto& rs : basis.splits(row)) {
        if (!s_rows[rs.left] || !t_rows[rs.right])
            continue;
        const Complex* srow = s.data() + rs.left * n;
        const Complex* trow = t.data() + rs.right * n;
        for (std::size_t q = 0; q < n; ++q) {
            const Complex a = srow[q];
            if (a == Complex(0.0, 0.0))
                continue;
            for (const auto& sh : basis.shifts(q))
                dst[sh.sum] += a * trow[sh.other];
        }
    }
}

} // namespace

void cauchy_product(const MonomialBasis& basis, std::span<const Complex> s,
                    std::span<const Complex> t, std::span<Complex> out)
{
    const std::size_t n = basis.size();
    const auto s_rows = nonzero_rows(s, n);
    const auto t_rows = nonzero_rows(t, n);
    const auto sn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long row = 0; row < sn; ++row)
        product_row(basis, static_cast<std::size_t>(row), s, t, s_rows, t_rows, out);
}

void cauchy_product_serial(const MonomialBasis& basis, std::span<const Complex> s,
                           std::span<const Complex> t, std::span<Complex> out)
{
    // Plain scatter over all pairs of stored terms.
    const std::size_t n = basis.size();
    std::vector<std::size_t> sum(n * n, MonomialBasis::npos);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            sum[a * n + b] = basis.find(basis[a] + basis[b]);
    }
    std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const Complex a = s[p * n + q];
            if (a == Complex(0.0, 0.0))
                continue;
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t row = sum[p * n + r];
                if (row == MonomialBasis::npos)
                    continue;
                for (std::size_t c = 0; c < n; ++c) {
                    const std::size_t col = sum[q * n + c];
                    if (col == MonomialBasis::npos)
                        continue;
                    out[row * n + col] += a * t[r * n + c];
                }
            }
        }
    }
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace curvlab::parallel
