#pragma once

#include "curvlab/multi_index.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace curvlab {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

inline constexpr int kDefaultOrder = 8;
inline constexpr int kMaxOrder = 12;
inline constexpr double kDefaultGuardRadius = 0.95;

// Truncated power series
//
//     sum_{|I| <= N, |J| <= N} a_{IJ} (z - c)^I conj(w - c)^J
//
// in m holomorphic and m anti-holomorphic variables. Coefficients are stored
// densely as an n x n row-major block, n = number of monomials of degree <= N;
// row = holomorphic exponent I, column = anti-holomorphic exponent J.
class Series {
public:
    Series(std::size_t m, int order, Point center);

    static Series constant(std::size_t m, int order, Point center, Complex c);
    // z_i - c_i
    static Series holomorphic_coordinate(std::size_t m, int order, Point center, std::size_t i);
    // conj(w_i - c_i)
    static Series antiholomorphic_coordinate(std::size_t m, int order, Point center, std::size_t i);

    std::size_t vars() const { return basis_->vars(); }
    int order() const { return basis_->order(); }
    const Point& center() const { return center_; }
    const MonomialBasis& basis() const { return *basis_; }
    std::size_t dim() const { return basis_->size(); }

    // Zero for exponents beyond the order.
    Complex coeff(const MultiIndex& I, const MultiIndex& J) const;
    void set(const MultiIndex& I, const MultiIndex& J, Complex value);

    Complex at(std::size_t row, std::size_t col) const { return coeffs_[row * dim() + col]; }
    Complex& at(std::size_t row, std::size_t col) { return coeffs_[row * dim() + col]; }
    Complex constant_term() const { return coeffs_[0]; }

    std::span<const Complex> data() const { return coeffs_; }
    std::span<Complex> data() { return coeffs_; }

    double max_abs() const;
    bool is_zero() const;

    bool same_shape(const Series& other) const;

private:
    std::shared_ptr<const MonomialBasis> basis_;
    Point center_;
    std::vector<Complex> coeffs_;
};

void require_same_shape(const Series& s, const Series& t, const char* op);

Series truncate(const Series& s, int order);

Series add(const Series& s, const Series& t);
Series sub(const Series& s, const Series& t);
Series scale(const Series& s, Complex c);

// Cauchy product truncated to min(order). Parallel kernel.
Series mul(const Series& s, const Series& t);
// Same product with a plain serial loop; reference for the parallel kernel.
Series mul_serial(const Series& s, const Series& t);

// Requires |a_00| > 1e-12.
Series invert(const Series& s);
// Requires a_00 real and positive.
Series log(const Series& s);
Series exp(const Series& s);
Series real_power(const Series& s, double t);

// d/dz_i d/dconj(w_j); drops the order by one. Indices are zero based.
Series mixed_derivative(const Series& s, std::size_t i, std::size_t j);

// a_{IJ} -> conj(a_{JI}).
Series adjoint(const Series& s);
// max |a_{IJ} - conj(a_{JI})|
double hermitian_defect(const Series& s);

// Coefficients of the form (I, 0), (0, J), and those with |I|, |J| > 0.
// The constant term goes to the first two.
Series holomorphic_part(const Series& s);
Series antiholomorphic_part(const Series& s);
Series mixed_part(const Series& s);

// Largest |a_{IJ}| over entries with I != J.
double off_diagonal_magnitude(const Series& s);

double distance(const Point& a, const Point& b);

// sum a_{IJ} (z - c)^I conj(w - c)^J. Throws DomainError when z or w is
// farther than `guard` from the center.
Complex eval(const Series& s, const Point& z, const Point& w, double guard = kDefaultGuardRadius);

// Hermitian truncated series. Symmetry is checked on construction: a defect
// above rel_tol * max(1, max|a|) throws, anything smaller is averaged away.
class HermitianSeries {
public:
    explicit HermitianSeries(Series s, double rel_tol = 1e-12);

    const Series& series() const { return s_; }
    std::size_t vars() const { return s_.vars(); }
    int order() const { return s_.order(); }
    const Point& center() const { return s_.center(); }
    Complex coeff(const MultiIndex& I, const MultiIndex& J) const { return s_.coeff(I, J); }
    double constant_term() const { return s_.constant_term().real(); }

private:
    Series s_;
};

HermitianSeries add(const HermitianSeries& s, const HermitianSeries& t);
HermitianSeries mul(const HermitianSeries& s, const HermitianSeries& t);
HermitianSeries invert(const HermitianSeries& s);
HermitianSeries log(const HermitianSeries& s);
HermitianSeries exp(const HermitianSeries& s);
HermitianSeries real_power(const HermitianSeries& s, double t);
Series mixed_derivative(const HermitianSeries& s, std::size_t i, std::size_t j);

// s(w, w); real for Hermitian series.
double diagonal_eval(const HermitianSeries& s, const Point& w, double guard = kDefaultGuardRadius);

// Rescale by the holomorphic factor phi(z) = s(z, c) so that a_00 = 1 and
// a_{I0} = a_{0J} = 0. Throws BadConstantTerm when s(c, c) is not positive.
HermitianSeries normalize(const HermitianSeries& s);

// Diagonal one-variable series sum_n c_n z^n conj(w)^n centered at 0.
HermitianSeries diagonal_series(std::span<const double> coeffs, int order);

} // namespace curvlab
