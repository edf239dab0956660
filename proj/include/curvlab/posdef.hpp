#pragma once

#include "curvlab/kernel.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

inline constexpr double kDefaultTolerance = 1e-9;

enum class Verdict { positive, indefinite, degenerate };
std::string to_string(Verdict v);

// Outcome of a positivity test. `min_value` is the witness: the smallest
// eigenvalue for matrix tests, the most negative coefficient for coefficient
// tests. `tolerance` is the effective threshold the verdict was taken with:
// indefinite iff min_value < -tolerance, degenerate iff |min_value| <= tolerance.
struct PosDefVerdict {
    Verdict verdict = Verdict::positive;
    double min_value = 0.0;
    double max_value = 0.0;
    double tolerance = 0.0;
    std::string source;

    // Taylor-matrix witness: the entry (alpha, alpha) carrying most of the
    // offending eigenvector, and its value.
    std::optional<std::pair<MultiIndex, MultiIndex>> index;
    std::optional<Complex> entry;
    // Coefficient position for diagonal tests, row for Gram tests.
    std::optional<std::size_t> position;
    // Point set of Gram-based verdicts, so the verdict can be replayed.
    std::vector<Point> points;

    bool accepts() const { return verdict != Verdict::indefinite; }
    std::string describe() const;
};

// Classifies the spectrum [lmin, lmax] with tolerance eps * max(1, |lmax|).
PosDefVerdict classify(double lmin, double lmax, double eps, std::string source);

// Indefinite beats degenerate beats positive; the first witness of the
// winning class is kept.
PosDefVerdict combine(const PosDefVerdict& a, const PosDefVerdict& b);

// Matrix of Taylor coefficients a_{alpha beta}, rows and columns indexed by
// the multi-indices listed in `indices`.
struct TaylorMatrix {
    std::vector<MultiIndex> indices;
    Eigen::MatrixXcd entries;
    Point center;
};

// H_delta: all alpha <= delta in colexicographic order; needs |delta| <= order.
TaylorMatrix taylor_matrix(const Series& s, const MultiIndex& delta);
// All alpha with |alpha| <= degree (default: the series order); this holds
// every H_delta with |delta| <= degree as a principal submatrix.
TaylorMatrix graded_taylor_matrix(const Series& s, int degree = -1);
// Block matrix of the derivative kernel ((d_i dbar_j s)): row (alpha, i),
// column (beta, j), entry = coefficient of z^alpha conj(w)^beta in d_i dbar_j s,
// for |alpha|, |beta| <= degree (default order - 1).
TaylorMatrix derivative_taylor_matrix(const Series& s, int degree = -1);

// Spectral verdict of a Hermitian matrix.
PosDefVerdict matrix_psd(const Eigen::MatrixXcd& h, double eps, std::string source);
PosDefVerdict taylor_matrix_psd(const TaylorMatrix& h, double eps, std::string source = "taylor");

Eigen::MatrixXcd gram_matrix(const KernelSpec& k, const std::vector<Point>& points);
Eigen::MatrixXcd gram_matrix_serial(const KernelSpec& k, const std::vector<Point>& points);
Eigen::MatrixXcd gram_matrix(const Series& s, const std::vector<Point>& points,
                             double guard = kDefaultGuardRadius);

// ((K(w_a, w_b))) over the points.
PosDefVerdict gram_psd(const KernelSpec& k, const std::vector<Point>& points,
                       double eps = kDefaultTolerance);
PosDefVerdict gram_psd(const HermitianSeries& s, const std::vector<Point>& points,
                       double eps = kDefaultTolerance, double guard = kDefaultGuardRadius);

PosDefVerdict taylor_psd(const HermitianSeries& s, const MultiIndex& delta,
                         double eps = kDefaultTolerance);
PosDefVerdict taylor_psd_graded(const HermitianSeries& s, double eps = kDefaultTolerance,
                                int degree = -1);

// Diagonal one-variable kernels: positive iff every coefficient >= -eps.
PosDefVerdict diag_coeff_psd(std::span<const double> coeffs, double eps = kDefaultTolerance);

// Conditional positive definiteness: the form restricted to vectors whose
// entries sum to zero.
PosDefVerdict cpd_check(const Eigen::MatrixXcd& g, double eps = kDefaultTolerance);

// Positive definiteness of a real-analytic function through its polarized
// series. Taylor blocks decide (rows that vanish identically are dropped, they
// carry no quadratic information); the sampled Gram matrix can only refute.
// An empty delta list means the graded matrix up to the series order.
PosDefVerdict posdef_function_check(const HermitianSeries& s, const std::vector<MultiIndex>& deltas,
                                    const std::vector<Point>& points,
                                    double eps = kDefaultTolerance);

// Same decision rule for the matrix-valued derivative kernel ((d_i dbar_j s)).
PosDefVerdict derivative_function_check(const HermitianSeries& s, const std::vector<Point>& points,
                                        double eps = kDefaultTolerance);

// Gram matrix of the derivative kernel: row (a, i), column (b, j) holds
// (d_i dbar_j s)(p_a, p_b).
Eigen::MatrixXcd derivative_gram_matrix(const Series& s, const std::vector<Point>& points,
                                        double guard = kDefaultGuardRadius);

} // namespace curvlab
