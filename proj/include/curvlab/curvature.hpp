#pragma once

#include "curvlab/kernel.hpp"
#include "curvlab/posdef.hpp"

#include <Eigen/Dense>

#include <variant>
#include <vector>

namespace curvlab {

// K(w)_{ij} = -d^2 log K(w, w) / dw_i dconj(w_j). Negative definite for
// genuine reproducing kernels.
struct CurvatureMatrix {
    Point w;
    Eigen::MatrixXcd entries;
};

CurvatureMatrix curvature_from_jet(const KernelJet& jet, const Point& w);
CurvatureMatrix curvature_matrix(const KernelSpec& k, const Point& w);
// One-variable kernels only.
double curvature_scalar(const KernelSpec& k, const Point& w);

// Verdict on -K(w) being positive semidefinite.
PosDefVerdict curvature_negativity(const KernelSpec& k, const Point& w,
                                   double eps = kDefaultTolerance);

// Builds vectors with the Gram matrix of {K_w, dbar_1 K_w, ..., dbar_m K_w},
// forms e_i = K_w (x) dbar_i K_w - dbar_i K_w (x) K_w explicitly and returns
// max_ij | <e_i, e_j> / (2 K(w,w)^2) + K(w)_{ji} |.
double curvature_gram_check(const KernelSpec& k, const Point& w);

// Matrix of series d_i dbar_j log(K_0), K_0 the normalization of s at its
// center. The curvature at the center is minus the constant terms.
std::vector<std::vector<Series>> curvature_series(const HermitianSeries& s);
Eigen::MatrixXcd curvature_at_center(const std::vector<std::vector<Series>>& cs);

// Curvature of kB minus curvature of kA at w.
Eigen::MatrixXcd curvature_difference(const KernelSpec& kA, const KernelSpec& kB, const Point& w);

struct Pointwise {
    std::vector<Point> points;
};
// kA's curvature is below kB's as positive definite functions: the polarized
// series of d dbar log(kA / kB) about `center` is positive definite.
struct FunctionOrder {
    Point center;
    int order = kDefaultOrder;
    std::vector<MultiIndex> deltas;
    std::vector<Point> points;
};
using CompareMode = std::variant<Pointwise, FunctionOrder>;

// Verdict on "curvature(kA) <= curvature(kB)".
PosDefVerdict curvature_compare(const KernelSpec& kA, const KernelSpec& kB, const CompareMode& mode,
                                double eps = kDefaultTolerance);

} // namespace curvlab
