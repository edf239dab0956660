#pragma once

#include "curvlab/kernel.hpp"
#include "curvlab/posdef.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvlab {

inline const std::vector<double> kDefaultTGrid{0.1, 0.25, 0.5, 0.75, 1.0};

struct DivisibilityReport {
    std::vector<double> t_grid;
    std::vector<PosDefVerdict> per_t;
    bool divisible = true;
    // First t with an indefinite verdict.
    std::optional<double> witness_t;
    int order = 0;
    // What "divisible" certifies: the truncation order and t grid used.
    std::string scope;

    const PosDefVerdict* verdict_at(double t) const;
};

// K^t for each t in the grid: graded Taylor matrix of the powered series about
// w0, plus a sampled Gram matrix near w0 that can only refute.
DivisibilityReport divisibility_check(const KernelSpec& k, const std::vector<double>& t_grid,
                                      const Point& w0, int order = kDefaultOrder,
                                      double eps = kDefaultTolerance, std::uint64_t seed = 42);

// log K is conditionally positive definite and
// L(z, w) = log K(z, w) - log K(z, w0) - log K(w0, w) + log K(w0, w0) is
// positive definite, both over the sampled points.
struct LogKernelReport {
    PosDefVerdict cpd;
    PosDefVerdict shifted;
    std::vector<Point> points;
    std::size_t rejected = 0;

    bool accepts() const { return cpd.accepts() && shifted.accepts(); }
};

// Points where the principal logarithm is unusable are dropped and replaced by
// seeded points closer to w0.
LogKernelReport log_kernel_cpd_check(const KernelSpec& k, const std::vector<Point>& points,
                                     const Point& w0, double eps = kDefaultTolerance,
                                     std::uint64_t seed = 42);

struct ReconstructionResult {
    HermitianSeries k0;
    // Holomorphic series a_00 / 2 + sum a_I0 z^I, stored in the (I, 0) column.
    Series psi;
    HermitianSeries kernel;
    double diagonal_error = 0.0;
    std::vector<Point> sample;
    PosDefVerdict k0_verdict;
    std::vector<double> t_grid;
    std::vector<PosDefVerdict> per_t;
};

// Builds exp(psi) exp(K0) exp(conj psi) from the series of log K.
ReconstructionResult reconstruct(const HermitianSeries& logdiag,
                                 const std::vector<double>& t_grid = kDefaultTGrid,
                                 double eps = kDefaultTolerance);

struct DivisibleContractionReport {
    // Route 1: divisibility of factor * K.
    DivisibilityReport powers;
    // Route 2: d dbar log(factor * K) as a positive definite function.
    PosDefVerdict curvature_route;
    bool agree = true;

    bool divisible() const { return powers.divisible && curvature_route.accepts(); }
};

// factor = 1 - z conj w, 1 - <z, w> or prod (1 - z_i conj w_i) by domain.
DivisibleContractionReport divisible_contraction_check(const KernelSpec& k,
                                                       const std::vector<double>& t_grid = kDefaultTGrid,
                                                       int order = kDefaultOrder,
                                                       double eps = kDefaultTolerance,
                                                       std::uint64_t seed = 42);

} // namespace curvlab
