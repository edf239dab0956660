#pragma once

#include "curvlab/kernel.hpp"
#include "curvlab/posdef.hpp"

#include <optional>
#include <span>
#include <vector>

namespace curvlab {

// Weighted shift realized by multiplication by z on the space of a diagonal
// kernel sum a_n |z|^{2n}: weights w_n = ||z^{n+1}|| / ||z^n|| = sqrt(a_n / a_{n+1}).
struct WeightedShift {
    std::vector<double> weights;
    // Weight repeated forever after the listed ones (1 for a constant tail).
    std::optional<double> tail_weight;

    double norm() const;
};

// a_0..a_{n-1}, optionally followed by a constant tail a_n = a_{n+1} = ... = tail.
WeightedShift shift_from_diagonal(std::span<const double> coeffs, std::optional<double> tail = {});

struct ContractionOptions {
    double eps = kDefaultTolerance;
    int order = kDefaultOrder;
    std::vector<Point> points;      // Gram sample; empty = seeded default
    std::vector<MultiIndex> deltas; // Taylor blocks; empty = graded up to order
    std::uint64_t seed = 42;
};

// (1 - z conj w) K positive definite (disc).
PosDefVerdict contraction_test(const KernelSpec& k, const ContractionOptions& opt = {});
// (1 - <z, w>) K positive definite (ball, or the disc as ball(1)).
PosDefVerdict row_contraction_test(const KernelSpec& k, const ContractionOptions& opt = {});
// prod (1 - z_i conj w_i) K positive definite (polydisc).
PosDefVerdict polydisc_contraction_test(const KernelSpec& k, const ContractionOptions& opt = {});

// N(w) = [[w, h], [0, w]] with h = (-curvature)^{-1/2}.
struct LocalOperator {
    Complex w;
    double h;
};

LocalOperator local_operator(const KernelSpec& k, const Point& w);
// ||N(w)|| <= 1 iff |w| <= 1 and h^2 <= (1 - |w|^2)^2, checked with 1e-12 slack.
bool local_contraction_test(const LocalOperator& op);

} // namespace curvlab
