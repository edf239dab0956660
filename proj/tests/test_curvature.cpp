#include "oracles.hpp"

#include "curvlab/curvature.hpp"
#include "curvlab/error.hpp"
#include "curvlab/points.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace curvlab;
using Catch::Approx;

TEST_CASE("Szego curvature")
{
    for (double r : {0.0, 0.3, 0.6, 0.9}) {
        const Point w{std::polar(r, 1.0)};
        CHECK(curvature_scalar(szego_disc(), w) == Approx(-1.0 / std::pow(1.0 - r * r, 2)).epsilon(1e-13));
    }
}

TEST_CASE("diagonal kernels against the radial formula")
{
    const std::vector<double> a{8.0, 16.0};
    for (double r : {0.0, 0.2, 0.5, 0.8}) {
        const Point w{std::polar(std::sqrt(r), 0.3)};
        CHECK(curvature_scalar(diagonal(a, 15.0), w) ==
              Approx(oracle::diagonal_curvature(a, 15.0, r)).epsilon(1e-10));
    }
}

TEST_CASE("curvature against central differences")
{
    const std::vector<KernelSpec> kernels{product(szego_disc(), diagonal({1.0, 3.0}, 0.5)),
                                          power(drury_arveson(3), 1.7),
                                          product(szego_polydisc(2), power(szego_polydisc(2), 0.3)), det_ball_2x2()};
    std::uint64_t seed = 5;
    for (const auto& k : kernels) {
        for (const auto& w : random_points(k.domain(), 3, 0.6, seed++)) {
            const auto fdl =
                oracle::fd_curvature([&](const Point& p) { return std::log(eval(k, p, p).real()); }, w, 1e-4);
            const Eigen::MatrixXcd c = curvature_matrix(k, w).entries;
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                for (std::size_t j = 0; j < w.size(); ++j) {
                    num = std::max(num, std::abs(c(Eigen::Index(i), Eigen::Index(j)) - fdl[i][j]));
                    den = std::max(den, std::abs(c(Eigen::Index(i), Eigen::Index(j))));
                }
            }
            CHECK(num / den < 1e-6);
        }
    }
}

TEST_CASE("curvature is negative definite and matches the Gramian route")
{
    const std::vector<KernelSpec> kernels{szego_disc(), drury_arveson(3), szego_polydisc(2),
                                          power(det_ball_2x2(), 2.0)};
    for (const auto& k : kernels) {
        for (const auto& w : random_points(k.domain(), 5, 0.8, 21)) {
            const auto v = curvature_negativity(k, w);
            CHECK(v.verdict == Verdict::positive);
            CHECK(curvature_gram_check(k, w) < 1e-8);
        }
    }
}

TEST_CASE("non-positive diagonal value breaks down")
{
    CHECK_THROWS_AS(curvature_matrix(constant(-1.0), Point{0.0}), NumericBreakdown);
}

TEST_CASE("curvature comparison")
{
    const KernelSpec m = diagonal({8.0, 16.0}, 15.0);
    const auto pts = radial_grid(Domain::disc(), 10, 3, 0.9, 1);
    CHECK(curvature_compare(m, szego_disc(), Pointwise{pts}).verdict == Verdict::positive);
    CHECK(curvature_compare(szego_disc(), m, Pointwise{pts}).verdict == Verdict::indefinite);
    // the same kernel: difference zero
    CHECK(curvature_compare(szego_disc(), szego_disc(), Pointwise{pts}).verdict == Verdict::degenerate);
    CHECK_THROWS_AS(curvature_compare(szego_disc(), drury_arveson(2), Pointwise{pts}), ShapeMismatch);

    // szego^2 vs szego: log ratio is log szego, a positive definite function
    FunctionOrder fo{Point{0.0}, 8, {}, {}};
    CHECK(curvature_compare(power(szego_disc(), 2.0), szego_disc(), fo).accepts());
    FunctionOrder fo2{Point(2, 0.0), 5, {}, {}};
    CHECK(curvature_compare(power(drury_arveson(2), 3.0), drury_arveson(2), fo2).accepts());
}

TEST_CASE("curvature difference is exact for the counterexample")
{
    const KernelSpec m = diagonal({8.0, 16.0}, 15.0);
    const Eigen::MatrixXcd d = curvature_difference(m, szego_disc(), Point{0.0});
    CHECK(d(0, 0).real() == Approx(1.0).epsilon(1e-14));
}
