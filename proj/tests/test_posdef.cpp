#include "oracles.hpp"

#include "curvlab/error.hpp"
#include "curvlab/points.hpp"
#include "curvlab/posdef.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace curvlab;

TEST_CASE("three-way classification")
{
    CHECK(classify(1.0, 2.0, 1e-9, "x").verdict == Verdict::positive);
    CHECK(classify(0.0, 2.0, 1e-9, "x").verdict == Verdict::degenerate);
    CHECK(classify(-1e-10, 2.0, 1e-9, "x").verdict == Verdict::degenerate);
    CHECK(classify(-1e-3, 2.0, 1e-9, "x").verdict == Verdict::indefinite);
    // tolerance scales with the largest eigenvalue
    CHECK(classify(-1e-7, 1e3, 1e-9, "x").verdict == Verdict::degenerate);

    const auto pos = classify(1.0, 1.0, 1e-9, "a");
    const auto deg = classify(0.0, 1.0, 1e-9, "b");
    const auto ind = classify(-1.0, 1.0, 1e-9, "c");
    CHECK(combine(pos, deg).source == "b");
    CHECK(combine(ind, deg).source == "c");
    CHECK(combine(deg, ind).source == "c");
    CHECK(combine(pos, pos).verdict == Verdict::positive);
}

TEST_CASE("diagonal coefficient test")
{
    const std::vector<double> bad{8.0, 8.0, -1.0, 0.0};
    const auto v = diag_coeff_psd(bad);
    CHECK(v.verdict == Verdict::indefinite);
    CHECK(v.min_value == -1.0);
    REQUIRE(v.position);
    CHECK(*v.position == 2);

    const std::vector<double> good{1.0, 1.0, 0.25, 1.0};
    CHECK(diag_coeff_psd(good).verdict == Verdict::positive);
}

TEST_CASE("Taylor matrices")
{
    const HermitianSeries s = taylor_expand(szego_polydisc(2), Point(2, 0.0), 4);
    const TaylorMatrix h = taylor_matrix(s.series(), MultiIndex{2, 1});
    REQUIRE(h.indices.size() == 6);
    // product Szego kernel: identity in the monomial basis
    CHECK((h.entries - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(taylor_psd(s, MultiIndex{2, 1}).verdict == Verdict::positive);
    CHECK_THROWS_AS(taylor_matrix(s.series(), MultiIndex{3, 2}), OrderError);

    const TaylorMatrix g = graded_taylor_matrix(s.series(), 2);
    CHECK(g.indices.size() == 6);
}

TEST_CASE("Gram matrices: parallel against serial")
{
    const KernelSpec k = product(szego_polydisc(3), power(szego_polydisc(3), 0.5));
    const auto pts = random_points(k.domain(), 40, 0.9, 17);
    const Eigen::MatrixXcd a = gram_matrix(k, pts), b = gram_matrix_serial(k, pts);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(gram_psd(k, pts).accepts());
}

TEST_CASE("Gram of a non-kernel is caught")
{
    // 8 + 8 zw - z^2 w^2: the negative coefficient shows up in Taylor and Gram tests
    const KernelSpec k = contract(diagonal({8.0, 16.0}, 15.0));
    const auto s = taylor_expand(k, Point{0.0}, 6);
    const auto t = taylor_psd_graded(s);
    CHECK(t.verdict == Verdict::indefinite);
    REQUIRE(t.index);
    CHECK(t.index->first == MultiIndex{2});
    CHECK(t.entry->real() == -1.0);
    const auto pts = random_points(k.domain(), 60, 0.95, 2);
    CHECK(gram_psd(k, pts).verdict == Verdict::indefinite);
}

TEST_CASE("conditional positive definiteness")
{
    // constants vanish on 1-perp
    const Eigen::MatrixXcd c = Eigen::MatrixXcd::Constant(5, 5, -1.0);
    CHECK(cpd_check(c).accepts());

    // -|x - y|^2 is conditionally positive definite, not positive definite
    std::vector<double> x{0.0, 0.3, -0.7, 1.1, 2.0};
    Eigen::MatrixXcd g(5, 5);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            g(a, b) = -(x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)]) *
                      (x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)]);
    CHECK(cpd_check(g).accepts());
    CHECK(matrix_psd(g, 1e-9, "g").verdict == Verdict::indefinite);

    // +|x - y|^2 is not
    CHECK(cpd_check(-g).verdict == Verdict::indefinite);
}

TEST_CASE("positive definite functions through polarization")
{
    // z conj(w): a single nonzero row, positive once null rows are dropped
    Series s(1, 6, Point{0.0});
    s.set(MultiIndex{1}, MultiIndex{1}, 1.0);
    const auto pts = random_points(Domain::disc(), 10, 0.9, 3);
    CHECK(posdef_function_check(HermitianSeries(s), {}, pts).verdict == Verdict::positive);

    // z conj(w) - z^2 conj(w)^2 / 2 + ... fails
    s.set(MultiIndex{2}, MultiIndex{2}, -0.5);
    CHECK(posdef_function_check(HermitianSeries(s), {}, pts).verdict == Verdict::indefinite);

    // log of the Szego series: sum (z conj w)^n / n
    const HermitianSeries l = log(taylor_expand(szego_disc(), Point{0.0}, 10));
    CHECK(posdef_function_check(l, {}, pts).verdict == Verdict::positive);
}

TEST_CASE("derivative kernel of a positive kernel")
{
    const HermitianSeries s = taylor_expand(drury_arveson(2), Point(2, 0.0), 6);
    const auto pts = random_points(Domain::ball(2), 12, 0.5, 8);
    const auto v = derivative_function_check(s, pts);
    CHECK(v.accepts());
    const Eigen::MatrixXcd g = derivative_gram_matrix(s.series(), pts);
    CHECK(g.rows() == 24);
}
