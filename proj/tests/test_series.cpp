#include "oracles.hpp"

#include "curvlab/error.hpp"
#include "curvlab/kernel.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/series.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace curvlab;
using Catch::Approx;

namespace {

Series random_series(std::size_t m, int order, std::mt19937_64& rng, double density = 1.0)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
    Series s(m, order, Point(m, Complex(0.0, 0.0)));
    for (auto& c : s.data()) {
        if (coin(rng) < density)
            c = Complex(u(rng), u(rng));
    }
    return s;
}

// Hermitian series with a positive constant term.
HermitianSeries random_hermitian(std::size_t m, int order, std::mt19937_64& rng)
{
    Series s = random_series(m, order, rng, 0.5);
    s = scale(add(s, adjoint(s)), 0.1);
    s.at(0, 0) = 1.0;
    return HermitianSeries(s);
}

} // namespace

TEST_CASE("monomial basis layout")
{
    const auto b = MonomialBasis::get(2, 3);
    REQUIRE(b->size() == 10);
    CHECK(b->degree_begin(0) == 0);
    CHECK(b->degree_begin(1) == 1);
    CHECK(b->degree_begin(2) == 3);
    CHECK(b->degree_begin(4) == 10);
    // colex within a degree: (1,0) before (0,1)
    CHECK((*b)[1] == MultiIndex{1, 0});
    CHECK((*b)[2] == MultiIndex{0, 1});
    CHECK((*b)[3] == MultiIndex{2, 0});
    CHECK((*b)[5] == MultiIndex{0, 2});
    CHECK(b->find(MultiIndex{2, 2}) == MonomialBasis::npos);
    CHECK_THROWS_AS(b->index_of(MultiIndex{4, 0}), OrderError);

    // prefixes: a lower-order basis is the head of a higher-order one
    const auto big = MonomialBasis::get(2, 6);
    for (std::size_t k = 0; k < b->size(); ++k)
        CHECK((*big)[k] == (*b)[k]);
}

TEST_CASE("multi-index box is colex ordered")
{
    const MultiIndex d{1, 0, 0, 3};
    const auto box = d.box();
    REQUIRE(box.size() == 8);
    for (std::size_t k = 1; k < box.size(); ++k)
        CHECK(colex_less(box[k - 1], box[k]));
    CHECK(box.front() == MultiIndex{0, 0, 0, 0});
    CHECK(box[1] == MultiIndex{1, 0, 0, 0});
    CHECK(box.back() == d);
}

TEST_CASE("parallel Cauchy product matches the serial reference")
{
    std::mt19937_64 rng(7);
    for (auto [m, order] : {std::pair{1u, 12}, {2u, 6}, {3u, 4}, {4u, 3}}) {
        const Series a = random_series(m, order, rng, 0.6);
        const Series b = random_series(m, order, rng, 0.6);
        const Series p = mul(a, b), q = mul_serial(a, b);
        double dev = 0.0;
        for (std::size_t k = 0; k < p.data().size(); ++k)
            dev = std::max(dev, std::abs(p.data()[k] - q.data()[k]));
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("product agrees with a brute-force polynomial product")
{
    std::mt19937_64 rng(3);
    const int order = 3;
    const Series a = random_series(2, order, rng, 0.4), b = random_series(2, order, rng, 0.4);
    auto to_poly = [](const Series& s) {
        oracle::Poly p;
        const auto& basis = s.basis();
        for (std::size_t i = 0; i < s.dim(); ++i) {
            for (std::size_t j = 0; j < s.dim(); ++j) {
                if (s.at(i, j) == Complex(0.0, 0.0))
                    continue;
                std::vector<int> e = basis[i].exponents();
                const auto& wj = basis[j].exponents();
                e.insert(e.end(), wj.begin(), wj.end());
                p[e] = s.at(i, j);
            }
        }
        return p;
    };
    const oracle::Poly want = oracle::poly_mul(to_poly(a), to_poly(b), order);
    const Series got = mul(a, b);
    for (const auto& [e, c] : want) {
        const MultiIndex I{e[0], e[1]}, J{e[2], e[3]};
        CHECK(std::abs(got.coeff(I, J) - c) < 1e-12);
    }
}

TEST_CASE("inverse, log and exp")
{
    std::mt19937_64 rng(11);
    for (auto [m, order] : {std::pair{1u, 10}, {2u, 5}, {3u, 3}}) {
        const HermitianSeries s = random_hermitian(m, order, rng);
        const Series one = Series::constant(m, order, s.center(), 1.0);

        SECTION("s * invert(s) = 1")
        {
            const Series p = mul(s.series(), invert(s.series()));
            CHECK(distance(Point(p.data().begin(), p.data().end()),
                           Point(one.data().begin(), one.data().end())) < 1e-10);
        }
        SECTION("exp(log s) = s")
        {
            const Series back = exp(log(s.series()));
            double dev = 0.0;
            for (std::size_t k = 0; k < back.data().size(); ++k)
                dev = std::max(dev, std::abs(back.data()[k] - s.series().data()[k]));
            CHECK(dev < 1e-10);
        }
        SECTION("real_power is multiplicative in the exponent")
        {
            const Series a = real_power(s.series(), 0.3), b = real_power(s.series(), 0.7);
            const Series ab = mul(a, b);
            double dev = 0.0;
            for (std::size_t k = 0; k < ab.data().size(); ++k)
                dev = std::max(dev, std::abs(ab.data()[k] - s.series().data()[k]));
            CHECK(dev < 1e-10);
        }
    }
}

TEST_CASE("log of a series with holomorphic terms reaches the top corner")
{
    // s = 1 + z + conj(w): the term z^N conj(w)^N of log s has total degree 2N.
    const int order = 3;
    Series s = Series::constant(1, order, Point{0.0}, 1.0);
    s = add(s, Series::holomorphic_coordinate(1, order, Point{0.0}, 0));
    s = add(s, Series::antiholomorphic_coordinate(1, order, Point{0.0}, 0));
    const Series l = log(s);
    // log(1 + x) with x = z + conj w: coefficient of z^3 conj(w)^3 is
    // (-1)^{5} / 6 * C(6, 3) = -20 / 6
    CHECK(l.coeff(MultiIndex{3}, MultiIndex{3}).real() == Approx(-20.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("real powers of the Szego series are rising binomials")
{
    const HermitianSeries s = taylor_expand(szego_disc(), Point{0.0}, 12);
    for (double t : {0.1, 0.25, 0.5, 1.7, 3.0}) {
        const HermitianSeries p = real_power(s, t);
        for (int n = 0; n <= 12; ++n) {
            CHECK(p.coeff(MultiIndex{n}, MultiIndex{n}).real() ==
                  Approx(oracle::rising_binomial(t, n)).epsilon(1e-12).margin(1e-14));
        }
    }
}

TEST_CASE("Hermitian checks")
{
    Series s = Series::constant(1, 2, Point{0.0}, 1.0);
    s.set(MultiIndex{1}, MultiIndex{0}, Complex(0.5, 0.5));
    CHECK_THROWS_AS(HermitianSeries(s), HermitianViolation);
    s.set(MultiIndex{0}, MultiIndex{1}, Complex(0.5, -0.5));
    CHECK_NOTHROW(HermitianSeries(s));

    Series zero(1, 2, Point{0.0});
    CHECK_THROWS_AS(invert(zero), BadConstantTerm);
    CHECK_THROWS_AS(log(Series::constant(1, 2, Point{0.0}, -1.0)), BadConstantTerm);
}

TEST_CASE("shape checks")
{
    const Series a(1, 3, Point{0.0}), b(1, 4, Point{0.0}), c(1, 3, Point{0.1});
    CHECK(add(a, b).order() == 3);
    CHECK_THROWS_AS(mul(a, c), ShapeMismatch);
    CHECK_THROWS_AS(mul(a, Series(2, 3, Point(2, 0.0))), ShapeMismatch);
}

TEST_CASE("mixed derivative")
{
    // d dbar of z^2 conj(w)^3 = 6 z conj(w)^2
    Series s(1, 4, Point{0.0});
    s.set(MultiIndex{2}, MultiIndex{3}, 1.0);
    const Series d = mixed_derivative(s, 0, 0);
    CHECK(d.order() == 3);
    CHECK(d.coeff(MultiIndex{1}, MultiIndex{2}).real() == 6.0);
}

TEST_CASE("series evaluation and guard radius")
{
    const HermitianSeries s = taylor_expand(szego_disc(), Point{0.0}, 12);
    const Point w{Complex(0.1, 0.2)};
    CHECK(diagonal_eval(s, w) == Approx(1.0 / (1.0 - std::norm(w[0]))).epsilon(1e-12));
    CHECK_THROWS_AS(eval(s.series(), Point{0.99}, Point{0.0}), DomainError);
}

TEST_CASE("normalize zero pattern")
{
    std::mt19937_64 rng(5);
    const HermitianSeries s = random_hermitian(2, 4, rng);
    const HermitianSeries n = normalize(s);
    CHECK(n.coeff(MultiIndex{0, 0}, MultiIndex{0, 0}).real() == 1.0);
    const auto& basis = n.series().basis();
    for (std::size_t k = 1; k < basis.size(); ++k) {
        CHECK(n.series().at(k, 0) == Complex(0.0, 0.0));
        CHECK(n.series().at(0, k) == Complex(0.0, 0.0));
    }
}
