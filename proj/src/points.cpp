#include "curvlab/points.hpp"

#include "curvlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>

namespace curvlab {

namespace {

std::size_t dimension(const Domain& d)
{
    if (d.kind == Domain::Kind::any)
        throw ShapeMismatch("cannot sample points of an unspecified domain");
    return d.m;
}

Point direction(std::size_t m, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Point p(m);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : p) {
            x = Complex(g(rng), g(rng));
            norm += std::norm(x);
        }
    } while (norm < 1e-24);
    norm = std::sqrt(norm);
    for (auto& x : p)
        x /= norm;
    return p;
}

// A point whose domain "size" (modulus, norm, or operator norm) equals r.
Point point_of_size(const Domain& d, double r, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t m = dimension(d);
    switch (d.kind) {
    case Domain::Kind::disc:
    case Domain::Kind::polydisc: {
        Point p(m);
        for (std::size_t i = 0; i < m; ++i)
            p[i] = std::polar(r * (i == 0 ? 1.0 : unit(rng)), angle(rng));
        return p;
    }
    case Domain::Kind::ball: {
        Point p = direction(m, rng);
        for (auto& x : p)
            x *= r;
        return p;
    }
    case Domain::Kind::matrix_ball2: {
        Point a = direction(4, rng);
        const double n = operator_norm_2x2(a);
        for (auto& x : a)
            x *= r / n;
        return a;
    }
    default:
        throw ShapeMismatch("cannot sample points of domain " + d.name());
    }
}

} // namespace

std::vector<Point> random_points(const Domain& d, std::size_t count, double radius,
                                 std::uint64_t seed)
{
    if (!(radius >= 0.0 && radius < 1.0))
        throw DomainError("random_points: radius must lie in [0, 1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        pts.push_back(point_of_size(d, radius * unit(rng), rng));
    return pts;
}

std::vector<Point> random_points_near(const Domain& d, const Point& center, std::size_t count,
                                      double radius, std::uint64_t seed)
{
    const std::size_t m = dimension(d);
    if (center.size() != m)
        throw ShapeMismatch("random_points_near: center dimension mismatch");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(count);
    std::size_t attempts = 0;
    while (pts.size() < count) {
        if (++attempts > 1000 * (count + 1))
            throw DomainError("random_points_near: neighborhood leaves the domain");
        Point dir = direction(m, rng);
        const double r = radius * unit(rng);
        Point p(center);
        for (std::size_t i = 0; i < m; ++i)
            p[i] += r * dir[i];
        if (d.contains(p))
            pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> radial_grid(const Domain& d, std::size_t radii, std::size_t angles,
                               double max_radius, std::uint64_t seed)
{
    const std::size_t m = dimension(d);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const double offset = phase(rng);
    std::vector<Point> pts;
    for (std::size_t a = 0; a < angles; ++a) {
        const double theta = offset + 2.0 * std::numbers::pi * static_cast<double>(a) /
                                          static_cast<double>(angles);
        Point dir;
        if (m == 1 && d.kind != Domain::Kind::matrix_ball2) {
            dir = Point{std::polar(1.0, theta)};
        } else {
            dir = direction(m, rng);
            for (auto& x : dir)
                x *= std::polar(1.0, theta);
            if (d.kind == Domain::Kind::polydisc) {
                double mx = 0.0;
                for (const auto& x : dir)
                    mx = std::max(mx, std::abs(x));
                for (auto& x : dir)
                    x /= mx;
            } else if (d.kind == Domain::Kind::matrix_ball2) {
                const double n = operator_norm_2x2(dir);
                for (auto& x : dir)
                    x /= n;
            }
        }
        for (std::size_t k = 0; k < radii; ++k) {
            const double r = max_radius * static_cast<double>(k) / static_cast<double>(radii);
            Point p(dir);
            for (auto& x : p)
                x *= r;
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

std::uint64_t default_seed(std::uint64_t fallback)
{
    if (const char* env = std::getenv("CURVLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(std::string("CURVLAB_SEED is not an unsigned integer: ") + env);
        }
    }
    return fallback;
}

} // namespace curvlab
