#pragma once

#include "curvlab/kernel.hpp"

#include <cstdint>
#include <vector>

namespace curvlab {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Seeded pseudorandom points of a domain with |z| (resp. ||z||, operator norm)
// at most `radius`. Radii are uniform in [0, radius]; angles and directions are
// uniform. Matrix-ball points are Gaussian matrices rescaled to a uniform norm.
std::vector<Point> random_points(const Domain& d, std::size_t count, double radius,
                                 std::uint64_t seed);

// Points at distance <= radius from `center`, staying inside the domain.
std::vector<Point> random_points_near(const Domain& d, const Point& center, std::size_t count,
                                      double radius, std::uint64_t seed);

// radii x angles grid: radii (k / radii) * max_radius for k = 0..radii-1 and
// equally spaced angles with a seeded phase. For m > 1 each angle picks a
// seeded random direction.
std::vector<Point> radial_grid(const Domain& d, std::size_t radii, std::size_t angles,
                               double max_radius, std::uint64_t seed);

// Seed from CURVLAB_SEED when set, else the fallback.
std::uint64_t default_seed(std::uint64_t fallback = kDefaultSeed);

} // namespace curvlab
