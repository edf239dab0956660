// Parallel kernels against their serial references.
#include "curvlab/kernel.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/points.hpp"
#include "curvlab/posdef.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace curvlab;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* what, double par, double ser)
{
    std::printf("%-36s parallel %10.4f ms   serial %10.4f ms   speedup %5.2fx\n", what, par * 1e3,
                ser * 1e3, ser / par);
}

} // namespace

int main()
{
    std::printf("threads: %d\n", parallel::max_threads());

    struct Case {
        const char* name;
        KernelSpec k;
        int order;
    };
    const Case cases[] = {
        {"product, szego_poly(2), N=12", szego_polydisc(2), 12},
        {"product, da(3), N=8", drury_arveson(3), 8},
        {"product, detball2, N=6", det_ball_2x2(), 6},
    };
    for (const auto& c : cases) {
        const Point origin(c.k.domain().m, Complex(0.0, 0.0));
        const Series s = taylor_expand(c.k, origin, c.order).series();
        const double par = seconds([&] { (void)mul(s, s); }, 3);
        const double ser = seconds([&] { (void)mul_serial(s, s); }, 3);
        row(c.name, par, ser);
    }

    for (std::size_t n : {100u, 400u}) {
        const KernelSpec k = drury_arveson(3);
        const auto pts = random_points(k.domain(), n, 0.9, kDefaultSeed);
        char name[64];
        std::snprintf(name, sizeof name, "gram, da(3), %zu points", n);
        const double par = seconds([&] { (void)gram_matrix(k, pts); }, 3);
        const double ser = seconds([&] { (void)gram_matrix_serial(k, pts); }, 3);
        row(name, par, ser);
    }
    return 0;
}
