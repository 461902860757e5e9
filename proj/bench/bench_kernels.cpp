// Wall-time comparison of the serial reference kernels against the OpenMP
// versions. The two must produce identical results (tests assert that); this
// target only reports the speedup.

#include <chrono>
#include <cstdio>
#include <random>

#include "explab/annulus_robust.hpp"
#include "explab/catalog.hpp"
#include "explab/denjoy_koksma.hpp"
#include "explab/separation.hpp"

using namespace explab;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double omp_ms) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("kernel                            serial       openmp  speedup\n");
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif

    {
        auto flow = band_knots_suspension(30);
        std::mt19937_64 gen(1);
        auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
        std::vector<std::pair<double, double>> pairs;
        for (int i = 0; i < 256; ++i) {
            const double x = 0.55 + 0.3 * u();
            pairs.emplace_back(x, x + 0.1 + u() * (1.0 - x - 0.1));
        }
        double s = time_ms([&] {
            pair_sweep(flow, pairs, 1.0, 20000, SeparationMode::forward, par::Exec::serial);
        });
        double p = time_ms([&] {
            pair_sweep(flow, pairs, 1.0, 20000, SeparationMode::forward, par::Exec::openmp);
        });
        row("pair_sweep (256 x 2e4)", s, p);
    }

    {
        auto flow = rotation_smooth_suspension(kGoldenAlpha, 0.3);
        double s = time_ms([&] { denjoy_koksma_gap(flow, 10, 200000, par::Exec::serial); });
        double p = time_ms([&] { denjoy_koksma_gap(flow, 10, 200000, par::Exec::openmp); });
        row("denjoy_koksma_gap (2e5 grid)", s, p);
    }

    {
        auto X = make_profile_field(profile_linear());
        double s = time_ms([&] { robust_criterion(X, 512, par::Exec::serial); });
        double p = time_ms([&] { robust_criterion(X, 512, par::Exec::openmp); });
        row("robust_criterion (512^2)", s, p);
    }

    {
        auto X = make_profile_field(profile_linear());
        double s = time_ms([&] { green_check(X, 1.0, 2.0, 4096, par::Exec::serial); });
        double p = time_ms([&] { green_check(X, 1.0, 2.0, 4096, par::Exec::openmp); });
        row("green_check (quad_n 4096)", s, p);
    }

    return 0;
}
