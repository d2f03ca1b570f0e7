// Timing comparison between the serial reference kernels and the
// OpenMP-parallel ones: the Walsh-Hadamard butterfly, game trial batches,
// and the balls-and-bins sampler.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "forrlab/bent.hpp"
#include "forrlab/counting.hpp"
#include "forrlab/games.hpp"
#include "forrlab/rng.hpp"

using namespace forrlab;

namespace {

template <typename F>
double time_it(F&& fn, int reps = 3) {
    // one warmup
    fn();
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

bent::SignTable random_table(unsigned n, std::uint64_t seed) {
    Rng rng(seed);
    bent::SignTable t;
    t.n = n;
    t.values.resize(std::size_t{1} << n);
    for (auto& v : t.values) v = rng.coin() ? 1 : -1;
    return t;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif

    for (unsigned n : {18u, 20u, 22u}) {
        const bent::SignTable t = random_table(n, 17);
        volatile std::int32_t sink = 0;
        const double serial = time_it([&] {
            auto f = bent::wht_serial(t);
            sink = f.num[1];
        });
        const double parallel = time_it([&] {
            auto f = bent::wht(t);
            sink = f.num[1];
        });
        std::printf("wht n=%u: serial %.4fs, parallel %.4fs, speedup %.2fx\n", n, serial,
                    parallel, serial / parallel);
    }

    {
        games::GameConfig gc;
        gc.n = 12;
        gc.game = 2;
        gc.query_budget = 8;
        gc.seed = 5;
        const double serial =
            time_it([&] { games::run_trials_serial(gc, "random-distinct", 200); }, 2);
        const double parallel =
            time_it([&] { games::run_trials(gc, "random-distinct", 200); }, 2);
        std::printf("game2 trials n=12: serial %.4fs, parallel %.4fs, speedup %.2fx\n", serial,
                    parallel, serial / parallel);
    }

    {
        const auto d = counting::BinDistribution::uniform(365);
        const double one = time_it([&] { counting::mc_bins(23, d, 20000, 7); }, 2);
        std::printf("mc_bins 365/23 x 20000 trials: %.4fs per run\n", one);
    }

    return 0;
}
