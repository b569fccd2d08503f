// Serial reference vs OpenMP kernels: wall time and bitwise agreement.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "vtlab/catalog.hpp"
#include "vtlab/identities.hpp"
#include "vtlab/report.hpp"
#include "vtlab/torus.hpp"

using namespace vtlab;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s %10.4f %10.4f %7.2fx   %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d, best of %d\n", worker_threads(), reps);
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial s", "omp s", "speedup");
    bool all_same = true;

    {
        const auto c = find_chart("flat_torus_3");
        const VectorFn v = c->vfield("siny");
        double a = 0, b = 0;
        const double ts = best_of(reps, [&] { a = integral_scalar(*c, v, 24, Exec::Serial); });
        const double tp = best_of(reps, [&] { b = integral_scalar(*c, v, 24, Exec::Parallel); });
        const bool same = std::memcmp(&a, &b, sizeof a) == 0;
        all_same &= same;
        row("trapezoid int s^V, T^3 24^3", ts, tp, same);
    }
    {
        const DiracMatrix d =
            build_dirac({0, 1}, vector_poly(find_chart("flat_torus_2")->vfield("siny"), 2), 1.0, 48);
        const CVecX x = random_coefficients(d.fs, 48, 1);
        CVecX a, b;
        const double ts = best_of(reps, [&] {
            for (int i = 0; i < 50; ++i) a = sparse_apply(d.op, x, Exec::Serial);
        });
        const double tp = best_of(reps, [&] {
            for (int i = 0; i < 50; ++i) b = sparse_apply(d.op, x, Exec::Parallel);
        });
        const bool same = a == b;
        all_same &= same;
        row("sparse_apply K=48 x50", ts, tp, same);
    }
    {
        std::vector<ParallelDetection> a, b;
        const double ts = best_of(reps, [&] { a = parallel_grid(5, Exec::Serial); });
        const double tp = best_of(reps, [&] { b = parallel_grid(5, Exec::Parallel); });
        const bool same = parallel_table(a).dump() == parallel_table(b).dump();
        all_same &= same;
        row("parallel_grid 5x5x4", ts, tp, same);
    }
    {
        RunOptions opt;
        const auto charts = select_charts("*");
        std::string a, b;
        const double ts = best_of(reps, [&] {
            a = verify_report(run_suite("dual_path", charts, false, std::nullopt, opt, Exec::Serial), Format::Json);
        });
        const double tp = best_of(reps, [&] {
            b = verify_report(run_suite("dual_path", charts, false, std::nullopt, opt, Exec::Parallel), Format::Json);
        });
        const bool same = a == b;
        all_same &= same;
        row("suite dual_path, catalog", ts, tp, same);
    }
    return all_same ? 0 : 1;
}
