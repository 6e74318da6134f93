// Wall-time comparison of the OpenMP kernels against their serial reference
// paths: exact elimination row updates, operator rank sweeps, Jacobian column
// assembly and residual-grid sampling. Output is informational; the
// serial/parallel equivalence itself is asserted in the test suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "harmjet/analysis.hpp"
#include "harmjet/geometry.hpp"
#include "harmjet/parallel.hpp"
#include "harmjet/rng.hpp"

using namespace harmjet;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3fs   openmp %8.3fs   speedup %.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

Mat random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    Mat a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (rng.next_below(4)) a.at(i, j) = rng.next_rational(19, 7);
    return a;
}

}  // namespace

int main() {
    std::printf("openmp compiled in: %s\n\n", par::openmp_enabled() ? "yes" : "no");

    {
        const Mat a = random_matrix(110, 110, 41);
        EliminationOptions forced;
        forced.parallel = true;
        forced.min_parallel_cells = 0;
        Echelon out_s, out_p;
        const double ts = seconds([&] { out_s = Echelon::compute_serial(a); });
        const double tp = seconds([&] { out_p = Echelon::compute(a, forced); });
        if (!(out_s == out_p)) {
            std::printf("elimination outputs diverged -- kernel bug\n");
            return 1;
        }
        report("elimination 110x110", ts, tp);
    }

    {
        std::vector<std::pair<int, int>> grid;
        for (int m = 2; m <= 10; ++m)
            for (int k = 1; k <= 2 * m; ++k) grid.emplace_back(m, k);
        const auto sweep = [&](int i) {
            const auto [m, k] = grid[static_cast<std::size_t>(i)];
            (void)ThetaOperator::build(m, k);
        };
        const int n = static_cast<int>(grid.size());
        const double ts = seconds([&] { par::for_index(n, sweep, false); });
        const double tp = seconds([&] { par::for_index(n, sweep, true); });
        report("operator build sweep m<=10", ts, tp);
    }

    {
        const int m = 8;
        const ThetaContext ctx(m, m - 4);
        const GradedPoly h = random_tail(m, 17);
        const double ts = seconds([&] { (void)phi_jacobian(m, h, ctx, false); });
        const double tp = seconds([&] { (void)phi_jacobian(m, h, ctx, true); });
        report("obstruction jacobian m=8", ts, tp);
    }

    {
        Rng rng(42);
        const int m = 6, horizon = m;
        GradedPoly tail;
        for (int n = s_of_m(m) + 1; n <= m + horizon; ++n) {
            HomPoly p(n);
            for (int j = 0; j <= n; ++j) p.set_coeff(j, rng.next_rational());
            tail.add(p);
        }
        const Jet f = make_jet(m, tail, m + horizon);
        const RunResult r = run(f, horizon);
        std::vector<double> radii, angles;
        for (int e = 3; e <= 34; ++e) radii.push_back(std::ldexp(1.0, -e));
        for (int j = 0; j < 720; ++j) angles.push_back(6.283185307179586 * j / 720.0 + 0.1);
        const double ts = seconds([&] { (void)residual_decay(r.metric, f, radii, angles, false); });
        const double tp = seconds([&] { (void)residual_decay(r.metric, f, radii, angles, true); });
        report("residual grid 32x720", ts, tp);
    }

    return 0;
}
