// Timing survey of the OpenMP kernels against the serial reference paths
// kept for cross-validation, plus thread scaling of the parallel code on
// this host. Every row prints the worst deviation between the two results
// next to the timings, so a speedup never hides a disagreement.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gg/gint.hpp"
#include "gg/gowers.hpp"
#include "gg/grid.hpp"
#include "gg/multfn.hpp"
#include "gg/nil.hpp"
#include "gg/ramsey.hpp"

using namespace gg;

namespace {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

template <class F>
double time_ms(F&& fn, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

GridFunction chi_on(MultKind kind, long long n) {
    return embed(make_multiplicative(kind), make_grid(1, n, true));
}

void bench_gowers() {
    std::printf("U^d norm: spectral transforms (OpenMP) vs the definition (serial)\n");
    std::printf("  %2s %8s %11s %12s %9s %10s\n", "d", "n_tilde", "brute ms", "spectral ms",
                "speedup", "|diff|");
    struct Row {
        int d;
        long long n;
        int reps;
    };
    for (const Row r : {Row{2, 20, 3}, Row{2, 50, 3}, Row{2, 100, 1}, Row{3, 8, 3},
                        Row{3, 12, 3}, Row{3, 20, 1}}) {
        const GridFunction f = chi_on(MultKind::liouville_like, r.n);
        double fast = 0.0, brute = 0.0;
        const double tf = time_ms([&] { fast = gowers_norm(f, r.d); }, r.reps);
        const double tb = time_ms([&] { brute = gowers_norm_brute(f, r.d); }, r.reps);
        std::printf("  %2d %8lld %11.2f %12.2f %8.1fx %10.1e\n", r.d, f.grid.n_tilde, tb, tf,
                    tb / tf, std::abs(fast - brute));
    }
    std::printf("\n");
}

void bench_convolve() {
    std::printf("convolution: transform pair (OpenMP) vs direct sum (serial)\n");
    std::printf("  %8s %11s %12s %9s %10s\n", "n_tilde", "direct ms", "fft ms", "speedup",
                "max|diff|");
    struct Row {
        long long n;
        int reps;
    };
    for (const Row r : {Row{20, 3}, Row{50, 3}, Row{100, 1}}) {
        const GridFunction f = chi_on(MultKind::liouville_like, r.n);
        const GridFunction g = embed(make_multiplicative(MultKind::archimedean), f.grid);
        GridFunction a(f.grid), b(f.grid);
        const double tf = time_ms([&] { a = convolve(f, g); }, r.reps);
        const double td = time_ms([&] { b = convolve_direct(f, g); }, r.reps);
        std::printf("  %8lld %11.2f %12.2f %8.1fx %10.1e\n", f.grid.n_tilde, td, tf, td / tf,
                    max_diff(a, b));
    }
    std::printf("\n");
}

double sieve_checksum() {
    double s = 0.0;
    for (const auto& p : sieve_primes(1000000)) s += static_cast<double>(p.value.re + p.value.im);
    return s;
}

double embed_checksum() {
    const GridFunction f = chi_on(MultKind::liouville_like, 400);
    double s = 0.0;
    for (const auto& z : f.values) s += z.real() + z.imag();
    return s;
}

double gowers_checksum() {
    static const GridFunction f = chi_on(MultKind::liouville_like, 50);
    return gowers_norm(f, 3);
}

double convolve_checksum() {
    static const GridFunction f = chi_on(MultKind::liouville_like, 150);
    static const GridFunction g = embed(make_multiplicative(MultKind::archimedean), f.grid);
    const GridFunction c = convolve(f, g);
    double s = 0.0;
    for (const auto& z : c.values) s += z.real() + z.imag();
    return s;
}

double orbit_checksum() {
    const NilGroup g = make_nil_group({{0, -1}, {1, 0}});
    const NilElement id = identity_element(g);
    const PolySeq2 seq = make_poly_seq(g, make_element(g, {0.25, 0.15}, 0.0),
                                       make_element(g, {0.3, 0.05}, 0.0), id,
                                       make_element(g, {0.0, 0.0}, 0.125),
                                       make_element(g, {0.0, 0.0}, 0.2),
                                       make_element(g, {0.0, 0.0}, 0.07));
    double s = 0.0;
    for (const auto& e : orbit(g, seq, 500)) s += e.x[0] + e.x[1] + e.y;
    return s;
}

double search_checksum() {
    const QuadraticForm p{{1, 0}, {-1, 0}, {-1, 0}, {0, 0}, {0, 0}, {0, 0}};
    const auto w = search_monochromatic(norm_band_coloring(25), 25, p, true);
    if (!w) return -1.0;
    return static_cast<double>(w->x.re + w->x.im + w->y.re + w->y.im + w->n.re + w->n.im +
                               w->color);
}

double recurrence_checksum() {
    const auto even = [](const GInt& z) { return (z.re + z.im) % 2 == 0; };
    return recurrence_average(even, default_admissible_tuple(), 60);
}

void bench_scaling() {
    const int n = max_threads();
    std::printf("thread scaling: 1 vs %d OpenMP threads (results must agree)\n", n);
    std::printf("  %-24s %10s %10s %9s %10s\n", "kernel", "t1 ms", "tN ms", "speedup",
                "agreement");
    struct Row {
        const char* label;
        std::function<double()> run;
    };
    const std::vector<Row> rows = {{"sieve_primes 1e6", sieve_checksum},
                                   {"embed liouville n=400", embed_checksum},
                                   {"gowers U^3 n=50", gowers_checksum},
                                   {"convolve n=150", convolve_checksum},
                                   {"orbit heisenberg 500^2", orbit_checksum},
                                   {"partition search box=25", search_checksum},
                                   {"recurrence avg N=60", recurrence_checksum}};
    for (const Row& r : rows) {
        double v1 = 0.0, vn = 0.0;
        set_threads(1);
        const double t1 = time_ms([&] { v1 = r.run(); }, 2);
        set_threads(n);
        const double tn = time_ms([&] { vn = r.run(); }, 2);
        if (v1 == vn)
            std::printf("  %-24s %10.2f %10.2f %8.1fx %10s\n", r.label, t1, tn, t1 / tn,
                        "exact");
        else
            std::printf("  %-24s %10.2f %10.2f %8.1fx %10.1e\n", r.label, t1, tn, t1 / tn,
                        std::abs(v1 - vn));
    }
    std::printf("\n");
}

}  // namespace

int main() {
    std::printf("gg_bench: %d OpenMP thread(s) available\n\n", max_threads());
    bench_gowers();
    bench_convolve();
    bench_scaling();
    return 0;
}
