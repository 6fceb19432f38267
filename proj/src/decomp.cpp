#include "gg/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gg/gowers.hpp"

namespace gg {

namespace {

long long factorial(int k) {
    long long f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

}  // namespace

QvEstimate estimate_qv(const std::vector<MultiplicativeSpec>& family, const TorusGrid& grid,
                       double eps, int factorial_cap) {
    if (family.empty()) throw std::invalid_argument("estimate_qv: family must be non-empty");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("estimate_qv: eps must be in (0, 1)");
    if (factorial_cap < 1 || factorial_cap > 20)
        throw std::invalid_argument("estimate_qv: factorial cap must be in 1..20");

    const long long L = grid.n_tilde;
    std::vector<double> maxmag(static_cast<size_t>(L) * static_cast<size_t>(L), 0.0);
    for (const MultiplicativeSpec& chi : family) {
        const GridFunction hat = fourier(embed(chi, grid));
        for (size_t i = 0; i < maxmag.size(); ++i)
            maxmag[i] = std::max(maxmag[i], std::abs(hat.values[i]));
    }

    std::vector<std::pair<long long, long long>> spectrum;
    for (long long t1 = 0; t1 < L; ++t1)
        for (long long t2 = 0; t2 < L; ++t2)
            if (maxmag[static_cast<size_t>(t1 * L + t2)] >= eps * eps)
                spectrum.push_back({t1, t2});

    QvEstimate est;
    est.uniform_family = spectrum.empty();
    long long best_num = -1;
    for (int k = 1; k <= factorial_cap; ++k) {
        const long long q = factorial(k);
        long long num = 0;  // n_tilde * W(n, q), an exact integer
        for (const auto& [x1, x2] : spectrum)
            for (long long xi : {x1, x2}) {
                const long long t = q % L * xi % L;
                num = std::max(num, grid.n * std::min(t, L - t));
            }
        est.w_table.push_back({q, static_cast<double>(num) / static_cast<double>(L)});
        if (best_num < 0 || num < best_num) {
            best_num = num;
            est.q = q;
        }
    }
    est.v = 1 + best_num / (L * est.q);
    return est;
}

long long xi_support_size(const TorusGrid& grid, double eps, long long q, long long v) {
    const long long m = 2 * q * v * ceil_inv_eps4(eps);
    const long long L = grid.n_tilde;
    long long axis = 0;
    for (long long s = 0; s < L; ++s)
        if (std::min(s, L - s) < m) ++axis;
    return axis * axis;
}

DecompositionReport decompose(const MultiplicativeSpec& chi, const TorusGrid& grid, double eps,
                              long long q, long long v) {
    const Kernel phi = phi_kernel(grid, q, v, eps);

    DecompositionReport rep;
    rep.q = q;
    rep.v = v;
    rep.eps = eps;

    const GridFunction chi_n = embed(chi, grid);
    rep.chi_s = convolve(chi_n, phi.base);
    rep.chi_u = chi_n;
    for (size_t i = 0; i < rep.chi_u.values.size(); ++i)
        rep.chi_u.values[i] -= rep.chi_s.values[i];

    double residual = 0.0;
    const long long L = grid.n_tilde;
    for (long long a = 0; a < L; ++a)
        for (long long b = 0; b < L; ++b) {
            const cplx here = rep.chi_s.at(a, b);
            residual = std::max(residual, std::abs(rep.chi_s.at(a + q, b) - here));
            residual = std::max(residual, std::abs(rep.chi_s.at(a, b + q) - here));
        }
    rep.periodicity_residual = residual;

    rep.u2_of_u = gowers_norm(rep.chi_u, 2);
    rep.r = static_cast<double>(xi_support_size(grid, eps, q, v)) * 4.0 * std::numbers::pi *
            static_cast<double>(q) * static_cast<double>(v) *
            static_cast<double>(ceil_inv_eps4(eps));
    return rep;
}

double u3_probe(const DecompositionReport& report) { return gowers_norm(report.chi_u, 3); }

}  // namespace gg
