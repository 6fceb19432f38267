#pragma once

#include <vector>

#include "gg/grid.hpp"
#include "gg/multfn.hpp"

namespace gg {

struct WEntry {
    long long q = 1;
    double w = 0.0;
};

struct QvEstimate {
    long long q = 1;
    long long v = 1;
    bool uniform_family = false;  // no frequency reached eps^2
    std::vector<WEntry> w_table;
};

// Smallest factorial q (up to factorial_cap!) minimizing
// W(n, q) = max over the family's eps^2-spectrum of n*||q xi_i / n_tilde||,
// with v = 1 + floor(W/q).
QvEstimate estimate_qv(const std::vector<MultiplicativeSpec>& family, const TorusGrid& grid,
                       double eps, int factorial_cap = 7);

// Size of the frequency box {xi : ||q xi_i / n_tilde|| < m / n_tilde} for
// m = 2 q v ceil(eps^-4).
long long xi_support_size(const TorusGrid& grid, double eps, long long q, long long v);

struct DecompositionReport {
    long long q = 1;
    long long v = 1;
    double r = 0.0;
    double eps = 0.0;
    GridFunction chi_s;
    GridFunction chi_u;
    double periodicity_residual = 0.0;
    double u2_of_u = 0.0;
};

// chi_s = chi_N * phi, chi_u the remainder, with the periodicity and U^2
// diagnostics attached.
DecompositionReport decompose(const MultiplicativeSpec& chi, const TorusGrid& grid, double eps,
                              long long q, long long v);

double u3_probe(const DecompositionReport& report);

}  // namespace gg
