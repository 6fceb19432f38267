#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gg/gint.hpp"

namespace gg {

using cplx = std::complex<double>;

// The prime-sized torus R_n_tilde wrapping the box R_n.
struct TorusGrid {
    int ell = 1;
    long long n = 1;
    long long n_tilde = 2;
    bool relaxed = false;

    bool operator==(const TorusGrid&) const = default;
};

long long next_prime_after(long long n);

TorusGrid make_grid(int ell, long long n, bool relaxed);

// Grid carrying only its torus size (for functions imported from files).
TorusGrid grid_from_prime(long long n_tilde);

// Complex function on the torus; storage is residue-indexed, so position
// a+bi lives at ((a mod n_tilde), (b mod n_tilde)) and file order a,b = 1..n_tilde
// walks the same cells once each.
struct GridFunction {
    TorusGrid grid;
    std::vector<cplx> values;

    GridFunction() = default;
    explicit GridFunction(const TorusGrid& g)
        : grid(g),
          values(static_cast<size_t>(g.n_tilde) * static_cast<size_t>(g.n_tilde)) {}

    long long side() const { return grid.n_tilde; }

    cplx& at(long long a, long long b) {
        const long long L = grid.n_tilde;
        return values[static_cast<size_t>(((a % L) + L) % L) * static_cast<size_t>(L) +
                      static_cast<size_t>(((b % L) + L) % L)];
    }
    cplx at(long long a, long long b) const {
        const long long L = grid.n_tilde;
        return values[static_cast<size_t>(((a % L) + L) % L) * static_cast<size_t>(L) +
                      static_cast<size_t>(((b % L) + L) % L)];
    }
};

// distance to the nearest integer, in [0, 1/2]
double torus_dist(double x);

long long mod_inverse(long long a, long long m);

// Forward transform with mean normalization: F(xi) = E_alpha f(alpha) e(-alpha o xi).
GridFunction fourier(const GridFunction& f);

// Plain-sum inverse: f(alpha) = sum_xi F(xi) e(+alpha o xi).
GridFunction inverse_fourier(const GridFunction& F);

// (f*g)(alpha) = E_beta f(alpha-beta) g(beta), via the transform pair.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

// Direct O(n_tilde^4) evaluation, for cross-validation at small sizes.
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g);

// beta -> f(gamma * beta), coordinates of the product taken mod n_tilde.
GridFunction dilate(const GridFunction& f, const GInt& gamma);

struct Kernel {
    GridFunction base;
    long long m = 1;
    bool is_phi = false;
    long long q = 1;
    long long v = 1;
    long long q_star = 1;
    double eps = 0.0;
};

// ceil(eps^-4), snapping values within 1e-9 of an integer before rounding up.
long long ceil_inv_eps4(double eps);

Kernel fejer_kernel(const TorusGrid& grid, long long m);

Kernel phi_kernel(const TorusGrid& grid, long long Q, long long V, double eps);

void write_csv(const GridFunction& f, const std::string& path);
GridFunction read_csv(const std::string& path);
void write_ggr1(const GridFunction& f, const std::string& path);
GridFunction read_ggr1(const std::string& path);

}  // namespace gg
