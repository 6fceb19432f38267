#pragma once

#include "gg/grid.hpp"

namespace gg {

// U^d uniformity norm for d in {1,2,3}. U^2 runs through the spectrum
// identity; U^3 averages the U^2 fast path over all shifts.
double gowers_norm(const GridFunction& f, int d);

// Inductive-definition evaluator, O(side^{2d}); oracle for small grids.
double gowers_norm_brute(const GridFunction& f, int d);

struct VonNeumannResult {
    double lhs = 0.0;
    double min_u3 = 0.0;
    double bound_tail = 0.0;
};

// lhs = |E_{alpha,beta} 1_{R_N}(beta) prod_j a_j(alpha + gamma_j beta)|.
// Reports the pieces of the inequality; asserts nothing (C is unspecified).
VonNeumannResult von_neumann_diagnostic(const GridFunction& a1, const GridFunction& a2,
                                        const GridFunction& a3, const GridFunction& a4,
                                        const GInt& g1, const GInt& g2, const GInt& g3,
                                        const GInt& g4, long long n);

}  // namespace gg
