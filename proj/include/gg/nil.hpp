#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gg/grid.hpp"

namespace gg {

// Order-2 nilpotent group in Mal'cev coordinates: elements (x; y) with
// x in R^s, y central, and the product twisting y by the strictly lower
// part of the integer matrix b.
struct NilGroup {
    long long s = 1;
    long long s_prime = 0;  // size of the invertible top-left block of b
    std::vector<std::vector<long long>> b;
};

// Validates skew-symmetry and the block shape (an invertible top-left
// s' x s' corner, zeros elsewhere).
NilGroup make_nil_group(const std::vector<std::vector<long long>>& b);

struct NilElement {
    std::vector<double> x;
    double y = 0.0;
};

NilElement identity_element(const NilGroup& g);
NilElement make_element(const NilGroup& g, std::vector<double> x, double y);

NilElement mul(const NilGroup& g, const NilElement& a, const NilElement& c);
NilElement inv(const NilGroup& g, const NilElement& a);
NilElement nil_pow(const NilGroup& g, const NilElement& a, long long t);
NilElement commutator(const NilGroup& g, const NilElement& a, const NilElement& c);

// u B v^T for the full skew form.
double skew_form(const NilGroup& g, const std::vector<double>& u, const std::vector<double>& v);

// max coordinate of a*c^{-1}; bi-Lipschitz to the geodesic metric on
// bounded sets.
double nil_dist(const NilGroup& g, const NilElement& a, const NilElement& c);

struct ReduceResult {
    NilElement point;  // coordinates in [0, 1)
    NilElement gamma;  // integer coordinates
};

// Factor g = point * gamma with gamma in the lattice Z^s x Z.
ReduceResult reduce(const NilGroup& g, const NilElement& elem);

// Degree-2 polynomial sequence g(m,n) = g0 g11^m g12^n g21^C(m,2) g22^(mn) g23^C(n,2),
// with the last three factors central.
struct PolySeq2 {
    NilElement g0, g11, g12;
    NilElement g21, g22, g23;
};

PolySeq2 make_poly_seq(const NilGroup& g, NilElement g0, NilElement g11, NilElement g12,
                       NilElement g21, NilElement g22, NilElement g23);

NilElement eval_direct(const NilGroup& g, const PolySeq2& seq, long long m, long long n);

// Reduced points for (m, n) in [0, n_range)^2, row-major in m; computed with
// O(1) group operations per point and spot-checked against eval_direct.
std::vector<NilElement> orbit(const NilGroup& g, const PolySeq2& seq, long long n_range);

struct HorizontalCharacter {
    std::vector<long long> k;
};

long long character_norm(const HorizontalCharacter& eta);
double apply_character(const HorizontalCharacter& eta, const NilElement& elem);

// Polynomial on the torus with binomial-basis coefficients a_j, j1+j2 <= 2,
// all reduced to [0, 1).
struct TorusPoly2 {
    double a00 = 0, a10 = 0, a01 = 0, a20 = 0, a11 = 0, a02 = 0;
};

TorusPoly2 make_torus_poly(double a00, double a10, double a01, double a20, double a11,
                           double a02);

double smoothness_norm(const TorusPoly2& p, long long n);
double smoothness_norm(const TorusPoly2& p, long long n1, long long n2);

// eta o g: linear, since horizontal characters kill the central factors.
TorusPoly2 character_poly(const NilGroup& g, const PolySeq2& seq, const HorizontalCharacter& eta);

// Mean-zero Lipschitz test functions on X: exponentials of horizontal
// characters, or vertical-frequency characters damped by a smooth bump.
struct NilTestFunction {
    bool vertical = false;
    std::vector<long long> k;  // horizontal frequency
    long long k_y = 0;         // vertical frequency
    double lip = 1.0;          // analytic Lipschitz constant before normalization
};

NilTestFunction horizontal_test(const NilGroup& g, std::vector<long long> k);
NilTestFunction vertical_test(const NilGroup& g, long long k_y);

// Value at a reduced point, scaled by 1/lip so the function is 1-Lipschitz.
cplx evaluate_test(const NilTestFunction& f, const NilElement& reduced_point);

struct Progression {
    long long first = 0;
    long long step = 1;
};

// |E over [n_range)^2 of 1_{P1 x P2}(m, n) F(point(m, n))|.
double equid_defect(const std::vector<NilElement>& orbit_points, long long n_range,
                    const NilTestFunction& f, const Progression& p1, const Progression& p2);

// Exhaustive scan of characters with 0 < ||eta|| <= d for one whose composed
// polynomial is d-smooth at scale n; none when no certificate exists.
std::optional<std::pair<HorizontalCharacter, double>> leibman_search(const NilGroup& g,
                                                                     const PolySeq2& seq,
                                                                     long long n, long long d);

struct InverseLeibmanResult {
    double correlation = 0.0;
    double bound = 0.0;
};

// Sub-box correlation witnessing non-equidistribution for a certified
// character; throws unless all stated preconditions hold.
InverseLeibmanResult inverse_leibman_check(const NilGroup& g, const PolySeq2& seq,
                                           const HorizontalCharacter& eta, double d,
                                           long long n1, long long n2);

// Connected subgroup of G x G given by a basis of its coordinate space in
// R^{2s+2}, layout (x_1..x_s, y, x'_1..x'_s, y').
struct SubgroupDesc {
    std::vector<std::vector<double>> basis;
};

struct SubgroupTypeResult {
    int type = 3;  // 1: commutators fill the plane, 2: a line, 3: abelian
    double lambda1 = 0.0, lambda2 = 0.0;
};

SubgroupTypeResult subgroup_type(const NilGroup& g, const SubgroupDesc& h);

bool good_pair_check(const NilGroup& g, const SubgroupDesc& h, const SubgroupDesc& h_sub);

// Coordinate change attached to a commutator direction.
std::pair<NilElement, NilElement> theta_lambda(const NilGroup& g, double l1, double l2,
                                               const std::vector<double>& x,
                                               const std::vector<double>& y, double w, double z);

struct Rat {
    long long num = 0;
    long long den = 1;
};

Rat make_rat(long long num, long long den);
Rat rat_add(const Rat& a, const Rat& b);
Rat rat_mul(const Rat& a, const Rat& b);
bool rat_eq(const Rat& a, const Rat& b);

// Exact test M^T B0 M = B0.
bool lambda_membership(const std::vector<std::vector<Rat>>& m,
                       const std::vector<std::vector<long long>>& b0);

struct FactorizationReport {
    bool smooth = true;
    bool rational = true;
    bool periodic = true;
    bool recomposes = true;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// Checks a claimed factorization g = eps * g' * gamma over [0, n_range)^2:
// eps (m_bound, n)-smooth, gamma m_bound-rational with a doubly periodic
// orbit, and exact pointwise recomposition.
FactorizationReport rational_smooth_periodic_check(
    const NilGroup& g, const std::vector<NilElement>& eps_seq,
    const std::vector<NilElement>& gprime_seq, const std::vector<NilElement>& gamma_seq,
    const std::vector<NilElement>& g_seq, long long m_bound, long long n_range,
    double slack = 2.0);

// {"s": ..., "b": [[...]]}
NilGroup group_from_json(const std::string& text);

std::string orbit_csv(const NilGroup& g, const std::vector<NilElement>& points,
                      long long n_range);

}  // namespace gg
