#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gg/gint.hpp"

namespace gg {

// p(x, y, n) = ax^2 + by^2 + cn^2 + dxy + exn + fyn. Degenerate forms are
// allowed; operations flag them where n disappears entirely.
struct QuadraticForm {
    GInt a, b, c, d, e, f;
};

GInt eval_form(const QuadraticForm& p, const GInt& x, const GInt& y, const GInt& n);

struct AdmissibleTuple {
    GInt g1, g2, g3, g4;
};

// Requires g1 != g2, g3 != g4, and {g1, g2} != {g3, g4}.
AdmissibleTuple make_admissible_tuple(const GInt& g1, const GInt& g2, const GInt& g3,
                                      const GInt& g4);

// The hard-coded tuple (0, 2, 1+i, 1-i) that parameterizes x^2 - y^2 = n^2.
AdmissibleTuple default_admissible_tuple();

// Exact square root in Z[i] by halving factor exponents; the returned root
// has re > 0, or im >= 0 when re = 0.
std::optional<GInt> gaussian_sqrt(const GInt& w);

struct FormCondition {
    bool ok = false;
    std::optional<GInt> r1, r2, r3;
};

// The three discriminant roots sqrt(e^2-4ac), sqrt(f^2-4bc),
// sqrt((e+f)^2-4c(a+b+d)); ok iff all three exist.
FormCondition form_condition(const QuadraticForm& p);

// x = g' g0 (alpha + g1 beta)(alpha + g2 beta), y likewise with g3, g4.
std::pair<GInt, GInt> solutions_from_tuple(const AdmissibleTuple& t, const GInt& gamma0,
                                           const GInt& gamma_prime, const GInt& alpha,
                                           const GInt& beta);

// Solve p(x, y, n) = 0 for n: quadratic formula when c != 0, linear solve
// otherwise. Throws when n does not appear in p at all.
std::optional<GInt> solve_in_n(const QuadraticForm& p, const GInt& x, const GInt& y,
                               bool require_nonzero);

enum class ColorKind { residue_mod, sector, norm_band, seeded_random };

const char* color_kind_name(ColorKind k);

struct Coloring {
    ColorKind kind = ColorKind::sector;
    GInt modulus{1, 1};
    long long sectors = 1;
    long long band_width = 1;
    long long cells = 1;
    unsigned long long seed = 0;
};

Coloring residue_coloring(const GInt& modulus);
Coloring sector_coloring(long long count);
Coloring norm_band_coloring(long long width);
Coloring seeded_coloring(long long cells, unsigned long long seed);

long long color_of(const Coloring& c, const GInt& z);

// Cell populations over the nonzero points with |re|, |im| <= box.
std::map<long long, long long> cell_sizes(const Coloring& c, long long box);

struct Witness {
    GInt x, y, n;
    long long color = 0;
};

// Tuple-parameterized candidates first, then a raster scan of the box; the
// returned witness is minimal in that order. require_distinct_nonzero
// additionally demands n != 0.
std::optional<Witness> search_monochromatic(const Coloring& coloring, long long box,
                                            const QuadraticForm& p,
                                            bool require_distinct_nonzero);
std::optional<Witness> search_monochromatic(const Coloring& coloring, long long box,
                                            const QuadraticForm& p,
                                            bool require_distinct_nonzero,
                                            const AdmissibleTuple& t);

// E over Theta_N of 1_E((a+g1 b)(a+g2 b)) 1_E((a+g3 b)(a+g4 b)), where
// Theta_N keeps the pairs whose four shifts stay inside R_N.
double recurrence_average(const std::function<bool(const GInt&)>& e, const AdmissibleTuple& t,
                          long long n);

}  // namespace gg
